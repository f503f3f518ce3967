#include "pspp/pseudopower.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pspp {

namespace {

uint64_t abs_u64(int64_t g) { return static_cast<uint64_t>(g < 0 ? -g : g); }

void require_profile_args(int64_t g, uint64_t x) {
  if (g == 0 || g == 1 || g == -1) throw std::invalid_argument("pseudopower ops need |g| >= 2");
  if (x < 2) throw std::invalid_argument("pseudopower ops need a threshold x >= 2");
}

void require_full_radical(const PowerProfile& profile) {
  uint64_t rad = 1;
  for (uint64_t p : profile.g_primes) rad *= p;
  if (rad != mult_functions(abs_u64(profile.g)).rad) {
    throw std::invalid_argument("operation needs x >= |g| so every prime dividing g is profiled");
  }
}

// reduced residue of g mod p, in [0, p)
uint64_t g_mod(int64_t g, uint64_t p) {
  int64_t r = g % static_cast<int64_t>(p);
  return static_cast<uint64_t>(r < 0 ? r + static_cast<int64_t>(p) : r);
}

// ascending true powers of g (positive values only) that fit below `limit`
std::vector<uint64_t> true_powers_below(int64_t g, uint64_t limit) {
  std::vector<uint64_t> out;
  BigInt t = 1;
  BigInt lim = static_cast<unsigned long>(limit);
  while (abs(t) <= lim) {
    if (t > 0) out.push_back(t.get_ui());
    t *= g;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PowerProfile power_profile(int64_t g, const PrimeBasis& basis) {
  require_profile_args(g, basis.x);
  PowerProfile profile;
  profile.g = g;
  profile.x = basis.x;
  profile.i_product = 1;
  profile.l_product = 1;
  uint64_t ag = abs_u64(g);
  for (uint64_t p : basis.primes) {
    if (ag % p == 0) {
      profile.g_primes.push_back(p);
      continue;
    }
    OrderIndex oi = mul_order_index(g, p);
    profile.rows.push_back({p, oi.order, oi.index});
    profile.i_product *= static_cast<unsigned long>(oi.index);
    profile.l_product *= static_cast<unsigned long>(oi.order);
  }
  return profile;
}

bool is_pseudopower(uint64_t n, const PowerProfile& profile, PpwVariant variant) {
  if (n == 0) return false;
  if (classify_power(BigInt(static_cast<unsigned long>(n)), profile.g).is_g_power) return false;
  if (variant == PpwVariant::q_g) {
    for (uint64_t p : profile.g_primes) {
      uint64_t r = n % p;
      if (r > 1) return false;
    }
  }
  for (const auto& row : profile.rows) {
    uint64_t r = n % row.p;
    if (r == 0 || pow_mod(r, row.order, row.p) != 1) return false;
  }
  return true;
}

PseudopowerRecord least_pseudopower(const PowerProfile& profile, const PrimeBasis& basis,
                                    PpwVariant variant, Budget& budget) {
  // a hit is guaranteed by 2*M(x)+1; only enforce the cap when it is reachable
  BigInt cap_big = 2 * basis.m_x + 1;
  uint64_t cap = cap_big.fits_ulong_p() ? cap_big.get_ui() : UINT64_MAX;

  std::vector<std::vector<uint8_t>> member = subgroup_tables(profile);
  auto powers = true_powers_below(profile.g, cap);
  size_t next_power = 0;
  size_t evals = profile.rows.size() + profile.g_primes.size();

  for (uint64_t n = 1; n <= cap; ++n) {
    budget.charge(evals);
    while (next_power < powers.size() && powers[next_power] < n) ++next_power;
    if (next_power < powers.size() && powers[next_power] == n) continue;
    bool ok = true;
    if (variant == PpwVariant::q_g) {
      for (uint64_t p : profile.g_primes) {
        if (n % p > 1) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      for (size_t i = 0; i < profile.rows.size(); ++i) {
        if (!member[i][n % profile.rows[i].p]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return {n, profile.g, profile.x, variant};
  }
  throw budget_error("least_pseudopower: scan cap exceeded the supported range");
}

PeriodCount exact_count_period(const PowerProfile& profile, const PrimeBasis& basis) {
  require_full_radical(profile);
  PeriodCount out;
  out.count_closure = BigInt(1) << profile.g_primes.size();
  out.count_closure *= profile.l_product;
  uint64_t count = 0;
  BigInt t = 1;
  while (abs(t) <= basis.m_x) {
    if (t > 0) ++count;
    t *= profile.g;
  }
  out.count_true_powers = count;
  return out;
}

std::vector<std::vector<uint8_t>> subgroup_tables(const PowerProfile& profile) {
  std::vector<std::vector<uint8_t>> tables;
  tables.reserve(profile.rows.size());
  for (const auto& row : profile.rows) {
    std::vector<uint8_t> t(row.p, 0);
    uint64_t gp = g_mod(profile.g, row.p);
    uint64_t cur = 1;
    for (uint64_t e = 0; e < row.order; ++e) {
      t[cur] = 1;
      cur = mul_mod(cur, gp, row.p);
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

CountReport count_pseudopowers(const PowerProfile& profile, const PrimeBasis& basis,
                               const Window& w, unsigned bins, Budget& budget) {
  CountReport report;
  report.window = w;
  report.density = pseudopower_density(profile);
  report.model = report.density * w.n_len.get_d();
  report.bins = make_bins(w, bins, report.density);

  Progression prog = progression_in_window(w, 1, 0);
  if (prog.count > 0) {
    size_t k = profile.rows.size();
    size_t kg = profile.g_primes.size();
    budget.charge(prog.count * (k + kg + 1));
    uint64_t count = prog.count.get_ui();
    auto member = subgroup_tables(profile);
    std::vector<uint64_t> res(k), gres(kg);
    for (size_t i = 0; i < k; ++i) res[i] = reduce_mod(prog.first, profile.rows[i].p);
    for (size_t i = 0; i < kg; ++i) gres[i] = reduce_mod(prog.first, profile.g_primes[i]);

    // true powers of g inside the window, ascending, as offsets from first
    std::vector<BigInt> powers;
    {
      BigInt t = 1;
      BigInt hi = w.upper();
      while (abs(t) <= hi) {
        if (t > w.a && t <= hi) powers.push_back(t);
        t *= profile.g;
      }
      std::sort(powers.begin(), powers.end());
    }
    size_t next_power = 0;

    BigInt m = prog.first;
    for (uint64_t j = 0; j < count; ++j) {
      bool ok = true;
      for (size_t i = 0; i < kg; ++i) {
        if (gres[i] > 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        for (size_t i = 0; i < k; ++i) {
          if (!member[i][res[i]]) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        ++report.count_closure;
        bool is_true_power = next_power < powers.size() && powers[next_power] == m;
        if (is_true_power) {
          ++next_power;
        } else {
          ++report.count;
          bin_insert(report.bins, m);
        }
      }
      for (size_t i = 0; i < k; ++i) {
        if (++res[i] == profile.rows[i].p) res[i] = 0;
      }
      for (size_t i = 0; i < kg; ++i) {
        if (++gres[i] == profile.g_primes[i]) gres[i] = 0;
      }
      m += 1;
    }
    if (next_power != powers.size()) {
      throw std::logic_error("count_pseudopowers: a true power failed its own membership tests");
    }
  }

  uint64_t bin_total = 0;
  for (const auto& b : report.bins) bin_total += b.count;
  report.checks.push_back({"bins_sum_equals_count", std::to_string(bin_total),
                           std::to_string(report.count), bin_total == report.count});
  return report;
}

OrderCharacter::OrderCharacter(uint64_t p, uint64_t order) : p_(p), order_(order) {
  if (!is_prime_u64(p)) throw std::invalid_argument("OrderCharacter: p must be prime");
  if (order == 0 || (p - 1) % order != 0) {
    throw std::invalid_argument("OrderCharacter: order must divide p - 1");
  }
  root_ = primitive_root(p);
  index_.assign(p, 0);
  uint64_t cur = 1;
  for (uint64_t e = 0; e + 1 < p; ++e) {
    index_[cur] = static_cast<uint32_t>(e);
    cur = mul_mod(cur, root_, p);
  }
}

std::complex<double> OrderCharacter::at_residue(uint64_t r) const {
  if (r == 0) return {0.0, 0.0};
  uint64_t e = index_[r] % order_;
  double angle = 2.0 * std::numbers::pi_v<double> * static_cast<double>(e) / static_cast<double>(order_);
  return std::polar(1.0, angle);
}

OrderCharacter build_character(uint64_t p, uint64_t order) { return {p, order}; }

std::complex<double> subgroup_indicator(const OrderCharacter& chi, uint64_t r) {
  r %= chi.p();
  if (r == 0) return {0.0, 0.0};
  uint64_t e = chi.index_of(r) % chi.order();
  std::complex<double> sum = 0.0;
  for (uint64_t j = 1; j <= chi.order(); ++j) {
    uint64_t t = (e * j) % chi.order();
    double angle = 2.0 * std::numbers::pi_v<double> * static_cast<double>(t) / static_cast<double>(chi.order());
    sum += std::polar(1.0, angle);
  }
  return sum;
}

WeightedSum weighted_sum_sg(const PowerProfile& profile, const PrimeBasis& basis, Budget& budget) {
  WeightedSum out;
  PseudopowerRecord pg = least_pseudopower(profile, basis, PpwVariant::p_g, budget);
  out.p_gx = pg.n;

  std::vector<OrderCharacter> chars;
  chars.reserve(profile.rows.size());
  for (const auto& row : profile.rows) chars.emplace_back(row.p, row.index);

  auto lambda = von_mangoldt_table(pg.n);
  std::complex<double> value = 0.0;
  uint64_t terms = 0;
  for (uint64_t n = 2; n < pg.n; ++n) {
    if (lambda[n] == 0.0) continue;
    ++terms;
    budget.charge(profile.rows.size());
    std::complex<double> prod = 1.0;
    for (const auto& chi : chars) {
      prod *= subgroup_indicator(chi, n % chi.p());
      if (prod == std::complex<double>(0.0, 0.0)) break;
    }
    value += lambda[n] * prod;
  }
  double rhs = 0.0;
  for (uint64_t t : true_powers_below(profile.g, pg.n)) {
    if (t >= 2 && t < pg.n) rhs += lambda[t];
  }
  out.value = value;
  out.identity_rhs = profile.i_product.get_d() * rhs;
  out.terms = terms;
  return out;
}

PanResult p_an_identity(const PowerProfile& profile, const PrimeBasis& basis, const Window& w,
                        Budget& budget) {
  require_full_radical(profile);
  PanResult out;

  uint64_t rad = 1;
  for (uint64_t p : profile.g_primes) rad *= p;

  size_t k = profile.rows.size();
  std::vector<OrderCharacter> chars;
  chars.reserve(k);
  for (const auto& row : profile.rows) chars.emplace_back(row.p, row.index);
  // indicator values by residue, per row prime
  std::vector<std::vector<std::complex<double>>> ind(k);
  for (size_t i = 0; i < k; ++i) {
    ind[i].resize(profile.rows[i].p);
    for (uint64_t r = 0; r < profile.rows[i].p; ++r) ind[i][r] = subgroup_indicator(chars[i], r);
  }

  std::complex<double> raw = 0.0;
  uint64_t terms = 0;
  size_t kg = profile.g_primes.size();
  for (uint64_t mask = 0; mask < (1ull << kg); ++mask) {
    uint64_t a = 1;
    for (size_t i = 0; i < kg; ++i) {
      if (mask & (1ull << i)) a *= profile.g_primes[i];
    }
    uint64_t b = rad / a;
    // CRT: n = 0 mod a, n = 1 mod b
    uint64_t n0 = (b == 1) ? (a % rad == 0 ? rad : a) : a * inv_mod(a % b, b);
    Progression prog = progression_in_window(w, rad, n0 % rad);
    if (prog.count == 0) continue;
    budget.charge(prog.count * (k + 1));
    uint64_t count = prog.count.get_ui();
    std::vector<uint64_t> res(k), step(k);
    for (size_t i = 0; i < k; ++i) {
      res[i] = reduce_mod(prog.first, profile.rows[i].p);
      step[i] = rad % profile.rows[i].p;
    }
    for (uint64_t j = 0; j < count; ++j) {
      std::complex<double> prod = 1.0;
      for (size_t i = 0; i < k; ++i) {
        prod *= ind[i][res[i]];
        if (prod == std::complex<double>(0.0, 0.0)) break;
      }
      raw += prod;
      for (size_t i = 0; i < k; ++i) {
        res[i] += step[i];
        if (res[i] >= profile.rows[i].p) res[i] -= profile.rows[i].p;
      }
    }
    terms += count;
  }

  // independent route: enumerate the window and count closure members
  Budget direct_budget{budget.limit, 0};
  CountReport direct = count_pseudopowers(profile, basis, w, 1, direct_budget);
  budget.charge(direct_budget.used);

  out.raw = raw;
  out.value = raw.real();
  out.direct = direct.count_closure;
  out.terms = terms;
  return out;
}

BigInt conductor_characters(const PowerProfile& profile, const BigInt& f) {
  if (f < 1) throw std::invalid_argument("conductor_characters: f must be >= 1");
  BigInt rest = f;
  BigInt out = 1;
  for (const auto& row : profile.rows) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), row.p)) {
      rest /= static_cast<unsigned long>(row.p);
      out *= static_cast<unsigned long>(row.index - 1);
    }
  }
  if (rest != 1) {
    throw std::invalid_argument("conductor_characters: f must be a squarefree product of profiled primes");
  }
  return out;
}

double pseudopower_density(const PowerProfile& profile) {
  MultFunctions mf = mult_functions(abs_u64(profile.g));
  double numerator = std::ldexp(1.0, static_cast<int>(mf.omega));
  return numerator / (std::exp(std::numbers::egamma_v<double>) *
                      static_cast<double>(mult_functions(mf.rad).phi) * profile.i_product.get_d() *
                      std::log(static_cast<double>(profile.x)));
}

}  // namespace pspp
