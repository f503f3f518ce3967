#include "pspp/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pspp/pseudosquare.hpp"

namespace pspp {

namespace {

void require_threshold(const PrimeBasis& basis) {
  if (basis.x < 3) throw std::invalid_argument("character sums need a threshold x >= 3");
}

// odd primes of the basis as a plain vector
std::vector<uint64_t> odd_primes(const PrimeBasis& basis) {
  return {basis.odd_begin(), basis.odd_begin() + basis.odd_count()};
}

}  // namespace

SanResult s_an(const PrimeBasis& basis, const Window& w, Budget& budget) {
  require_threshold(basis);
  SanResult out;
  out.sum.modulus_f = basis.m2_x;
  Progression prog = progression_in_window(w, 8, 1);
  if (prog.count == 0) return out;

  auto odd = odd_primes(basis);
  size_t k = odd.size();
  budget.charge(prog.count * k);
  uint64_t count = prog.count.get_ui();
  auto tables = symbol_tables(basis);
  std::vector<uint64_t> res(k), step(k);
  for (size_t i = 0; i < k; ++i) {
    res[i] = reduce_mod(prog.first, odd[i]);
    step[i] = 8 % odd[i];
  }

  const bool narrow = k < 40;
  const uint64_t full = narrow ? (1ull << k) : 0;  // prod (1 + s) with every symbol +1
  const BigInt big_full = BigInt(1) << k;
  uint64_t acc = 0;
  BigInt acc_big = 0;
  for (uint64_t j = 0; j < count; ++j) {
    uint64_t prod = 1;
    bool coprime = true;
    bool all_plus = true;
    for (size_t i = 0; i < k; ++i) {
      int8_t s = tables[i][res[i]];
      if (s == 0) {
        coprime = false;
        break;
      }
      if (narrow) {
        prod *= static_cast<uint64_t>(1 + s);
      } else if (s < 0) {
        all_plus = false;
      }
    }
    if (coprime) {
      ++out.count_coprime;
      if (narrow) {
        acc += prod;
        if (prod == full) ++out.count_sbar;
      } else if (all_plus) {
        acc_big += big_full;
        ++out.count_sbar;
      }
    }
    for (size_t i = 0; i < k; ++i) {
      res[i] += step[i];
      if (res[i] >= odd[i]) res[i] -= odd[i];
    }
  }
  out.sum.value = narrow ? BigInt(static_cast<unsigned long>(acc)) : acc_big;
  // expanding each product gives 2^k bounded summands per coprime candidate;
  // saturates rather than wrapping for enormous expansions
  out.sum.terms = (narrow && out.count_coprime <= (UINT64_MAX >> k)) ? (out.count_coprime << k)
                                                                     : UINT64_MAX;
  return out;
}

SumRecord r_f(const PrimeBasis& basis, const BigInt& f, const Window& w, Budget& budget) {
  require_threshold(basis);
  if (f <= 1) throw std::invalid_argument("r_f: f must be a divisor of m2_x greater than 1");
  if (!mpz_divisible_p(basis.m2_x.get_mpz_t(), f.get_mpz_t())) {
    throw std::invalid_argument("r_f: f must divide m2_x");
  }
  if (!f.fits_ulong_p()) throw std::invalid_argument("r_f: f exceeds the supported range");
  uint64_t fu = f.get_ui();

  // divisors d of m2_x / f are the products of odd basis primes not dividing f
  std::vector<uint64_t> rest;
  for (size_t i = 0; i < basis.odd_count(); ++i) {
    uint64_t p = basis.odd_begin()[i];
    if (fu % p != 0) rest.push_back(p);
  }
  if (rest.size() > 30) throw std::invalid_argument("r_f: too many cofactor primes");

  std::vector<int8_t> table;
  if (fu <= (1u << 21)) {
    table.resize(fu);
    for (uint64_t r = 0; r < fu; ++r) table[r] = static_cast<int8_t>(jacobi(r, fu));
  }

  int64_t total = 0;
  uint64_t terms = 0;
  for (uint64_t mask = 0; mask < (1ull << rest.size()); ++mask) {
    BigInt d = 1;
    int mu = 1;
    for (size_t i = 0; i < rest.size(); ++i) {
      if (mask & (1ull << i)) {
        d *= static_cast<unsigned long>(rest[i]);
        mu = -mu;
      }
    }
    // members with m = 0 mod d and m = 1 mod 8; odd d is its own inverse mod 8
    BigInt step = 8 * d;
    BigInt first_residue = (d * (d % 8)) % step;
    Progression prog = progression_in_window(w, step, first_residue);
    if (prog.count == 0) continue;
    budget.charge(prog.count);
    uint64_t count = prog.count.get_ui();
    uint64_t rres = reduce_mod(prog.first, fu);
    uint64_t rstep = reduce_mod(step, fu);
    int64_t local = 0;
    for (uint64_t j = 0; j < count; ++j) {
      local += table.empty() ? jacobi(rres, fu) : table[rres];
      rres += rstep;
      if (rres >= fu) rres -= fu;
    }
    total += mu * local;
    terms += count;
  }
  SumRecord rec;
  rec.value = total;
  rec.terms = terms;
  rec.modulus_f = f;
  return rec;
}

MainTerm main_term(const PrimeBasis& basis, const Window& w, Budget& budget) {
  require_threshold(basis);
  MainTerm out;
  out.sieve_model = w.n_len.get_d() /
                    (4.0 * std::exp(std::numbers::egamma_v<double>) * std::log(static_cast<double>(basis.x)));
  Progression prog = progression_in_window(w, 8, 1);
  if (prog.count == 0) return out;
  auto odd = odd_primes(basis);
  size_t k = odd.size();
  budget.charge(prog.count * k);
  uint64_t count = prog.count.get_ui();
  std::vector<uint64_t> res(k), step(k);
  for (size_t i = 0; i < k; ++i) {
    res[i] = reduce_mod(prog.first, odd[i]);
    step[i] = 8 % odd[i];
  }
  for (uint64_t j = 0; j < count; ++j) {
    bool coprime = true;
    for (size_t i = 0; i < k; ++i) {
      if (res[i] == 0) {
        coprime = false;
        break;
      }
    }
    if (coprime) ++out.count;
    for (size_t i = 0; i < k; ++i) {
      res[i] += step[i];
      if (res[i] >= odd[i]) res[i] -= odd[i];
    }
  }
  return out;
}

SumRecord char_sum(uint64_t q, const Window& w, Budget& budget) {
  if (q <= 1 || q % 2 == 0) throw std::invalid_argument("char_sum: q must be odd and > 1");
  for (const auto& [p, e] : factorize(static_cast<int64_t>(q)).factors) {
    (void)p;
    if (e > 1) throw std::invalid_argument("char_sum: q must be squarefree");
  }
  SumRecord rec;
  rec.modulus_f = static_cast<unsigned long>(q);
  Progression prog = progression_in_window(w, 1, 0);
  if (prog.count == 0) return rec;
  budget.charge(prog.count);
  uint64_t count = prog.count.get_ui();

  std::vector<int8_t> table;
  if (q <= (1u << 21)) {
    table.resize(q);
    for (uint64_t r = 0; r < q; ++r) table[r] = static_cast<int8_t>(jacobi(r, q));
  }
  uint64_t rres = reduce_mod(prog.first, q);
  int64_t total = 0;
  for (uint64_t j = 0; j < count; ++j) {
    total += table.empty() ? jacobi(rres, q) : table[rres];
    if (++rres == q) rres = 0;
  }
  rec.value = total;
  rec.terms = count;
  return rec;
}

PvBounds pv_bounds(const PrimeBasis& basis, const BigInt& f) {
  require_threshold(basis);
  if (f <= 1) throw std::invalid_argument("pv_bounds: f must be > 1");
  PvBounds out;
  double fd = f.get_d();
  out.generic_bound = std::sqrt(fd) * std::log(fd);
  out.rf_bound = 3.0 * std::ldexp(1.0, static_cast<int>(basis.pi()) - 2) * out.generic_bound;
  return out;
}

GrBound gr_bound(const BoundParams& params) {
  if (params.q <= 1) throw std::invalid_argument("gr_bound: q must be squarefree and > 1");
  if (params.r == 0) throw std::invalid_argument("gr_bound: r must be >= 1");
  if (params.n_len <= 0) throw std::invalid_argument("gr_bound: window length must be positive");
  auto fac = factorize(static_cast<int64_t>(params.q));
  uint64_t tau = 1;
  for (const auto& [p, e] : fac.factors) {
    if (e > 1) throw std::invalid_argument("gr_bound: q must be squarefree and > 1");
    tau *= 2;
    BigInt p9;
    mpz_ui_pow_ui(p9.get_mpz_t(), p, 9);
    if (p9 > params.n_len) {
      throw std::invalid_argument("gr_bound: prime factor " + std::to_string(p) +
                                  " of q exceeds the ninth root of N");
    }
  }
  BigInt nr;
  mpz_pow_ui(nr.get_mpz_t(), params.n_len.get_mpz_t(), params.r);
  BigInt q3;
  mpz_ui_pow_ui(q3.get_mpz_t(), params.q, 3);
  if (nr < q3) throw std::invalid_argument("gr_bound: N^r < q^3");

  double r2r = static_cast<double>(params.r) * std::ldexp(1.0, static_cast<int>(params.r));
  double nd = params.n_len.get_d();
  GrBound out;
  out.value = 4.0 * nd * std::pow(static_cast<double>(tau), static_cast<double>(params.r) / std::ldexp(1.0, static_cast<int>(params.r))) *
              std::pow(static_cast<double>(params.q), -1.0 / r2r);
  out.vacuous = out.value >= nd;
  return out;
}

ChosenR choose_r(double x, RVariant variant) {
  if (!(x > 0)) throw std::invalid_argument("choose_r: x must be positive");
  auto fits = [&](unsigned r) {
    double lx = std::log(x);
    if (lx <= 1.0) return false;
    double llx = std::log(lx);
    if (llx <= 0.0) return false;
    double budget = (variant == RVariant::theorem1) ? lx / llx : lx / (llx * llx);
    return static_cast<double>(r) * std::ldexp(1.0, static_cast<int>(r)) + 2.0 <= budget;
  };
  if (!fits(1)) return {1, true};
  unsigned r = 1;
  while (r < 60 && fits(r + 1)) ++r;
  return {r, false};
}

}  // namespace pspp
