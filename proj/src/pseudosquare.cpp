#include "pspp/pseudosquare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace pspp {

namespace {

void require_threshold(const PrimeBasis& basis) {
  if (basis.x < 3) throw std::invalid_argument("pseudosquare ops need a threshold x >= 3");
}

}  // namespace

DensityModel DensityModel::for_threshold(const PrimeBasis& basis) {
  require_threshold(basis);
  DensityModel m;
  m.x = basis.x;
  m.euler_gamma = std::numbers::egamma_v<double>;
  m.predicted_density = 1.0 / (std::ldexp(1.0, static_cast<int>(basis.pi()) + 1) *
                               std::exp(m.euler_gamma) * std::log(static_cast<double>(basis.x)));
  return m;
}

std::vector<std::vector<int8_t>> symbol_tables(const PrimeBasis& basis) {
  std::vector<std::vector<int8_t>> tables;
  tables.reserve(basis.odd_count());
  for (size_t k = 0; k < basis.odd_count(); ++k) {
    uint64_t p = basis.odd_begin()[k];
    std::vector<int8_t> t(p);
    for (uint64_t r = 0; r < p; ++r) t[r] = static_cast<int8_t>(jacobi(r, p));
    tables.push_back(std::move(t));
  }
  return tables;
}

SymbolVector symbol_vector(const BigInt& n, const PrimeBasis& basis) {
  require_threshold(basis);
  if (n < 1) throw std::invalid_argument("symbol_vector: n must be >= 1");
  SymbolVector v;
  v.n = n;
  v.x = basis.x;
  v.residue_mod8 = static_cast<int>(reduce_mod(n, 8));
  v.symbols.reserve(basis.odd_count());
  for (size_t k = 0; k < basis.odd_count(); ++k) {
    uint64_t p = basis.odd_begin()[k];
    v.symbols.push_back(jacobi(reduce_mod(n, p), p));
  }
  return v;
}

bool is_pseudosquare(const BigInt& n, const PrimeBasis& basis) {
  require_threshold(basis);
  if (n < 1) throw std::invalid_argument("is_pseudosquare: n must be >= 1");
  if (reduce_mod(n, 8) != 1) return false;
  for (size_t k = 0; k < basis.odd_count(); ++k) {
    uint64_t p = basis.odd_begin()[k];
    if (jacobi(reduce_mod(n, p), p) != 1) return false;
  }
  return mpz_perfect_square_p(n.get_mpz_t()) == 0;
}

PseudosquareRecord least_pseudosquare(const PrimeBasis& basis, Budget& budget,
                                      std::optional<BigInt> search_bound, uint64_t segment) {
  require_threshold(basis);
  if (segment == 0) throw std::invalid_argument("least_pseudosquare: segment must be > 0");
  auto tables = symbol_tables(basis);
  size_t k = basis.odd_count();
  std::vector<uint64_t> inv8;
  inv8.reserve(k);
  for (size_t i = 0; i < k; ++i) inv8.push_back(inv_mod(8, basis.odd_begin()[i]));

  std::vector<uint8_t> alive(segment);
  BigInt base = 1;  // candidates base + 8j, j in [0, segment)
  while (true) {
    if (search_bound && base > *search_bound) {
      throw budget_error("least_pseudosquare: search bound exhausted");
    }
    budget.charge(BigInt(segment) * k);
    std::fill(alive.begin(), alive.end(), 1);
    for (size_t i = 0; i < k; ++i) {
      uint64_t p = basis.odd_begin()[i];
      uint64_t b0 = reduce_mod(base, p);
      const auto& tab = tables[i];
      // knock out every residue class whose symbol is not +1
      for (uint64_t r = 0; r < p; ++r) {
        if (tab[r] == 1) continue;
        uint64_t j0 = mul_mod((r + p - b0) % p, inv8[i], p);
        for (uint64_t j = j0; j < segment; j += p) alive[j] = 0;
      }
    }
    for (uint64_t j = 0; j < segment; ++j) {
      if (!alive[j]) continue;
      BigInt n = base + 8 * BigInt(static_cast<unsigned long>(j));
      if (search_bound && n > *search_bound) break;
      if (mpz_perfect_square_p(n.get_mpz_t())) continue;
      return {n, basis.x, Provenance::sieve_search};
    }
    base += 8 * BigInt(static_cast<unsigned long>(segment));
  }
}

PigeonholeResult pigeonhole_pseudosquare(const PrimeBasis& basis, Budget& budget,
                                         std::optional<uint64_t> scan_limit) {
  require_threshold(basis);
  size_t k = basis.odd_count();
  if (k + 3 > 63) throw std::invalid_argument("pigeonhole_pseudosquare: threshold too large to pack symbol keys");

  PigeonholeResult out;
  out.x_bound = BigInt(1) << basis.pi();
  out.x_bound *= static_cast<unsigned long>(basis.x);

  std::unordered_map<uint64_t, uint64_t> first_seen;
  uint64_t lo = basis.x + 1;
  uint64_t block = std::max<uint64_t>(1u << 14, 16 * basis.x);
  bool found = false;
  while (!found) {
    uint64_t hi = lo + block - 1;
    if (scan_limit) hi = std::min(hi, *scan_limit);
    if (hi < lo) throw budget_error("pigeonhole_pseudosquare: scan limit exhausted before a collision");
    segmented_primes(lo, hi, [&](uint64_t ell) {
      if (found) return;
      budget.charge(k);
      uint64_t key = ell % 8;
      for (size_t i = 0; i < k; ++i) {
        uint64_t p = basis.odd_begin()[i];
        if (jacobi(ell % p, p) == 1) key |= 1ull << (i + 3);
      }
      auto [it, inserted] = first_seen.emplace(key, ell);
      if (!inserted) {
        out.l1 = it->second;
        out.l2 = ell;
        found = true;
      }
    });
    if (scan_limit && hi >= *scan_limit && !found) {
      throw budget_error("pigeonhole_pseudosquare: scan limit exhausted before a collision");
    }
    lo = hi + 1;
    block *= 2;
  }
  out.record.n = BigInt(static_cast<unsigned long>(out.l1)) * static_cast<unsigned long>(out.l2);
  out.record.x = basis.x;
  out.record.provenance = Provenance::pigeonhole;
  out.within_bound = BigInt(static_cast<unsigned long>(out.l2)) <= out.x_bound;
  return out;
}

CountReport count_pseudosquares(const PrimeBasis& basis, const Window& w, unsigned bins,
                                Budget& budget) {
  require_threshold(basis);
  CountReport report;
  report.window = w;
  DensityModel dm = DensityModel::for_threshold(basis);
  report.density = dm.predicted_density;
  report.model = dm.predicted_density * w.n_len.get_d();
  report.bins = make_bins(w, bins, dm.predicted_density);

  Progression prog = progression_in_window(w, 8, 1);
  if (prog.count > 0) {
    size_t k = basis.odd_count();
    budget.charge(prog.count * k);
    uint64_t count = prog.count.get_ui();
    auto tables = symbol_tables(basis);
    std::vector<uint64_t> res(k), step(k);
    for (size_t i = 0; i < k; ++i) {
      uint64_t p = basis.odd_begin()[i];
      res[i] = reduce_mod(prog.first, p);
      step[i] = 8 % p;
    }
    BigInt m = prog.first;
    for (uint64_t j = 0; j < count; ++j) {
      bool all_plus = true;
      for (size_t i = 0; i < k; ++i) {
        if (tables[i][res[i]] != 1) {
          all_plus = false;
          break;
        }
      }
      if (all_plus) {
        ++report.count_closure;
        if (!mpz_perfect_square_p(m.get_mpz_t())) {
          ++report.count;
          bin_insert(report.bins, m);
        }
      }
      for (size_t i = 0; i < k; ++i) {
        res[i] += step[i];
        if (res[i] >= basis.odd_begin()[i]) res[i] -= basis.odd_begin()[i];
      }
      m += 8;
    }
  }

  uint64_t bin_total = 0;
  for (const auto& b : report.bins) bin_total += b.count;
  report.checks.push_back({"bins_sum_equals_count", std::to_string(bin_total),
                           std::to_string(report.count), bin_total == report.count});
  return report;
}

}  // namespace pspp
