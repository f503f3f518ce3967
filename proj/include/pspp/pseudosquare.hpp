// Pseudosquares: nonsquares that look like squares to every Jacobi symbol
// with odd prime modulus up to a threshold x. Search, pigeonhole
// construction, window counting and the density model.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pspp/arith.hpp"
#include "pspp/report.hpp"
#include "pspp/window.hpp"

namespace pspp {

// Jacobi symbols (n/p) over the odd primes p <= x, plus n mod 8.
struct SymbolVector {
  BigInt n;
  uint64_t x = 0;
  std::vector<Symbol> symbols;  // aligned with basis odd primes
  int residue_mod8 = 0;
};

enum class Provenance { sieve_search, pigeonhole, enumeration };

struct PseudosquareRecord {
  BigInt n;
  uint64_t x = 0;
  Provenance provenance = Provenance::enumeration;
};

// Heuristic density of pseudosquares below the threshold's primorial scale.
struct DensityModel {
  uint64_t x = 0;
  double euler_gamma = 0.0;
  double predicted_density = 0.0;  // 1 / (2^(pi(x)+1) * e^gamma * log x)

  static DensityModel for_threshold(const PrimeBasis& basis);
};

// Per odd prime p, table t[r] = (r/p) for r in [0, p).
std::vector<std::vector<int8_t>> symbol_tables(const PrimeBasis& basis);

SymbolVector symbol_vector(const BigInt& n, const PrimeBasis& basis);

// n >= 1; true iff n = 1 mod 8, every (n/p) = +1 for odd p <= x, and n is not
// a perfect square. Requires basis.x >= 3.
bool is_pseudosquare(const BigInt& n, const PrimeBasis& basis);

// Least pseudosquare for the threshold, by segmented sieve over n = 1 mod 8
// with per-prime residue knockout. Throws budget_error when search_bound or
// the budget runs out first.
PseudosquareRecord least_pseudosquare(const PrimeBasis& basis, Budget& budget,
                                      std::optional<BigInt> search_bound = std::nullopt,
                                      uint64_t segment = 1u << 20);

struct PigeonholeResult {
  PseudosquareRecord record;  // n = l1 * l2
  uint64_t l1 = 0;
  uint64_t l2 = 0;
  BigInt x_bound;             // 2^pi(x) * x
  bool within_bound = false;  // l2 <= x_bound
};

// First pair of primes > x sharing a symbol vector and residue mod 8; their
// product is a pseudosquare. scan_limit bounds the prime scan when given.
PigeonholeResult pigeonhole_pseudosquare(const PrimeBasis& basis, Budget& budget,
                                         std::optional<uint64_t> scan_limit = std::nullopt);

// Exact strict/closure counts over the window with a histogram of the strict
// members. count_closure additionally includes the coprime perfect squares.
CountReport count_pseudosquares(const PrimeBasis& basis, const Window& w, unsigned bins,
                                Budget& budget);

}  // namespace pspp
