// Character sums over windows: the product-of-symbols sum that counts
// pseudosquare candidates, its Moebius/character-sum decomposition, and the
// classical bound calculators used to control the remainder terms.
#pragma once

#include <cstdint>
#include <vector>

#include "pspp/arith.hpp"
#include "pspp/window.hpp"

namespace pspp {

struct SumRecord {
  BigInt value;
  // Number of +/-1-bounded summands after expanding symbol products, so
  // |value| <= terms always holds.
  uint64_t terms = 0;
  BigInt modulus_f;
};

struct SanResult {
  SumRecord sum;         // sum over coprime candidates of prod_p (1 + (m/p))
  uint64_t count_sbar = 0;  // candidates with every symbol +1
  uint64_t count_coprime = 0;
};

// Sum of prod_{odd p <= x} (1 + (m/p)) over m = 1 mod 8 in the window with
// gcd(m, m2_x) = 1. Equals 2^(pi(x)-1) * count_sbar identically.
SanResult s_an(const PrimeBasis& basis, const Window& w, Budget& budget);

// Remainder term for conductor f: sum over divisors d of m2_x/f of mu(d)
// times the symbol sum (m/f) over window members m = 1 mod 8 with d | m.
// f must be a divisor of m2_x with f > 1.
SumRecord r_f(const PrimeBasis& basis, const BigInt& f, const Window& w, Budget& budget);

struct MainTerm {
  uint64_t count = 0;   // window members m = 1 mod 8 coprime to m2_x
  double sieve_model = 0.0;  // n_len / (4 * e^gamma * log x)
};
MainTerm main_term(const PrimeBasis& basis, const Window& w, Budget& budget);

// Plain Jacobi-symbol sum (n/q) over every n in the window; q odd,
// squarefree, > 1.
SumRecord char_sum(uint64_t q, const Window& w, Budget& budget);

struct PvBounds {
  double rf_bound = 0.0;       // 3 * 2^(pi(x)-2) * sqrt(f) * log f
  double generic_bound = 0.0;  // sqrt(f) * log f
};
// f > 1; rf_bound dominates |r_f| for any window.
PvBounds pv_bounds(const PrimeBasis& basis, const BigInt& f);

struct BoundParams {
  uint64_t q = 0;   // squarefree modulus > 1
  BigInt n_len;     // window length N
  unsigned r = 1;   // iteration depth
};

struct GrBound {
  double value = 0.0;  // 4 * N * tau(q)^(r/2^r) * q^(-1/(r*2^r))
  bool vacuous = false;  // value >= N, i.e. weaker than the trivial bound
};
// Preconditions checked exactly: q squarefree > 1, every prime factor p of q
// has p^9 <= N, and N^r >= q^3; violations throw naming the failed clause.
GrBound gr_bound(const BoundParams& params);

enum class RVariant { theorem1, theorem3 };

struct ChosenR {
  unsigned r = 1;
  bool degenerate = false;  // threshold too small for any valid r; r floored to 1
};
// Largest r with r*2^r + 2 <= log x / log log x (theorem1 variant) or
// <= log x / (log log x)^2 (theorem3 variant).
ChosenR choose_r(double x, RVariant variant);

}  // namespace pspp
