// Pseudopowers: integers that are a power of g modulo every prime up to a
// threshold without being a true power of g. Order/index profiles, least
// examples, exact period counts, windowed counts, and the character-sum
// identities that cross-check them.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "pspp/arith.hpp"
#include "pspp/report.hpp"
#include "pspp/window.hpp"

namespace pspp {

struct ProfileRow {
  uint64_t p = 0;      // prime not dividing g
  uint64_t order = 0;  // multiplicative order of g mod p
  uint64_t index = 0;  // (p-1) / order
};

// Orders and indices of g at every prime p <= x with p not dividing g,
// plus the primes <= x that do divide g.
struct PowerProfile {
  int64_t g = 0;
  uint64_t x = 0;
  std::vector<ProfileRow> rows;
  std::vector<uint64_t> g_primes;  // primes p <= x dividing g
  BigInt i_product;                // product of row indices
  BigInt l_product;                // product of row orders
};

// |g| >= 2, x >= 2.
PowerProfile power_profile(int64_t g, const PrimeBasis& basis);

enum class PpwVariant { q_g, p_g };

// Membership of n in <g> mod p is tested via n^order = 1 (mod p); at primes
// dividing g (q_g variant only) the requirement is n = 0 or 1 (mod p).
// True powers of g are never pseudopowers.
bool is_pseudopower(uint64_t n, const PowerProfile& profile, PpwVariant variant);

struct PseudopowerRecord {
  uint64_t n = 0;
  int64_t g = 0;
  uint64_t x = 0;
  PpwVariant variant = PpwVariant::q_g;
};

// Least pseudopower for the profile. The scan is capped by 2*M(x)+1, where a
// hit is guaranteed; the cap exceeding uint64 range throws budget_error.
PseudopowerRecord least_pseudopower(const PowerProfile& profile, const PrimeBasis& basis,
                                    PpwVariant variant, Budget& budget);

struct PeriodCount {
  BigInt count_closure;        // 2^omega(g) * prod of row orders, over (0, M(x)]
  uint64_t count_true_powers = 0;  // powers of g in (0, M(x)]
};
// Exact count of power-of-g-mod-every-p residues in one full period (0, M(x)].
// Requires x >= |g| so every prime dividing g is below the threshold.
PeriodCount exact_count_period(const PowerProfile& profile, const PrimeBasis& basis);

// Per profile row, byte table over [0, p): 1 iff the residue is a power of g.
std::vector<std::vector<uint8_t>> subgroup_tables(const PowerProfile& profile);

// Strict/closure counts over the window with a histogram of the strict
// members; closure additionally includes the true powers of g.
CountReport count_pseudopowers(const PowerProfile& profile, const PrimeBasis& basis,
                               const Window& w, unsigned bins, Budget& budget);

// Multiplicative character mod p of a chosen order, indexed by the least
// primitive root: chi(n) = exp(2*pi*i * ind(n) / order-fraction of p-1).
class OrderCharacter {
 public:
  OrderCharacter(uint64_t p, uint64_t order);

  uint64_t p() const { return p_; }
  uint64_t order() const { return order_; }
  uint64_t root() const { return root_; }
  // Discrete log of a residue r in [1, p) to the primitive root.
  uint64_t index_of(uint64_t r) const { return index_[r]; }
  std::complex<double> at_residue(uint64_t r) const;
  std::complex<double> operator()(uint64_t n) const { return at_residue(n % p_); }

 private:
  uint64_t p_;
  uint64_t order_;
  uint64_t root_;
  std::vector<uint32_t> index_;
};

OrderCharacter build_character(uint64_t p, uint64_t order);

// Sum of chi^j over j = 1..order: equals order when the residue lies in the
// order-index subgroup, 0 otherwise (exactly, up to rounding).
std::complex<double> subgroup_indicator(const OrderCharacter& chi, uint64_t r);

struct WeightedSum {
  std::complex<double> value;  // sum of Lambda(n) * prod_p indicator(n) for n < p_g(x)
  double identity_rhs = 0.0;   // i_product * sum of Lambda over true powers < p_g(x)
  uint64_t terms = 0;          // prime powers n < p_g(x)
  uint64_t p_gx = 0;
};
WeightedSum weighted_sum_sg(const PowerProfile& profile, const PrimeBasis& basis, Budget& budget);

struct PanResult {
  double value = 0.0;             // real part of the splitting/character sum
  std::complex<double> raw;
  uint64_t direct = 0;            // closure members counted by enumeration
  uint64_t terms = 0;             // candidates visited across splittings
};
// Character-sum count of closure members: summing prod_p indicator(n) over
// window members with n = 0 mod a, n = 1 mod b for every splitting
// a*b = rad(g) equals i_product times the direct closure count.
// Requires x >= |g|.
PanResult p_an_identity(const PowerProfile& profile, const PrimeBasis& basis, const Window& w,
                        Budget& budget);

// Number of character tuples with conductor exactly f (a squarefree product
// of row primes): prod over p | f of (index(p) - 1). f = 1 yields 1.
BigInt conductor_characters(const PowerProfile& profile, const BigInt& f);

// Heuristic density of pseudopowers: 2^omega(g) / (e^gamma * phi(rad g) *
// i_product * log x).
double pseudopower_density(const PowerProfile& profile);

}  // namespace pspp
