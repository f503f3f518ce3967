// Shared integer arithmetic: prime sieves, primorials, Jacobi symbols,
// multiplicative orders, factorization helpers and discrete logarithms.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace pspp {

using BigInt = mpz_class;

// Jacobi/Legendre symbol value: -1, 0 or +1.
using Symbol = int;

std::string dec(const BigInt& v);
std::string dec(double v);

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);
// Inverse of a mod m, gcd(a, m) == 1 required.
uint64_t inv_mod(uint64_t a, uint64_t m);
// Deterministic Miller-Rabin, valid for the full uint64 range.
bool is_prime_u64(uint64_t n);
// n mod p as a uint64 in [0, p), floor convention (works for negative n).
uint64_t reduce_mod(const BigInt& n, uint64_t p);

// All primes <= limit, ascending.
std::vector<uint64_t> sieve_primes(uint64_t limit);
// Invokes fn(p) for every prime p in [lo, hi], ascending (segmented).
void segmented_primes(uint64_t lo, uint64_t hi, const std::function<void(uint64_t)>& fn);

// Primes up to a threshold x together with the primorials they generate.
struct PrimeBasis {
  uint64_t x = 0;
  std::vector<uint64_t> primes;  // all p <= x, ascending
  BigInt m_x;                    // product of all p <= x
  BigInt m2_x;                   // m_x / 2 when x >= 2, else m_x

  size_t pi() const { return primes.size(); }
  // primes[1:], i.e. the odd primes <= x.
  const uint64_t* odd_begin() const { return primes.data() + (primes.empty() || primes[0] != 2 ? 0 : 1); }
  size_t odd_count() const { return primes.size() - ((!primes.empty() && primes[0] == 2) ? 1 : 0); }

  static PrimeBasis build(uint64_t x);
};

// Product of primes p <= basis.x, excluding divisors of `exclude` when given.
BigInt primorial(const PrimeBasis& basis, std::optional<int64_t> exclude = std::nullopt);

// Jacobi symbol (a/m); m must be odd and positive.
Symbol jacobi(uint64_t a, uint64_t m);
Symbol jacobi(const BigInt& a, const BigInt& m);

struct OrderIndex {
  uint64_t order = 0;  // multiplicative order of g mod p
  uint64_t index = 0;  // (p-1) / order
};
// p must be prime and must not divide g.
OrderIndex mul_order_index(int64_t g, uint64_t p);

struct PrimePower {
  uint64_t p = 0;
  unsigned e = 0;
};
struct FactoredInteger {
  int64_t n = 0;
  std::vector<PrimePower> factors;  // of |n|, ascending primes
};
// Trial division plus a primality check on the cofactor; handles |n| up to ~1e12
// (and anything whose second-largest prime factor is < 1e6). n must be nonzero.
FactoredInteger factorize(int64_t n);

struct MultFunctions {
  uint64_t tau = 0;
  int mu = 0;
  uint64_t phi = 0;
  uint64_t rad = 0;
  unsigned omega = 0;
};
MultFunctions mult_functions(uint64_t n);

struct PowerFlags {
  bool is_square = false;
  bool is_g_power = false;  // n == g^k for some integer k >= 0
};
// n >= 1, |g| >= 2.
PowerFlags classify_power(const BigInt& n, int64_t g);

// Smallest primitive root mod p (p prime); p == 2 yields 1.
uint64_t primitive_root(uint64_t p);
// Index of n to the given primitive root mod p: root^result == n (mod p).
// root must generate the full group and p must not divide n.
uint64_t discrete_log(uint64_t p, uint64_t root, uint64_t n);

// Von Mangoldt values Lambda(0..limit); Lambda[q^k] = log q, else 0.
std::vector<double> von_mangoldt_table(uint64_t limit);

}  // namespace pspp
