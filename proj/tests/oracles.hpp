// Naive reference implementations used only by tests: slow, independent
// routes that the library results are checked against.
#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "pspp/arith.hpp"

namespace oracle {

inline std::vector<uint64_t> primes_upto(uint64_t x) {
  std::vector<uint64_t> out;
  for (uint64_t n = 2; n <= x; ++n) {
    bool prime = n >= 2;
    for (uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(n);
  }
  return out;
}

// Legendre symbol by Euler's criterion (p an odd prime).
inline int legendre(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  uint64_t v = pspp::pow_mod(a, (p - 1) / 2, p);
  return v == 1 ? 1 : -1;
}

// Jacobi symbol as a product of Legendre symbols over the factorization of m.
inline int jacobi(uint64_t a, uint64_t m) {
  int result = 1;
  for (uint64_t p : primes_upto(m)) {
    while (m % p == 0) {
      m /= p;
      result *= legendre(a, p);
    }
    if (m == 1) break;
  }
  return result;
}

inline bool is_square(uint64_t n) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  for (uint64_t c = r > 1 ? r - 1 : 0; c <= r + 1; ++c) {
    if (c * c == n) return true;
  }
  return false;
}

inline bool is_pseudosquare(uint64_t n, uint64_t x) {
  if (n % 8 != 1 || is_square(n)) return false;
  for (uint64_t p : primes_upto(x)) {
    if (p == 2) continue;
    if (legendre(n % p, p) != 1) return false;
  }
  return true;
}

inline uint64_t least_pseudosquare(uint64_t x) {
  for (uint64_t n = 1;; n += 8) {
    if (is_pseudosquare(n, x)) return n;
  }
}

// members of <g> mod p by direct enumeration of powers
inline std::set<uint64_t> subgroup(int64_t g, uint64_t p) {
  int64_t rs = g % static_cast<int64_t>(p);
  uint64_t r = static_cast<uint64_t>(rs < 0 ? rs + static_cast<int64_t>(p) : rs);
  std::set<uint64_t> members;
  uint64_t cur = 1;
  while (members.insert(cur).second) cur = pspp::mul_mod(cur, r, p);
  return members;
}

inline bool is_true_power(uint64_t n, int64_t g) {
  pspp::BigInt t = 1;
  while (true) {
    if (t == pspp::BigInt(static_cast<unsigned long>(n))) return true;
    if (abs(t) > pspp::BigInt(static_cast<unsigned long>(n))) return false;
    t *= g;
  }
}

inline bool is_pseudopower(uint64_t n, int64_t g, uint64_t x, bool ignore_g_primes) {
  if (n == 0 || is_true_power(n, g)) return false;
  uint64_t ag = static_cast<uint64_t>(g < 0 ? -g : g);
  for (uint64_t p : primes_upto(x)) {
    if (ag % p == 0) {
      if (!ignore_g_primes && n % p > 1) return false;
      continue;
    }
    if (!subgroup(g, p).count(n % p)) return false;
  }
  return true;
}

inline uint64_t least_pseudopower(int64_t g, uint64_t x, bool ignore_g_primes) {
  for (uint64_t n = 1;; ++n) {
    if (is_pseudopower(n, g, x, ignore_g_primes)) return n;
  }
}

}  // namespace oracle
