#include "pspp/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

namespace pspp {

std::string dec(const BigInt& v) { return v.get_str(); }

std::string dec(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  base %= m;
  for (; exp; exp >>= 1) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
  }
  return r;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
  // extended Euclid on (a, m), tracking only the a-coefficient
  int64_t t = 0, newt = 1;
  uint64_t r = m, newr = a % m;
  while (newr != 0) {
    uint64_t qt = r / newr;
    int64_t tmp = t - static_cast<int64_t>(qt) * newt;
    t = newt;
    newt = tmp;
    uint64_t tmpr = r - qt * newr;
    r = newr;
    newr = tmpr;
  }
  if (r != 1) throw std::invalid_argument("inv_mod: arguments are not coprime");
  return t < 0 ? static_cast<uint64_t>(t + static_cast<int64_t>(m)) : static_cast<uint64_t>(t);
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  unsigned s = std::countr_zero(d);
  d >>= s;
  // deterministic witness set for the full 64-bit range
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t v = pow_mod(a, d, n);
    if (v == 1 || v == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      v = mul_mod(v, v, n);
      if (v == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t reduce_mod(const BigInt& n, uint64_t p) {
  return mpz_fdiv_ui(n.get_mpz_t(), p);
}

std::vector<uint64_t> sieve_primes(uint64_t limit) {
  std::vector<uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<uint8_t> composite(limit + 1, 0);
  for (uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

void segmented_primes(uint64_t lo, uint64_t hi, const std::function<void(uint64_t)>& fn) {
  if (hi < 2 || hi < lo) return;
  lo = std::max<uint64_t>(lo, 2);
  uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
  std::vector<uint64_t> base = sieve_primes(root);
  constexpr uint64_t kBlock = 1u << 18;
  std::vector<uint8_t> composite(kBlock);
  for (uint64_t start = lo; start <= hi; start += kBlock) {
    uint64_t end = std::min(hi, start + kBlock - 1);
    uint64_t span = end - start + 1;
    std::fill(composite.begin(), composite.begin() + span, 0);
    for (uint64_t p : base) {
      if (p * p > end) break;
      uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (uint64_t j = first; j <= end; j += p) composite[j - start] = 1;
    }
    for (uint64_t i = 0; i < span; ++i) {
      if (!composite[i] && start + i >= 2) fn(start + i);
    }
  }
}

PrimeBasis PrimeBasis::build(uint64_t x) {
  PrimeBasis basis;
  basis.x = x;
  basis.primes = sieve_primes(x);
  basis.m_x = 1;
  for (uint64_t p : basis.primes) basis.m_x *= static_cast<unsigned long>(p);
  basis.m2_x = (x >= 2) ? basis.m_x / 2 : basis.m_x;
  return basis;
}

BigInt primorial(const PrimeBasis& basis, std::optional<int64_t> exclude) {
  if (!exclude) return basis.m_x;
  int64_t g = *exclude;
  if (g == 0 || g == 1 || g == -1) throw std::invalid_argument("primorial: |exclude| must be >= 2");
  BigInt m = 1;
  uint64_t ag = static_cast<uint64_t>(g < 0 ? -g : g);
  for (uint64_t p : basis.primes) {
    if (ag % p != 0) m *= static_cast<unsigned long>(p);
  }
  return m;
}

Symbol jacobi(uint64_t a, uint64_t m) {
  if (m == 0 || (m & 1) == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
  a %= m;
  int sign = 1;
  while (a != 0) {
    unsigned tz = std::countr_zero(a);
    a >>= tz;
    // (2/m) = -1 iff m = 3, 5 (mod 8)
    if ((tz & 1) && (m % 8 == 3 || m % 8 == 5)) sign = -sign;
    // quadratic reciprocity for odd a, m
    if ((a & 3) == 3 && (m & 3) == 3) sign = -sign;
    uint64_t t = a;
    a = m % t;
    m = t;
  }
  return m == 1 ? sign : 0;
}

Symbol jacobi(const BigInt& a, const BigInt& m) {
  if (m <= 0 || mpz_even_p(m.get_mpz_t())) {
    throw std::invalid_argument("jacobi: modulus must be odd and positive");
  }
  return mpz_jacobi(a.get_mpz_t(), m.get_mpz_t());
}

OrderIndex mul_order_index(int64_t g, uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("mul_order_index: p must be prime");
  if (p - 1 > static_cast<uint64_t>(INT64_MAX)) throw std::invalid_argument("mul_order_index: p too large");
  int64_t rs = g % static_cast<int64_t>(p);
  uint64_t r = static_cast<uint64_t>(rs < 0 ? rs + static_cast<int64_t>(p) : rs);
  if (r == 0) throw std::invalid_argument("mul_order_index: p divides g");
  uint64_t order = p - 1;
  for (const auto& [q, e] : factorize(static_cast<int64_t>(p - 1)).factors) {
    (void)e;
    while (order % q == 0 && pow_mod(r, order / q, p) == 1) order /= q;
  }
  return {order, (p - 1) / order};
}

FactoredInteger factorize(int64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be nonzero");
  FactoredInteger out;
  out.n = n;
  uint64_t m = static_cast<uint64_t>(n < 0 ? -n : n);
  auto push = [&](uint64_t p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  };
  if (m % 2 == 0) push(2);
  for (uint64_t d = 3; d <= 1'000'000 && d * d <= m; d += 2) {
    if (m % d == 0) push(d);
  }
  if (m > 1) {
    if (!is_prime_u64(m)) throw std::invalid_argument("factorize: composite cofactor beyond trial range");
    out.factors.push_back({m, 1});
  }
  return out;
}

MultFunctions mult_functions(uint64_t n) {
  if (n == 0) throw std::invalid_argument("mult_functions: n must be >= 1");
  MultFunctions f{1, 1, 1, 1, 0};
  if (n == 1) return f;
  auto fac = factorize(static_cast<int64_t>(n));
  f.omega = static_cast<unsigned>(fac.factors.size());
  bool squarefree = true;
  for (const auto& [p, e] : fac.factors) {
    f.tau *= e + 1;
    f.rad *= p;
    uint64_t pe = 1;
    for (unsigned i = 1; i < e; ++i) pe *= p;
    f.phi *= pe * (p - 1);
    if (e > 1) squarefree = false;
  }
  f.mu = squarefree ? ((f.omega % 2) ? -1 : 1) : 0;
  return f;
}

PowerFlags classify_power(const BigInt& n, int64_t g) {
  if (n < 1) throw std::invalid_argument("classify_power: n must be >= 1");
  if (g == 0 || g == 1 || g == -1) throw std::invalid_argument("classify_power: |g| must be >= 2");
  PowerFlags flags;
  flags.is_square = mpz_perfect_square_p(n.get_mpz_t()) != 0;
  BigInt t = 1;
  while (true) {
    if (t == n) {
      flags.is_g_power = true;
      break;
    }
    if (abs(t) > n) break;
    t *= g;
  }
  return flags;
}

uint64_t primitive_root(uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("primitive_root: p must be prime");
  if (p == 2) return 1;
  auto fac = factorize(static_cast<int64_t>(p - 1));
  for (uint64_t a = 2; a < p; ++a) {
    bool ok = true;
    for (const auto& [q, e] : fac.factors) {
      (void)e;
      if (pow_mod(a, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return a;
  }
  throw std::logic_error("primitive_root: no generator found");
}

uint64_t discrete_log(uint64_t p, uint64_t root, uint64_t n) {
  if (!is_prime_u64(p)) throw std::invalid_argument("discrete_log: p must be prime");
  n %= p;
  if (n == 0) throw std::invalid_argument("discrete_log: p divides n");
  if (p == 2) return 0;
  if (mul_order_index(static_cast<int64_t>(root % p), p).order != p - 1) {
    throw std::invalid_argument("discrete_log: root is not a primitive root");
  }
  // baby-step giant-step
  uint64_t m = static_cast<uint64_t>(std::ceil(std::sqrt(static_cast<double>(p - 1))));
  std::unordered_map<uint64_t, uint64_t> baby;
  baby.reserve(m * 2);
  uint64_t cur = 1;
  for (uint64_t j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mul_mod(cur, root, p);
  }
  uint64_t giant = inv_mod(cur, p);  // root^(-m)
  uint64_t gamma = n;
  for (uint64_t i = 0; i <= m; ++i) {
    auto it = baby.find(gamma);
    if (it != baby.end()) return (i * m + it->second) % (p - 1);
    gamma = mul_mod(gamma, giant, p);
  }
  throw std::logic_error("discrete_log: no solution found");
}

std::vector<double> von_mangoldt_table(uint64_t limit) {
  std::vector<double> lambda(limit + 1, 0.0);
  for (uint64_t p : sieve_primes(limit)) {
    double lp = std::log(static_cast<double>(p));
    for (uint64_t t = p; t <= limit; t *= p) {
      lambda[t] = lp;
      if (t > limit / p) break;
    }
  }
  return lambda;
}

}  // namespace pspp
