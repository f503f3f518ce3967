#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "pspp/arith.hpp"

using namespace pspp;

TEST_CASE("sieve_primes basics") {
  CHECK(sieve_primes(10) == std::vector<uint64_t>{2, 3, 5, 7});
  CHECK(sieve_primes(1).empty());
  CHECK(sieve_primes(13).back() == 13);
  CHECK(sieve_primes(10'000).size() == 1229);
  CHECK(sieve_primes(10'000) == oracle::primes_upto(10'000));
}

TEST_CASE("segmented prime iteration matches the plain sieve") {
  std::vector<uint64_t> collected;
  segmented_primes(0, 10'000, [&](uint64_t p) { collected.push_back(p); });
  CHECK(collected == sieve_primes(10'000));

  collected.clear();
  segmented_primes(5'000, 6'000, [&](uint64_t p) { collected.push_back(p); });
  for (uint64_t p : collected) {
    CHECK(p >= 5'000);
    CHECK(p <= 6'000);
    CHECK(is_prime_u64(p));
  }
  auto all = sieve_primes(6'000);
  size_t expected = std::count_if(all.begin(), all.end(), [](uint64_t p) { return p >= 5'000; });
  CHECK(collected.size() == expected);
}

TEST_CASE("prime basis and primorials") {
  PrimeBasis b13 = PrimeBasis::build(13);
  CHECK(b13.pi() == 6);
  CHECK(b13.m_x == 30030);
  CHECK(b13.m2_x == 15015);
  CHECK(b13.odd_count() == 5);
  CHECK(primorial(b13) == 30030);
  CHECK(primorial(b13, 2) == 15015);
  CHECK(primorial(b13, 10) == 3003);
  CHECK(primorial(b13, -10) == 3003);
  CHECK_THROWS_AS(primorial(b13, 1), std::invalid_argument);

  PrimeBasis b1 = PrimeBasis::build(1);
  CHECK(b1.pi() == 0);
  CHECK(b1.m_x == 1);
}

TEST_CASE("jacobi matches Euler's criterion at odd primes") {
  for (uint64_t p : oracle::primes_upto(97)) {
    if (p == 2) continue;
    for (uint64_t a = 0; a < p; ++a) {
      CHECK(jacobi(a, p) == oracle::legendre(a, p));
    }
  }
}

TEST_CASE("jacobi on composite moduli matches the Legendre product") {
  for (uint64_t m = 3; m <= 225; m += 2) {
    for (uint64_t a = 0; a <= 2 * m; ++a) {
      CHECK(jacobi(a, m) == oracle::jacobi(a, m));
    }
  }
}

TEST_CASE("jacobi frozen values") {
  CHECK(jacobi(1, 9) == 1);
  CHECK(jacobi(73, 3) == 1);
  CHECK(jacobi(2, 15) == 1);
  CHECK(jacobi(7, 15) == -1);
  CHECK(jacobi(0, 1) == 1);
  CHECK(jacobi(15, 45) == 0);
}

TEST_CASE("jacobi rejects even or nonpositive moduli") {
  CHECK_THROWS_AS(jacobi(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(jacobi(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(jacobi(BigInt(3), BigInt(10)), std::invalid_argument);
  CHECK_THROWS_AS(jacobi(BigInt(3), BigInt(-7)), std::invalid_argument);
}

TEST_CASE("jacobi uint64 and bigint routes agree") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2'000; ++i) {
    uint64_t m = (rng() % 100'000) * 2 + 3;
    uint64_t a = rng() % (4 * m);
    CHECK(jacobi(a, m) == jacobi(BigInt(static_cast<unsigned long>(a)),
                                 BigInt(static_cast<unsigned long>(m))));
  }
}

TEST_CASE("jacobi multiplicativity and periodicity") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    uint64_t m = (rng() % 5'000) * 2 + 3;
    uint64_t a = rng() % m;
    uint64_t b = rng() % m;
    BigInt ab = BigInt(static_cast<unsigned long>(a)) * static_cast<unsigned long>(b);
    CHECK(jacobi(ab, BigInt(static_cast<unsigned long>(m))) == jacobi(a, m) * jacobi(b, m));
    CHECK(jacobi(a + m, m) == jacobi(a, m));
  }
}

TEST_CASE("deterministic primality") {
  CHECK_FALSE(is_prime_u64(0));
  CHECK_FALSE(is_prime_u64(1));
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(53881));
  CHECK_FALSE(is_prime_u64(53879 * 2));
  auto primes = oracle::primes_upto(3'000);
  size_t idx = 0;
  for (uint64_t n = 2; n <= 3'000; ++n) {
    bool expected = idx < primes.size() && primes[idx] == n;
    if (expected) ++idx;
    CHECK(is_prime_u64(n) == expected);
  }
  CHECK(is_prime_u64(18446744073709551557ull));  // largest 64-bit prime
  CHECK_FALSE(is_prime_u64(3215031751ull));      // strong pseudoprime to bases 2,3,5,7
}

TEST_CASE("mul_order_index frozen values and invariants") {
  CHECK(mul_order_index(2, 7).order == 3);
  CHECK(mul_order_index(2, 7).index == 2);
  CHECK(mul_order_index(2, 3).order == 2);
  CHECK(mul_order_index(2, 3).index == 1);
  CHECK(mul_order_index(2, 13).order == 12);
  CHECK(mul_order_index(10, 3).order == 1);
  CHECK(mul_order_index(10, 3).index == 2);
  CHECK(mul_order_index(-2, 7).order == 6);
  CHECK_THROWS_AS(mul_order_index(6, 3), std::invalid_argument);
  CHECK_THROWS_AS(mul_order_index(2, 15), std::invalid_argument);

  for (uint64_t p : oracle::primes_upto(61)) {
    for (int64_t g = -10; g <= 10; ++g) {
      if (g == 0 || g == 1 || g == -1) continue;
      uint64_t ag = static_cast<uint64_t>(g < 0 ? -g : g);
      if (ag % p == 0) continue;
      OrderIndex oi = mul_order_index(g, p);
      CHECK(oi.order * oi.index == p - 1);
      uint64_t r = static_cast<uint64_t>(((g % static_cast<int64_t>(p)) + static_cast<int64_t>(p)) %
                                         static_cast<int64_t>(p));
      CHECK(pow_mod(r, oi.order, p) == 1);
      for (uint64_t d = 1; d < oi.order; ++d) {
        if (oi.order % d == 0) CHECK(pow_mod(r, d, p) != 1);
      }
      CHECK(oracle::subgroup(g, p).size() == oi.order);
    }
  }
}

TEST_CASE("factorize and mult_functions") {
  auto f = factorize(360);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0].p == 2);
  CHECK(f.factors[0].e == 3);
  CHECK(f.factors[2].p == 5);
  CHECK(factorize(-30).factors.size() == 3);
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);

  MultFunctions m = mult_functions(15015);
  CHECK(m.tau == 32);
  CHECK(m.mu == -1);
  CHECK(m.phi == 5760);
  CHECK(m.rad == 15015);
  CHECK(m.omega == 5);

  MultFunctions one = mult_functions(1);
  CHECK(one.tau == 1);
  CHECK(one.mu == 1);
  CHECK(one.phi == 1);
  CHECK(one.rad == 1);
  CHECK(one.omega == 0);

  for (uint64_t n = 1; n <= 1'000; ++n) {
    MultFunctions mf = mult_functions(n);
    uint64_t tau = 0, phi = 0;
    for (uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0) ++tau;
      uint64_t a = n, b = d, t;
      while (b) t = a % b, a = b, b = t;
      if (a == 1) ++phi;
    }
    CHECK(mf.tau == tau);
    CHECK(mf.phi == phi);
  }
}

TEST_CASE("classify_power matches exhaustive exponent search") {
  CHECK(classify_power(BigInt(49), 2).is_square);
  CHECK_FALSE(classify_power(BigInt(49), 2).is_g_power);
  CHECK(classify_power(BigInt(64), 2).is_g_power);
  CHECK(classify_power(BigInt(1), 5).is_g_power);
  CHECK_FALSE(classify_power(BigInt(73), 2).is_square);
  CHECK_FALSE(classify_power(BigInt(73), 2).is_g_power);
  CHECK(classify_power(BigInt(16), -2).is_g_power);
  CHECK_FALSE(classify_power(BigInt(8), -2).is_g_power);
  CHECK_THROWS_AS(classify_power(BigInt(0), 2), std::invalid_argument);
  CHECK_THROWS_AS(classify_power(BigInt(5), 1), std::invalid_argument);

  for (int64_t g : {2, 3, 10, -2}) {
    std::set<uint64_t> powers;
    BigInt t = 1;
    while (abs(t) <= 1'000'000) {
      if (t > 0) powers.insert(t.get_ui());
      t *= g;
    }
    for (uint64_t n = 1; n <= 1'000'000; n += (n < 1'100 ? 1 : 997)) {
      PowerFlags flags = classify_power(BigInt(static_cast<unsigned long>(n)), g);
      CHECK(flags.is_g_power == (powers.count(n) > 0));
      CHECK(flags.is_square == oracle::is_square(n));
    }
  }
}

TEST_CASE("primitive roots and discrete logs") {
  CHECK(primitive_root(2) == 1);
  CHECK(primitive_root(7) == 3);
  CHECK(discrete_log(7, 3, 2) == 2);
  CHECK(discrete_log(7, 3, 1) == 0);
  CHECK(discrete_log(5, 2, 3) == 3);
  CHECK_THROWS_AS(discrete_log(7, 2, 3), std::invalid_argument);  // 2 has order 3 mod 7
  CHECK_THROWS_AS(discrete_log(7, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(discrete_log(15, 2, 3), std::invalid_argument);

  for (uint64_t p : oracle::primes_upto(101)) {
    uint64_t root = primitive_root(p);
    if (p > 2) CHECK(mul_order_index(static_cast<int64_t>(root), p).order == p - 1);
    for (uint64_t n = 1; n < p; ++n) {
      uint64_t e = discrete_log(p, root, n);
      CHECK(pow_mod(root, e, p) == n);
      CHECK(e < (p == 2 ? 1 : p - 1));
    }
  }
}

TEST_CASE("von Mangoldt table") {
  auto lambda = von_mangoldt_table(100);
  CHECK(lambda[1] == 0.0);
  CHECK(lambda[2] == doctest::Approx(std::log(2.0)));
  CHECK(lambda[8] == doctest::Approx(std::log(2.0)));
  CHECK(lambda[81] == doctest::Approx(std::log(3.0)));
  CHECK(lambda[6] == 0.0);
  CHECK(lambda[100] == 0.0);
  double sum = 0;
  for (uint64_t n = 1; n <= 100; ++n) sum += lambda[n];
  // psi(100) = 94.045...
  CHECK(sum == doctest::Approx(94.0453).epsilon(1e-4));
}
