#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "vanish/cyclotomic.hpp"

using namespace vanish;

TEST_CASE("cyclotomic polynomials") {
  REQUIRE(cyclotomic_polynomial(1) == std::vector<i64>{-1, 1});
  REQUIRE(cyclotomic_polynomial(2) == std::vector<i64>{1, 1});
  REQUIRE(cyclotomic_polynomial(3) == std::vector<i64>{1, 1, 1});
  REQUIRE(cyclotomic_polynomial(4) == std::vector<i64>{1, 0, 1});
  REQUIRE(cyclotomic_polynomial(6) == std::vector<i64>{1, -1, 1});
  REQUIRE(cyclotomic_polynomial(12) == std::vector<i64>{1, 0, -1, 0, 1});
  SECTION("degree is Euler phi and the polynomial is monic") {
    for (u64 e : {5ull, 8ull, 9ull, 20ull, 21ull, 28ull, 36ull, 44ull, 105ull}) {
      const auto& f = cyclotomic_polynomial(e);
      REQUIRE(f.size() == euler_phi(e) + 1);
      REQUIRE(f.back() == 1);
    }
  }
  SECTION("the first coefficient of magnitude 2 appears at e = 105") {
    bool has2 = false;
    for (i64 c : cyclotomic_polynomial(105))
      if (c == -2 || c == 2) has2 = true;
    REQUIRE(has2);
  }
}

TEST_CASE("exact zero tests") {
  // 1 + zeta_2 = 0
  CyclotomicValue a = CyclotomicValue(2, 1) + CyclotomicValue::root_power(2, 1);
  REQUIRE(cyclotomic_is_zero(a));
  // 1 + zeta_3 + zeta_3^2 = 0
  CyclotomicValue b = CyclotomicValue(3, 1) + CyclotomicValue::root_power(3, 1) +
                      CyclotomicValue::root_power(3, 2);
  REQUIRE(cyclotomic_is_zero(b));
  // zeta_5 + zeta_5^4 = 2 cos(72 deg) ~ 0.618, not zero
  CyclotomicValue c =
      CyclotomicValue::root_power(5, 1) + CyclotomicValue::root_power(5, 4);
  REQUIRE_FALSE(cyclotomic_is_zero(c));
  REQUIRE(std::abs(oracle::complex_eval(c).real() - 0.6180339887) < 1e-9);
  REQUIRE(std::abs(oracle::complex_eval(c).imag()) < 1e-12);
}

TEST_CASE("arithmetic matches the numeric oracle") {
  std::mt19937_64 rng(5);
  for (u64 e : {1ull, 2ull, 3ull, 4ull, 6ull, 12ull, 21ull, 28ull, 44ull}) {
    std::size_t phi = euler_phi(e);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<i64> ca(phi), cb(phi);
      for (auto& x : ca) x = i64(rng() % 21) - 10;
      for (auto& x : cb) x = i64(rng() % 21) - 10;
      CyclotomicValue a(e), b(e);
      a.assign_reduced(std::vector<i64>(ca));
      b.assign_reduced(std::vector<i64>(cb));
      auto za = oracle::complex_eval(a), zb = oracle::complex_eval(b);
      REQUIRE(std::abs(oracle::complex_eval(a + b) - (za + zb)) < 1e-6);
      REQUIRE(std::abs(oracle::complex_eval(a - b) - (za - zb)) < 1e-6);
      REQUIRE(std::abs(oracle::complex_eval(a * b) - za * zb) < 1e-5);
      REQUIRE(std::abs(oracle::complex_eval(a.conj()) - std::conj(za)) < 1e-6);
    }
  }
}

TEST_CASE("galois maps permute roots") {
  for (u64 e : {5ull, 12ull, 21ull}) {
    for (u64 t = 0; t < e; ++t) {
      CyclotomicValue z = CyclotomicValue::root_power(e, t);
      for (u64 u = 1; u < e; ++u) {
        if (std::gcd(u, e) != 1) continue;
        REQUIRE(z.galois(u) == CyclotomicValue::root_power(e, (t * u) % e));
      }
    }
  }
}

TEST_CASE("modular evaluation agrees with the reduction") {
  // evaluating at an e-th root of unity mod q is a ring homomorphism
  std::mt19937_64 rng(9);
  u64 e = 12, q = 0;
  for (u64 cand = 1000003;; cand += 1) {
    if (cand % e == 1 && is_prime_u64(cand)) {
      q = cand;
      break;
    }
  }
  u64 omega = element_of_order(e, q);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<i64> ca(euler_phi(e)), cb(euler_phi(e));
    for (auto& x : ca) x = i64(rng() % 201) - 100;
    for (auto& x : cb) x = i64(rng() % 201) - 100;
    CyclotomicValue a(e), b(e);
    a.assign_reduced(std::vector<i64>(ca));
    b.assign_reduced(std::vector<i64>(cb));
    u64 ea = a.eval_mod(omega, q), eb = b.eval_mod(omega, q);
    REQUIRE((a * b).eval_mod(omega, q) == mulmod(ea, eb, q));
    REQUIRE((a + b).eval_mod(omega, q) == addmod(ea, eb, q));
  }
}

TEST_CASE("modular number theory helpers") {
  REQUIRE(is_prime_u64(2));
  REQUIRE(is_prime_u64(547));
  REQUIRE_FALSE(is_prime_u64(561));  // Carmichael
  REQUIRE(smallest_primitive_root(7) == 3);
  REQUIRE(smallest_primitive_root(13) == 2);
  for (u64 p : {13ull, 101ull, 547ull}) {
    for (u64 a = 1; a < 20; ++a) {
      u64 sq = mulmod(a, a, p);
      u64 r = sqrtmod(sq, p);
      REQUIRE(mulmod(r, r, p) == sq);
    }
  }
  REQUIRE(euler_phi(44) == 20);
  REQUIRE(euler_phi(21) == 12);
  REQUIRE(is_square_free(30));
  REQUIRE_FALSE(is_square_free(18));
  u64 base = 0;
  REQUIRE(is_prime_power(64, &base));
  REQUIRE(base == 2);
  REQUIRE_FALSE(is_prime_power(12));
}
