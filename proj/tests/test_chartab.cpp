#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "oracles.hpp"
#include "vanish/chartab.hpp"
#include "vanish/dsl.hpp"

using namespace vanish;

namespace {

ClassAlgebra algebra_of(const Group& g) {
  return ClassAlgebra(g, std::make_shared<ClassData>(conjugacy_classes(g)));
}

}  // namespace

TEST_CASE("class structure constants") {
  Group s3 = build_group("D(3)");
  ClassAlgebra alg = algebra_of(s3);
  const ClassData& cd = alg.classes();

  SECTION("identity class multiplies as the identity matrix") {
    auto m0 = alg.multiplier_matrix(0);
    for (std::size_t t = 0; t < cd.count(); ++t)
      for (std::size_t j = 0; j < cd.count(); ++j)
        REQUIRE(m0[t * cd.count() + j] == (t == j ? 1u : 0u));
  }

  SECTION("transposition class: a_{T,T,1} = 3, by direct enumeration") {
    Index tcls = kNoIndex;
    for (std::size_t c = 0; c < cd.count(); ++c)
      if (cd.sizes[c] == 3) tcls = Index(c);
    REQUIRE(alg.constant(tcls, tcls, 0) == 3);
    // brute: count pairs (x, y) of transpositions with xy = 1
    std::size_t pairs = 0;
    for (Index x = 0; x < 6; ++x)
      for (Index y = 0; y < 6; ++y)
        if (s3->element_order(x) == 2 && s3->element_order(y) == 2 &&
            s3->product(x, y) == 0)
          ++pairs;
    REQUIRE(pairs == 3);
  }

  SECTION("counting identity: sum_k a_{ijk} h_k = h_i h_j") {
    for (const char* expr : {"D(3)", "Q8", "SL23", "D(6)"}) {
      Group g = build_group(expr);
      ClassAlgebra a = algebra_of(g);
      std::size_t k = a.count();
      for (Index i = 0; i < Index(k); ++i)
        for (Index j = 0; j < Index(k); ++j) {
          u64 total = 0;
          for (Index t = 0; t < Index(k); ++t)
            total += a.constant(i, j, t) * a.classes().sizes[t];
          REQUIRE(total == a.classes().sizes[i] * a.classes().sizes[j]);
        }
    }
  }

  SECTION("the multiplier matrices commute pairwise mod p") {
    Group g = build_group("SL23");
    ClassAlgebra a = algebra_of(g);
    std::size_t k = a.count();
    u64 p = 97;
    std::vector<std::vector<u64>> mats;
    for (Index i = 0; i < Index(k); ++i) {
      auto raw = a.multiplier_matrix(i);
      std::vector<u64> m(k * k);
      for (std::size_t t = 0; t < k * k; ++t) m[t] = raw[t] % p;
      mats.push_back(std::move(m));
    }
    auto mul = [&](const std::vector<u64>& x, const std::vector<u64>& y) {
      std::vector<u64> z(k * k, 0);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) {
          if (x[i * k + l] == 0) continue;
          for (std::size_t j = 0; j < k; ++j)
            z[i * k + j] = (z[i * k + j] + x[i * k + l] * y[l * k + j]) % p;
        }
      return z;
    };
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        REQUIRE(mul(mats[i], mats[j]) == mul(mats[j], mats[i]));
  }
}

TEST_CASE("dixon prime selection") {
  REQUIRE(choose_dixon_prime(6, 6) == 7);
  REQUIRE(choose_dixon_prime(24, 12) == 13);
  REQUIRE(choose_dixon_prime(448, 28) == 113);
  SECTION("matches a direct scan oracle") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
      u64 e = 1 + rng() % 40;
      u64 order = e * (1 + rng() % 500);
      REQUIRE(choose_dixon_prime(order, e) == oracle::brute_dixon_prime(order, e));
    }
  }
}

TEST_CASE("hessenberg characteristic polynomial against evaluation oracle") {
  std::mt19937_64 rng(17);
  for (u64 p : {101ull, 547ull}) {
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u}) {
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<u64> m(n * n);
        for (auto& x : m) x = rng() % p;
        std::vector<u64> f = dixondetail::charpoly(m, n, p);
        REQUIRE(f.size() == n + 1);
        REQUIRE(f.back() == 1);
        for (int pt = 0; pt < 6; ++pt) {
          u64 x = rng() % p;
          u64 direct = oracle::charpoly_at(m, n, x, p);
          u64 horner = 0;
          for (std::size_t i = f.size(); i-- > 0;)
            horner = (horner * x + f[i]) % p;
          REQUIRE(horner == direct);
        }
      }
    }
  }
}

TEST_CASE("modular table") {
  SECTION("trivial group") {
    Group t = build_group("C(1)");
    ClassAlgebra a = algebra_of(t);
    ModularTable mt = modular_character_table(a, choose_dixon_prime(1, 1));
    REQUIRE(mt.k == 1);
    REQUIRE(mt.degrees == std::vector<u64>{1});
  }
  SECTION("S3 mod 7 has degree multiset {1,1,2}") {
    Group s3 = build_group("D(3)");
    ClassAlgebra a = algebra_of(s3);
    ModularTable mt = modular_character_table(a, 7);
    std::multiset<u64> degs(mt.degrees.begin(), mt.degrees.end());
    REQUIRE(degs == std::multiset<u64>{1, 1, 2});
    u64 sum = 0;
    for (u64 d : mt.degrees) sum += d * d;
    REQUIRE(sum % 7 == 6 % 7);
  }
}

TEST_CASE("exact character tables") {
  SECTION("C2 is [[1,1],[1,-1]]") {
    CharacterTable t = character_table(build_group("C(2)"));
    REQUIRE(t.k == 2);
    REQUIRE(t.phi == 1);
    // canonical order puts the sign character first (coefficient -1 < 1)
    REQUIRE(t.entry(0, 0)[0] == 1);
    REQUIRE(t.entry(0, 1)[0] == -1);
    REQUIRE(t.entry(1, 0)[0] == 1);
    REQUIRE(t.entry(1, 1)[0] == 1);
  }

  SECTION("S3: exact sign and standard characters") {
    Group s3 = build_group("D(3)");
    CharacterTable t = character_table(s3);
    REQUIRE(t.degrees == std::vector<u64>{1, 1, 2});
    const ClassData& cd = *t.class_data;
    std::size_t rot = 0, trans = 0;
    for (std::size_t c = 0; c < 3; ++c) {
      if (cd.sizes[c] == 2) rot = c;
      if (cd.sizes[c] == 3) trans = c;
    }
    // trivial row is all ones; sign row is -1 on transpositions; the
    // degree-2 row is 2, -1, 0
    bool found_sign = false, found_std = false;
    for (std::size_t chi = 0; chi < 3; ++chi) {
      if (t.degrees[chi] == 1 && t.entry(chi, trans)[0] == -1) {
        found_sign = true;
        REQUIRE(t.entry(chi, rot)[0] == 1);
      }
      if (t.degrees[chi] == 2) {
        found_std = true;
        REQUIRE(t.entry(chi, rot)[0] == -1);
        REQUIRE(t.entry_is_zero(chi, trans));
      }
    }
    REQUIRE(found_sign);
    REQUIRE(found_std);
  }

  SECTION("Q8: the degree-2 row vanishes exactly on the three size-2 classes") {
    CharacterTable t = character_table(build_group("Q8"));
    std::multiset<u64> degs(t.degrees.begin(), t.degrees.end());
    REQUIRE(degs == std::multiset<u64>{1, 1, 1, 1, 2});
    for (std::size_t chi = 0; chi < t.k; ++chi) {
      if (t.degrees[chi] != 2) continue;
      for (std::size_t c = 0; c < t.k; ++c) {
        bool sz2 = t.class_data->sizes[c] == 2;
        REQUIRE(t.entry_is_zero(chi, c) == sz2);
      }
    }
  }

  SECTION("SL(2,3) degrees") {
    CharacterTable t = character_table(build_group("SL23"));
    std::multiset<u64> degs(t.degrees.begin(), t.degrees.end());
    REQUIRE(degs == std::multiset<u64>{1, 1, 1, 2, 2, 2, 3});
  }
}

TEST_CASE("table property suite on a small corpus") {
  for (const char* expr :
       {"C(6)", "D(3)", "D(4)", "Q8", "D(6)", "SL23", "ES(3,+)", "ES(3,-)",
        "sdp((2x2),C(3),mats([[0,1],[1,1]]))", "Sz8Borel",
        "sdp(3^3,ES(2,+),maxker)", "A5"}) {
    CAPTURE(expr);
    Group g = build_group(expr);
    CharacterTable t = character_table(g);
    REQUIRE(verify_orthogonality(t));
    u64 sum = 0;
    for (u64 d : t.degrees) {
      sum += d * d;
      REQUIRE(g->order() % d == 0);
    }
    REQUIRE(sum == g->order());
    // Burnside: every nonlinear row has a zero
    for (std::size_t chi = 0; chi < t.k; ++chi) {
      if (t.degrees[chi] <= 1) continue;
      bool zero = false;
      for (std::size_t c = 0; c < t.k && !zero; ++c) zero = t.entry_is_zero(chi, c);
      REQUIRE(zero);
    }
    // column norms give back the centralizer orders
    for (std::size_t c = 0; c < t.k; ++c) {
      CyclotomicValue norm(t.conductor);
      for (std::size_t chi = 0; chi < t.k; ++chi) {
        CyclotomicValue v = t.value(chi, c);
        norm += v * v.conj();
      }
      REQUIRE(norm.is_integer());
      REQUIRE(norm.integer_part() == i64(g->order() / t.class_data->sizes[c]));
    }
  }
}

TEST_CASE("a perturbed table fails orthogonality") {
  CharacterTable t = character_table(build_group("D(3)"));
  t.coeffs[(2 * t.k + 1) * t.phi] += 1;
  REQUIRE_FALSE(verify_orthogonality(t));
}

TEST_CASE("dixon prime independence") {
  for (const char* expr : {"D(3)", "Q8", "SL23", "D(6)", "ES(3,-)", "Sz8Borel"}) {
    CAPTURE(expr);
    Group g = build_group(expr);
    ClassData cd = conjugacy_classes(g);
    u64 p1 = choose_dixon_prime(g->order(), cd.exponent);
    u64 p2 = p1 + cd.exponent;
    while (!is_prime_u64(p2)) p2 += cd.exponent;
    CharacterTable t1 = character_table(g, p1);
    CharacterTable t2 = character_table(g, p2);
    REQUIRE(t1.dixon_prime != t2.dixon_prime);
    REQUIRE(t1.degrees == t2.degrees);
    REQUIRE(t1.coeffs == t2.coeffs);
  }
}

TEST_CASE("lift failure paths raise typed errors") {
  // a wrong prime (not 1 mod e) must not silently produce a table
  REQUIRE_THROWS(character_table(build_group("D(3)"), 11));  // 11 != 1 mod 6
}
