#pragma once

// Exact arithmetic in Z[zeta_e]: integer coefficient vectors reduced
// modulo the e-th cyclotomic polynomial. Equality and the zero test are
// coefficient-wise, which is what makes "character value is exactly 0"
// decidable.

#include <cstdint>
#include <map>
#include <vector>

#include "vanish/errors.hpp"
#include "vanish/modmath.hpp"

namespace vanish {

// Coefficients ascending by degree, monic. Computed by exact division of
// x^e - 1 by the cyclotomic polynomials of the proper divisors.
inline const std::vector<i64>& cyclotomic_polynomial(u64 e) {
  static std::map<u64, std::vector<i64>> cache;
  auto it = cache.find(e);
  if (it != cache.end()) return it->second;

  std::vector<i64> f(e + 1, 0);
  f[0] = -1;
  f[e] = 1;  // x^e - 1
  for (u64 d = 1; d < e; ++d) {
    if (e % d != 0) continue;
    const std::vector<i64>& phi_d = cyclotomic_polynomial(d);
    // exact long division f /= phi_d
    std::vector<i64> q(f.size() - phi_d.size() + 1, 0);
    std::vector<i64> r = f;
    for (std::size_t i = q.size(); i-- > 0;) {
      i64 c = r[i + phi_d.size() - 1];
      q[i] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j < phi_d.size(); ++j)
        r[i + j] -= c * phi_d[j];
    }
    for (i64 c : r)
      if (c != 0) throw GroupError("cyclotomic division not exact");
    f = std::move(q);
  }
  return cache.emplace(e, std::move(f)).first->second;
}

class CyclotomicValue {
 public:
  CyclotomicValue() : e_(1), c_(1, 0) {}

  explicit CyclotomicValue(u64 conductor, i64 integer = 0)
      : e_(conductor), c_(euler_phi(conductor), 0) {
    if (!c_.empty()) c_[0] = integer;
  }

  // zeta_e^t with multiplicity m, reduced.
  static CyclotomicValue root_power(u64 e, u64 t, i64 m = 1) {
    CyclotomicValue v(e);
    std::vector<i64> poly(e, 0);
    poly[t % e] += m;
    v.assign_reduced(poly);
    return v;
  }

  u64 conductor() const { return e_; }
  const std::vector<i64>& coeffs() const { return c_; }

  bool is_zero() const {
    for (i64 c : c_)
      if (c != 0) return false;
    return true;
  }

  bool is_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  i64 integer_part() const { return c_.empty() ? 0 : c_[0]; }

  friend bool operator==(const CyclotomicValue& a, const CyclotomicValue& b) {
    return a.e_ == b.e_ && a.c_ == b.c_;
  }

  CyclotomicValue& operator+=(const CyclotomicValue& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  CyclotomicValue& operator-=(const CyclotomicValue& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }

  friend CyclotomicValue operator+(CyclotomicValue a,
                                   const CyclotomicValue& b) {
    return a += b;
  }
  friend CyclotomicValue operator-(CyclotomicValue a,
                                   const CyclotomicValue& b) {
    return a -= b;
  }

  friend CyclotomicValue operator*(const CyclotomicValue& a,
                                   const CyclotomicValue& b) {
    a.check_same(b);
    std::size_t phi = a.c_.size();
    std::vector<i64> prod(2 * phi, 0);
    for (std::size_t i = 0; i < phi; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < phi; ++j) {
        if (b.c_[j] == 0) continue;
        i64 t;
        if (__builtin_mul_overflow(a.c_[i], b.c_[j], &t) ||
            __builtin_add_overflow(prod[i + j], t, &prod[i + j]))
          throw std::overflow_error("cyclotomic multiply overflow");
      }
    }
    CyclotomicValue r(a.e_);
    r.assign_reduced(prod);
    return r;
  }

  // Galois action zeta -> zeta^u for gcd(u,e)=1; u = e-1 is complex
  // conjugation.
  CyclotomicValue galois(u64 u) const {
    u %= e_;
    std::vector<i64> poly(e_ == 1 ? 1 : e_, 0);
    // re-express in zeta powers 0..e-1 via x^i, then remap exponents
    std::vector<i64> as_poly(c_.begin(), c_.end());
    for (std::size_t i = 0; i < as_poly.size(); ++i) {
      if (as_poly[i] == 0) continue;
      poly[(i * u) % (e_ == 1 ? 1 : e_)] += as_poly[i];
    }
    CyclotomicValue r(e_);
    r.assign_reduced(poly);
    return r;
  }

  CyclotomicValue conj() const { return e_ <= 2 ? *this : galois(e_ - 1); }

  // Evaluate at a given e-th root of unity mod q (exact image in F_q).
  u64 eval_mod(u64 root, u64 q) const {
    u64 acc = 0;
    u64 pw = 1;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      i64 c = c_[i];
      if (c != 0) {
        u64 cm = c >= 0 ? u64(c) % q : q - (u64(-c) % q);
        acc = addmod(acc, mulmod(cm, pw, q), q);
      }
      pw = mulmod(pw, root, q);
    }
    return acc;
  }

  // Largest |coefficient|; used for rigorous verification bounds.
  u64 max_abs_coeff() const {
    u64 m = 0;
    for (i64 c : c_) {
      u64 a = c >= 0 ? u64(c) : u64(-c);
      if (a > m) m = a;
    }
    return m;
  }

  // Reduce an arbitrary-degree integer polynomial in zeta_e into this value.
  void assign_reduced(std::vector<i64> poly) {
    const std::vector<i64>& phi = cyclotomic_polynomial(e_);
    std::size_t deg_phi = phi.size() - 1;
    // first fold exponents >= e using zeta^e = 1
    if (poly.size() > e_ && e_ > 0) {
      for (std::size_t i = poly.size(); i-- > e_;) {
        poly[i - e_] += poly[i];
        poly[i] = 0;
      }
      poly.resize(e_);
    }
    for (std::size_t i = poly.size(); i-- > deg_phi;) {
      i64 c = poly[i];
      if (c == 0) continue;
      poly[i] = 0;
      for (std::size_t j = 0; j < deg_phi; ++j) {
        i64 t;
        if (__builtin_mul_overflow(c, phi[j], &t) ||
            __builtin_sub_overflow(poly[i - deg_phi + j], t,
                                   &poly[i - deg_phi + j]))
          throw std::overflow_error("cyclotomic reduce overflow");
      }
    }
    c_.assign(deg_phi, 0);
    for (std::size_t i = 0; i < deg_phi && i < poly.size(); ++i) c_[i] = poly[i];
  }

 private:
  void check_same(const CyclotomicValue& o) const {
    if (e_ != o.e_) throw GroupError("cyclotomic conductor mismatch");
  }

  u64 e_;
  std::vector<i64> c_;
};

inline bool cyclotomic_is_zero(const CyclotomicValue& v) { return v.is_zero(); }

}  // namespace vanish
