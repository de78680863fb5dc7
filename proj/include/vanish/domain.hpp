#pragma once

// Element domains: a domain knows how to multiply and invert canonical
// 64-bit element codes. Groups are enumerated over a domain; the domain is
// what lets us avoid |G|^2 multiplication tables for large groups.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vanish/errors.hpp"
#include "vanish/modmath.hpp"

namespace vanish {

using ElemCode = std::uint64_t;
using Index = std::uint32_t;

class Domain {
 public:
  virtual ~Domain() = default;
  virtual ElemCode identity() const = 0;
  virtual ElemCode mul(ElemCode a, ElemCode b) const = 0;
  virtual ElemCode inv(ElemCode a) const = 0;
  virtual bool valid(ElemCode a) const = 0;
  // When nonzero, every valid code lies in [0, code_space()); enumeration
  // then uses a flat lookup vector instead of a hash map.
  virtual u64 code_space() const { return 0; }
  virtual std::string backing() const = 0;
};

// Permutations of {0..degree-1}, images packed into the code.
class PermDomain final : public Domain {
 public:
  explicit PermDomain(unsigned degree) : n_(degree) {
    if (degree == 0 || degree > 16) throw BadParams("permutation degree out of range");
    bits_ = 1;
    while ((1u << bits_) < degree) ++bits_;
    mask_ = (ElemCode(1) << bits_) - 1;
  }

  unsigned degree() const { return n_; }

  ElemCode encode(const std::vector<unsigned>& images) const {
    ElemCode c = 0;
    for (unsigned i = 0; i < n_; ++i) c |= ElemCode(images[i]) << (bits_ * i);
    return c;
  }
  std::vector<unsigned> decode(ElemCode c) const {
    std::vector<unsigned> img(n_);
    for (unsigned i = 0; i < n_; ++i) img[i] = unsigned((c >> (bits_ * i)) & mask_);
    return img;
  }

  ElemCode identity() const override {
    ElemCode c = 0;
    for (unsigned i = 0; i < n_; ++i) c |= ElemCode(i) << (bits_ * i);
    return c;
  }
  // apply a first, then b
  ElemCode mul(ElemCode a, ElemCode b) const override {
    ElemCode c = 0;
    for (unsigned i = 0; i < n_; ++i) {
      unsigned ai = unsigned((a >> (bits_ * i)) & mask_);
      unsigned bi = unsigned((b >> (bits_ * ai)) & mask_);
      c |= ElemCode(bi) << (bits_ * i);
    }
    return c;
  }
  ElemCode inv(ElemCode a) const override {
    ElemCode c = 0;
    for (unsigned i = 0; i < n_; ++i) {
      unsigned ai = unsigned((a >> (bits_ * i)) & mask_);
      c |= ElemCode(i) << (bits_ * ai);
    }
    return c;
  }
  bool valid(ElemCode a) const override {
    std::uint32_t seen = 0;
    for (unsigned i = 0; i < n_; ++i) {
      unsigned ai = unsigned((a >> (bits_ * i)) & mask_);
      if (ai >= n_ || (seen & (1u << ai))) return false;
      seen |= 1u << ai;
    }
    return (a >> (bits_ * n_)) == 0;
  }
  std::string backing() const override { return "permutation"; }

 private:
  unsigned n_;
  unsigned bits_;
  ElemCode mask_;
};

// Tuples of residues, mixed-radix coded. Doubles as the module of a
// semidirect product.
class AbelianDomain final : public Domain {
 public:
  explicit AbelianDomain(std::vector<u64> moduli) : m_(std::move(moduli)) {
    space_ = 1;
    for (u64 m : m_) {
      if (m < 1) throw BadParams("modulus must be >= 1");
      space_ *= m;
    }
  }

  const std::vector<u64>& moduli() const { return m_; }

  ElemCode encode(const std::vector<u64>& r) const {
    ElemCode c = 0;
    for (std::size_t i = m_.size(); i-- > 0;) c = c * m_[i] + r[i] % m_[i];
    return c;
  }
  std::vector<u64> decode(ElemCode c) const {
    std::vector<u64> r(m_.size());
    for (std::size_t i = 0; i < m_.size(); ++i) {
      r[i] = c % m_[i];
      c /= m_[i];
    }
    return r;
  }

  ElemCode identity() const override { return 0; }
  ElemCode mul(ElemCode a, ElemCode b) const override {
    ElemCode c = 0, base = 1;
    for (std::size_t i = 0; i < m_.size(); ++i) {
      u64 s = a % m_[i] + b % m_[i];
      if (s >= m_[i]) s -= m_[i];
      c += base * s;
      base *= m_[i];
      a /= m_[i];
      b /= m_[i];
    }
    return c;
  }
  ElemCode inv(ElemCode a) const override {
    ElemCode c = 0, base = 1;
    for (std::size_t i = 0; i < m_.size(); ++i) {
      u64 r = a % m_[i];
      c += base * (r == 0 ? 0 : m_[i] - r);
      base *= m_[i];
      a /= m_[i];
    }
    return c;
  }
  bool valid(ElemCode a) const override { return a < space_; }
  u64 code_space() const override { return space_; }
  std::string backing() const override { return "pairs"; }

 private:
  std::vector<u64> m_;
  u64 space_;
};

// Explicit multiplication table for small groups.
class TableDomain final : public Domain {
 public:
  TableDomain(std::size_t n, std::vector<Index> table, std::vector<Index> inverse)
      : n_(n), table_(std::move(table)), inv_(std::move(inverse)) {
    if (table_.size() != n_ * n_ || inv_.size() != n_)
      throw BadParams("table domain shape mismatch");
  }
  ElemCode identity() const override { return 0; }
  ElemCode mul(ElemCode a, ElemCode b) const override {
    return table_[std::size_t(a) * n_ + b];
  }
  ElemCode inv(ElemCode a) const override { return inv_[a]; }
  bool valid(ElemCode a) const override { return a < n_; }
  u64 code_space() const override { return n_; }
  std::string backing() const override { return "table"; }

 private:
  std::size_t n_;
  std::vector<Index> table_;
  std::vector<Index> inv_;
};

}  // namespace vanish
