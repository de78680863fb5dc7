#pragma once

// Exact irreducible character tables by the modular (Burnside-Dixon-
// Schneider) method: split the class algebra into common eigenvectors over
// F_p for a prime p = 1 (mod exponent), recover modular characters and
// degrees, then lift every value to an exact cyclotomic integer through the
// discrete Fourier formula for root-of-unity multiplicities.

#include <algorithm>
#include <complex>
#include <cstring>
#include <random>
#include <vector>

#include "vanish/cyclotomic.hpp"
#include "vanish/group.hpp"
#include "vanish/modmath.hpp"

namespace vanish {

// ---------------------------------------------------------------------------
// Class algebra.

class ClassAlgebra {
 public:
  static constexpr std::size_t kFullStoreLimit = 80;

  ClassAlgebra(Group G, std::shared_ptr<const ClassData> cd)
      : group_(std::move(G)), cd_(std::move(cd)) {
    std::size_t k = cd_->count();
    members_.resize(k);
    for (Index x = 0; x < Index(group_->order()); ++x)
      members_[cd_->class_of[x]].push_back(x);
    inv_class_.resize(k);
    for (std::size_t i = 0; i < k; ++i)
      inv_class_[i] = cd_->class_of[group_->inverse(cd_->reps[i])];
    if (k <= kFullStoreLimit) {
      std::vector<std::uint32_t> all(k * k * k);
      for (Index i = 0; i < Index(k); ++i) {
        std::vector<std::uint32_t> a = compute_multiplier(i);
        std::copy(a.begin(), a.end(), all.begin() + std::size_t(i) * k * k);
      }
      full_ = std::move(all);
    }
  }

  std::size_t count() const { return cd_->count(); }
  const ClassData& classes() const { return *cd_; }
  std::shared_ptr<const ClassData> classes_ptr() const { return cd_; }
  const Group& group() const { return group_; }
  u64 exponent() const { return cd_->exponent; }
  Index inverse_class(Index i) const { return inv_class_[i]; }

  // Operator of multiplication by the class sum K_i on the class-sum basis:
  // row-major k*k, entry [t][j] = a_{ijt} = #{x in K_i : x^{-1} z_t in K_j}.
  std::vector<std::uint32_t> multiplier_matrix(Index i) const {
    std::size_t k = cd_->count();
    if (!full_.empty()) {
      return std::vector<std::uint32_t>(full_.begin() + std::size_t(i) * k * k,
                                        full_.begin() + std::size_t(i + 1) * k * k);
    }
    return compute_multiplier(i);
  }

  u64 constant(Index i, Index j, Index t) const {
    std::size_t k = cd_->count();
    if (!full_.empty()) return full_[(std::size_t(i) * k + t) * k + j];
    const FiniteGroup& G = *group_;
    Index z = cd_->reps[t];
    u64 c = 0;
    for (Index x : members_[i])
      if (cd_->class_of[G.product(G.inverse(x), z)] == j) ++c;
    return c;
  }

  const std::vector<Index>& class_members(Index i) const { return members_[i]; }

 private:
  std::vector<std::uint32_t> compute_multiplier(Index i) const {
    std::size_t k = cd_->count();
    std::vector<std::uint32_t> a(k * k, 0);
    const FiniteGroup& G = *group_;
    const Index* cls = cd_->class_of.data();
    for (std::size_t t = 0; t < k; ++t) {
      Index z = cd_->reps[t];
      std::uint32_t* row = a.data() + t * k;
      for (Index x : members_[i]) row[cls[G.product(G.inverse(x), z)]]++;
    }
    return a;
  }

  Group group_;
  std::shared_ptr<const ClassData> cd_;
  std::vector<std::vector<Index>> members_;
  std::vector<Index> inv_class_;
  std::vector<std::uint32_t> full_;  // k^3 when k <= kFullStoreLimit
};

inline ClassAlgebra class_structure_constants(Group G,
                                              std::shared_ptr<const ClassData> cd) {
  return ClassAlgebra(std::move(G), std::move(cd));
}

// Smallest prime p = 1 (mod e) with p^2 > 4|G|, so that degrees (<= sqrt|G|)
// lift uniquely from F_p. Such p never divides |G|: any prime divisor of |G|
// divides e, but p = 1 (mod e) forces p > e.
inline u64 choose_dixon_prime(u64 group_order, u64 e) {
  for (u64 p = e + 1;; p += e) {
    if (p * p > 4 * group_order && is_prime_u64(p)) {
      if (p >= (u64(1) << 31)) throw GroupError("Dixon prime exceeds 2^31");
      return p;
    }
  }
}

// ---------------------------------------------------------------------------
// Modular stage.

struct ModularTable {
  u64 p = 0;
  std::size_t k = 0;
  std::vector<u64> degrees;
  std::vector<u64> values;  // k*k row-major, values[chi*k + cls]
  std::vector<u64> omegas;  // k*k eigenvalue data, omegas[chi*k + cls]
};

namespace dixondetail {

// polynomial helpers over F_p, coefficients ascending, normalized (no zero
// leading coefficient)
inline void poly_trim(std::vector<u64>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::vector<u64> poly_mulmod(const std::vector<u64>& a,
                                    const std::vector<u64>& b,
                                    const std::vector<u64>& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> t(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      t[i + j] = (t[i + j] + a[i] * b[j]) % p;
  }
  // reduce mod f (monic not required: normalize by leading inverse)
  std::size_t df = f.size() - 1;
  u64 lead_inv = invmod(f.back(), p);
  for (std::size_t i = t.size(); i-- > df;) {
    if (t[i] == 0) continue;
    u64 c = mulmod(t[i], lead_inv, p);
    for (std::size_t j = 0; j <= df; ++j)
      t[i - df + j] = submod(t[i - df + j], mulmod(c, f[j], p), p);
  }
  t.resize(df);
  poly_trim(t);
  return t;
}

inline std::vector<u64> poly_powmod(std::vector<u64> base, u64 exp,
                                    const std::vector<u64>& f, u64 p) {
  std::vector<u64> r{1};
  while (exp) {
    if (exp & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    exp >>= 1;
  }
  return r;
}

inline std::vector<u64> poly_gcd(std::vector<u64> a, std::vector<u64> b, u64 p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    // a mod b
    u64 lead_inv = invmod(b.back(), p);
    while (a.size() >= b.size()) {
      u64 c = mulmod(a.back(), lead_inv, p);
      std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j)
        a[shift + j] = submod(a[shift + j], mulmod(c, b[j], p), p);
      poly_trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  poly_trim(a);
  if (!a.empty()) {
    u64 inv = invmod(a.back(), p);
    for (u64& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

// characteristic polynomial of an n x n matrix mod p via Hessenberg form
inline std::vector<u64> charpoly(std::vector<u64> m, std::size_t n, u64 p) {
  auto at = [&](std::size_t i, std::size_t j) -> u64& { return m[i * n + j]; };
  // reduce to upper Hessenberg by similarity transforms
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::size_t pivot = c + 1;
    while (pivot < n && at(pivot, c) == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != c + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(pivot, j), at(c + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(at(i, pivot), at(i, c + 1));
    }
    u64 inv = invmod(at(c + 1, c), p);
    for (std::size_t r = c + 2; r < n; ++r) {
      if (at(r, c) == 0) continue;
      u64 f = mulmod(at(r, c), inv, p);
      for (std::size_t j = 0; j < n; ++j)
        at(r, j) = submod(at(r, j), mulmod(f, at(c + 1, j), p), p);
      for (std::size_t i = 0; i < n; ++i)
        at(i, c + 1) = addmod(at(i, c + 1), mulmod(f, at(i, r), p), p);
    }
  }
  // char polys of leading blocks of the Hessenberg form
  std::vector<std::vector<u64>> ps(n + 1);
  ps[0] = {1};
  for (std::size_t i = 1; i <= n; ++i) {
    // p_i = (x - H[i-1][i-1]) p_{i-1} - sum_m H[i-1-m][i-1] beta p_{i-1-m}
    std::vector<u64> pi(ps[i - 1].size() + 1, 0);
    for (std::size_t t = 0; t < ps[i - 1].size(); ++t) {
      pi[t + 1] = addmod(pi[t + 1], ps[i - 1][t], p);
      pi[t] = submod(pi[t], mulmod(at(i - 1, i - 1), ps[i - 1][t], p), p);
    }
    u64 beta = 1;
    for (std::size_t mdist = 1; mdist < i; ++mdist) {
      beta = mulmod(beta, at(i - mdist, i - mdist - 1), p);
      if (beta == 0) break;
      u64 coef = mulmod(at(i - 1 - mdist, i - 1), beta, p);
      if (coef == 0) continue;
      for (std::size_t t = 0; t < ps[i - 1 - mdist].size(); ++t)
        pi[t] = submod(pi[t], mulmod(coef, ps[i - 1 - mdist][t], p), p);
    }
    ps[i] = std::move(pi);
  }
  return ps[n];
}

// all roots in F_p of a product of distinct linear factors
inline void roots_of_split(std::vector<u64> g, u64 p, std::mt19937_64& rng,
                           std::vector<u64>& out) {
  poly_trim(g);
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    // c0 + c1 x = 0
    out.push_back(mulmod(submod(0, g[0], p), invmod(g[1], p), p));
    return;
  }
  while (true) {
    u64 a = rng() % p;
    // gcd((x+a)^((p-1)/2) - 1, g)
    std::vector<u64> h = poly_powmod({a, 1}, (p - 1) / 2, g, p);
    if (h.empty())
      h = {p - 1};
    else
      h[0] = submod(h[0], 1, p);
    std::vector<u64> d = poly_gcd(h, g, p);
    if (d.size() > 1 && d.size() < g.size()) {
      // g / d
      std::vector<u64> q(g.size() - d.size() + 1, 0);
      std::vector<u64> r = g;
      u64 lead_inv = invmod(d.back(), p);
      for (std::size_t i = q.size(); i-- > 0;) {
        u64 c = mulmod(r[i + d.size() - 1], lead_inv, p);
        q[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < d.size(); ++j)
          r[i + j] = submod(r[i + j], mulmod(c, d[j], p), p);
      }
      roots_of_split(std::move(d), p, rng, out);
      roots_of_split(std::move(q), p, rng, out);
      return;
    }
  }
}

inline std::vector<u64> distinct_eigenvalues(const std::vector<u64>& f, u64 p,
                                             std::mt19937_64& rng) {
  // radical part: gcd(x^p - x, f)
  std::vector<u64> xp = poly_powmod({0, 1}, p, f, p);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = submod(xp[1], 1, p);
  std::vector<u64> g = poly_gcd(xp, f, p);
  std::vector<u64> roots;
  roots_of_split(std::move(g), p, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

struct Subspace {
  // column-echelon basis: basis[v][pivots[v]] == 1, zero at other pivots
  std::vector<std::vector<u64>> basis;
  std::vector<std::size_t> pivots;
};

inline Subspace echelonize(std::vector<std::vector<u64>> vecs, u64 p) {
  Subspace s;
  for (std::vector<u64>& v : vecs) {
    // reduce against existing pivots
    for (std::size_t b = 0; b < s.basis.size(); ++b) {
      u64 c = v[s.pivots[b]];
      if (c == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = submod(v[i], mulmod(c, s.basis[b][i], p), p);
    }
    std::size_t piv = v.size();
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) {
        piv = i;
        break;
      }
    if (piv == v.size()) continue;
    u64 inv = invmod(v[piv], p);
    for (u64& c : v) c = mulmod(c, inv, p);
    // clear this pivot from earlier basis vectors
    for (std::size_t b = 0; b < s.basis.size(); ++b) {
      u64 c = s.basis[b][piv];
      if (c == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        s.basis[b][i] = submod(s.basis[b][i], mulmod(c, v[i], p), p);
    }
    s.basis.push_back(std::move(v));
    s.pivots.push_back(piv);
  }
  return s;
}

}  // namespace dixondetail

// Common eigenvectors of the commuting class-sum multipliers over F_p, by
// sequential eigenspace splitting; then degrees and modular character values
// via the orthogonality normalization.
inline ModularTable modular_character_table(const ClassAlgebra& algebra, u64 p) {
  using namespace dixondetail;
  const std::size_t k = algebra.count();
  const u64 n = algebra.group()->order();
  std::mt19937_64 rng(p * 1000003ull + k);

  std::vector<Subspace> spaces;
  {
    std::vector<std::vector<u64>> id(k, std::vector<u64>(k, 0));
    for (std::size_t i = 0; i < k; ++i) id[i][i] = 1;
    spaces.push_back(echelonize(std::move(id), p));
  }

  auto fully_split = [&]() {
    for (const Subspace& s : spaces)
      if (s.basis.size() > 1) return false;
    return true;
  };

  // Small classes first: the central class sums are permutation matrices
  // with few eigenvalues, so they cut the big space into coarse blocks
  // cheaply before the expensive fine splits run on small blocks.
  std::vector<Index> mult_order;
  for (Index i = 1; i < Index(k); ++i) mult_order.push_back(i);
  std::sort(mult_order.begin(), mult_order.end(), [&](Index a, Index b) {
    if (algebra.classes().sizes[a] != algebra.classes().sizes[b])
      return algebra.classes().sizes[a] < algebra.classes().sizes[b];
    return a < b;
  });

  for (Index mult : mult_order) {
    if (fully_split()) break;
    std::vector<std::uint32_t> araw = algebra.multiplier_matrix(mult);
    // the class-sum multipliers are sparse: row t carries at most h_mult
    // nonzero counts
    std::vector<std::uint32_t> row_ptr(k + 1, 0), cols;
    std::vector<u64> vals;
    for (std::size_t t = 0; t < k; ++t) {
      for (std::size_t j = 0; j < k; ++j) {
        u64 v = araw[t * k + j] % p;
        if (v) {
          cols.push_back(std::uint32_t(j));
          vals.push_back(v);
        }
      }
      row_ptr[t + 1] = std::uint32_t(cols.size());
    }
    auto matvec = [&](const std::vector<u64>& b, std::vector<u64>& w) {
      for (std::size_t t = 0; t < k; ++t) {
        u128 acc = 0;
        for (std::uint32_t idx = row_ptr[t]; idx < row_ptr[t + 1]; ++idx)
          acc += u128(vals[idx]) * b[cols[idx]];
        w[t] = u64(acc % p);
      }
    };

    std::vector<Subspace> next;
    for (Subspace& s : spaces) {
      std::size_t m = s.basis.size();
      if (m == 1) {
        next.push_back(std::move(s));
        continue;
      }
      // restriction of A to the subspace, with a sampled membership check
      // (full correctness is re-verified by exact orthogonality at the end)
      std::vector<u64> r(m * m, 0);
      std::vector<u64> w(k);
      for (std::size_t v = 0; v < m; ++v) {
        matvec(s.basis[v], w);
        for (std::size_t t = 0; t < m; ++t) r[t * m + v] = w[s.pivots[t]];
        for (int probe = 0; probe < 4; ++probe) {
          std::size_t i = rng() % k;
          u64 acc = 0;
          for (std::size_t t = 0; t < m; ++t)
            acc = (acc + r[t * m + v] * s.basis[t][i]) % p;
          if (acc != w[i])
            throw SplittingIncomplete("subspace not invariant under class multiplier");
        }
      }

      std::vector<u64> f = charpoly(r, m, p);
      std::vector<u64> lambdas = distinct_eigenvalues(f, p, rng);
      if (lambdas.size() <= 1) {
        next.push_back(std::move(s));
        continue;
      }
      std::size_t total = 0;
      for (u64 lam : lambdas) {
        // kernel of (r - lam I) in the subspace coordinates
        std::vector<u64> mm(m * m);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            mm[i * m + j] = i == j ? submod(r[i * m + j], lam, p) : r[i * m + j];
        // gaussian elimination to find the null space
        std::vector<std::size_t> pivcol;
        std::size_t row = 0;
        for (std::size_t col = 0; col < m && row < m; ++col) {
          std::size_t pr = row;
          while (pr < m && mm[pr * m + col] == 0) ++pr;
          if (pr == m) continue;
          if (pr != row)
            for (std::size_t j = 0; j < m; ++j) std::swap(mm[pr * m + j], mm[row * m + j]);
          u64 inv = invmod(mm[row * m + col], p);
          for (std::size_t j = 0; j < m; ++j) mm[row * m + j] = mulmod(mm[row * m + j], inv, p);
          for (std::size_t i = 0; i < m; ++i) {
            if (i == row || mm[i * m + col] == 0) continue;
            u64 c = mm[i * m + col];
            for (std::size_t j = 0; j < m; ++j)
              mm[i * m + j] = submod(mm[i * m + j], mulmod(c, mm[row * m + j], p), p);
          }
          pivcol.push_back(col);
          ++row;
        }
        std::vector<std::vector<u64>> ker;
        std::vector<char> is_piv(m, 0);
        for (std::size_t c : pivcol) is_piv[c] = 1;
        for (std::size_t freec = 0; freec < m; ++freec) {
          if (is_piv[freec]) continue;
          std::vector<u64> y(m, 0);
          y[freec] = 1;
          for (std::size_t rr = 0; rr < pivcol.size(); ++rr)
            y[pivcol[rr]] = submod(0, mm[rr * m + freec], p);
          ker.push_back(std::move(y));
        }
        // map kernel vectors back to the ambient space
        std::vector<std::vector<u64>> amb;
        for (const std::vector<u64>& y : ker) {
          std::vector<u64> vec(k, 0);
          for (std::size_t v = 0; v < m; ++v) {
            if (y[v] == 0) continue;
            for (std::size_t i = 0; i < k; ++i)
              vec[i] = (vec[i] + y[v] * s.basis[v][i]) % p;
          }
          amb.push_back(std::move(vec));
        }
        Subspace sub = echelonize(std::move(amb), p);
        total += sub.basis.size();
        next.push_back(std::move(sub));
      }
      if (total != m)
        throw SplittingIncomplete("eigenspace dimensions do not fill the subspace");
    }
    spaces = std::move(next);
  }

  if (!fully_split())
    throw SplittingIncomplete("class algebra did not split to one dimension");

  ModularTable out;
  out.p = p;
  out.k = k;
  out.degrees.resize(k);
  out.values.assign(k * k, 0);
  out.omegas.assign(k * k, 0);

  for (std::size_t chi = 0; chi < k; ++chi) {
    // The one-dimensional common eigenspaces are spanned by the primitive
    // idempotents; normalized at the identity class the eigenvector has
    // components v_j = chi(g_j^{-1}) / chi(1).
    std::vector<u64> v = spaces[chi].basis[0];
    if (v[0] == 0) throw SplittingIncomplete("eigenvector vanishes at the identity class");
    u64 inv0 = invmod(v[0], p);
    for (u64& c : v) c = mulmod(c, inv0, p);
    // omega_j = h_j chi(g_j)/chi(1) = h_j v_{j*}; then
    // d^2 = |G| / sum_j omega_j omega_{j*} / h_j = |G| / sum_j h_j v_j v_{j*}
    u64 c = 0;
    for (std::size_t j = 0; j < k; ++j) {
      u64 term = mulmod(v[j], v[algebra.inverse_class(Index(j))], p);
      c = addmod(c, mulmod(term, algebra.classes().sizes[j] % p, p), p);
    }
    u64 d2 = mulmod(n % p, invmod(c, p), p);
    u64 d = sqrtmod(d2, p);
    if (d > p - d) d = p - d;
    if (d == 0 || 2 * d >= p)
      throw SplittingIncomplete("degree does not lift uniquely");
    out.degrees[chi] = d;
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t jstar = algebra.inverse_class(Index(j));
      out.omegas[chi * k + j] = mulmod(algebra.classes().sizes[j] % p, v[jstar], p);
      out.values[chi * k + j] = mulmod(d, v[jstar], p);
    }
  }
  u64 sum_sq = 0;
  for (u64 d : out.degrees) sum_sq = addmod(sum_sq, mulmod(d, d, p), p);
  if (sum_sq != n % p)
    throw SplittingIncomplete("sum of squared degrees mismatch mod p");
  return out;
}

// ---------------------------------------------------------------------------
// Exact lift.

struct CharacterTable {
  Group group;
  std::shared_ptr<const ClassData> class_data;
  std::size_t k = 0;
  u64 conductor = 1;       // e = exponent(G)
  std::size_t phi = 1;     // phi(e)
  u64 dixon_prime = 0;
  std::vector<u64> degrees;
  std::vector<i64> coeffs;  // k*k*phi, row-major by (chi, cls)

  const i64* entry(std::size_t chi, std::size_t cls) const {
    return coeffs.data() + (chi * k + cls) * phi;
  }
  CyclotomicValue value(std::size_t chi, std::size_t cls) const {
    CyclotomicValue v(conductor);
    std::vector<i64> c(entry(chi, cls), entry(chi, cls) + phi);
    v.assign_reduced(std::move(c));
    return v;
  }
  bool entry_is_zero(std::size_t chi, std::size_t cls) const {
    const i64* e = entry(chi, cls);
    for (std::size_t i = 0; i < phi; ++i)
      if (e[i] != 0) return false;
    return true;
  }
};

inline CharacterTable lift_to_cyclotomic(const ModularTable& mt,
                                         const ClassAlgebra& algebra, u64 p,
                                         u64 e) {
  const std::size_t k = mt.k;
  const ClassData& cd = algebra.classes();
  CharacterTable tab;
  tab.group = algebra.group();
  tab.class_data = algebra.classes_ptr();
  tab.k = k;
  tab.conductor = e;
  tab.phi = euler_phi(e);
  tab.dixon_prime = p;
  tab.degrees = mt.degrees;
  tab.coeffs.assign(k * k * tab.phi, 0);

  // deterministic primitive e-th root: smallest primitive root of p, raised
  // to (p-1)/e
  u64 g0 = smallest_primitive_root(p);
  u64 omega = powmod(g0, (p - 1) / e, p);
  std::vector<u64> om_pow(e);
  om_pow[0] = 1;
  for (u64 t = 1; t < e; ++t) om_pow[t] = mulmod(om_pow[t - 1], omega, p);
  u64 inv_e = invmod(e % p, p);

  const std::vector<i64>& phi_poly = cyclotomic_polynomial(e);
  const std::size_t deg_phi = phi_poly.size() - 1;

  std::vector<u64> theta_pow(e);
  std::vector<i64> mults(e);
  std::vector<i64> reduced(e, 0);
  for (std::size_t chi = 0; chi < k; ++chi) {
    u64 d = mt.degrees[chi];
    for (std::size_t cls = 0; cls < k; ++cls) {
      for (u64 j = 0; j < e; ++j)
        theta_pow[j] = mt.values[chi * k + cd.power_class(cls, j)];
      i64 total = 0;
      for (u64 t = 0; t < e; ++t) {
        u128 acc = 0;
        u64 idx = 0;  // (e - j*t) mod e, stepped without division
        for (u64 j = 0; j < e; ++j) {
          acc += u128(theta_pow[j]) * om_pow[idx == 0 ? 0 : e - idx];
          idx += t;
          if (idx >= e) idx -= e;
        }
        u64 m = mulmod(u64(acc % p), inv_e, p);
        if (m > d)
          throw LiftInconsistent("root multiplicity exceeds the degree");
        mults[t] = i64(m);
        total += i64(m);
      }
      if (total != i64(d))
        throw LiftInconsistent("root multiplicities do not sum to the degree");
      // reduce sum m_t zeta^t modulo Phi_e
      std::fill(reduced.begin(), reduced.end(), 0);
      for (u64 t = 0; t < e; ++t) reduced[t] = mults[t];
      for (std::size_t i = e; i-- > deg_phi;) {
        i64 c = reduced[i];
        if (c == 0) continue;
        reduced[i] = 0;
        for (std::size_t j = 0; j < deg_phi; ++j)
          reduced[i - deg_phi + j] -= c * phi_poly[j];
      }
      i64* dst = tab.coeffs.data() + (chi * k + cls) * tab.phi;
      for (std::size_t i = 0; i < deg_phi; ++i) dst[i] = reduced[i];
    }
    const i64* id_col = tab.entry(chi, 0);
    bool id_ok = id_col[0] == i64(d);
    for (std::size_t i = 1; i < deg_phi && id_ok; ++i) id_ok = id_col[i] == 0;
    if (!id_ok)
      throw LiftInconsistent("identity column does not lift to the degree");
  }

  // canonical order: by degree, then lexicographically by coefficient rows
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (tab.degrees[a] != tab.degrees[b]) return tab.degrees[a] < tab.degrees[b];
    const i64* ra = tab.coeffs.data() + a * k * tab.phi;
    const i64* rb = tab.coeffs.data() + b * k * tab.phi;
    return std::lexicographical_compare(ra, ra + k * tab.phi, rb, rb + k * tab.phi);
  });
  CharacterTable sorted = tab;
  for (std::size_t i = 0; i < k; ++i) {
    sorted.degrees[i] = tab.degrees[perm[i]];
    std::copy(tab.coeffs.begin() + perm[i] * k * tab.phi,
              tab.coeffs.begin() + (perm[i] + 1) * k * tab.phi,
              sorted.coeffs.begin() + i * k * tab.phi);
  }
  return sorted;
}

// ---------------------------------------------------------------------------
// Exact orthogonality verification.

namespace orthodetail {

// multiply two coefficient slices (length phi) into acc (length 2*phi)
inline void mul_acc(const i64* a, const i64* b, std::size_t phi, i64* acc) {
  for (std::size_t i = 0; i < phi; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < phi; ++j) {
      if (b[j] == 0) continue;
      acc[i + j] += a[i] * b[j];
    }
  }
}

inline void reduce_into(std::vector<i64>& buf, u64 e, std::size_t phi) {
  const std::vector<i64>& f = cyclotomic_polynomial(e);
  for (std::size_t i = buf.size(); i-- > phi;) {
    i64 c = buf[i];
    if (c == 0) continue;
    buf[i] = 0;
    for (std::size_t j = 0; j < phi; ++j) buf[i - phi + j] -= c * f[j];
  }
}

// conjugate slice: sigma_{e-1}
inline std::vector<i64> conj_slice(const i64* a, u64 e, std::size_t phi) {
  if (e <= 2) return std::vector<i64>(a, a + phi);
  std::vector<i64> poly(e, 0);
  for (std::size_t i = 0; i < phi; ++i) {
    if (a[i] == 0) continue;
    poly[(i * (e - 1)) % e] += a[i];
  }
  reduce_into(poly, e, phi);
  poly.resize(phi);
  return poly;
}

// worst-case conditioning of coefficient recovery from the primitive-root
// evaluations, with a generous safety factor
inline long double coefficient_condition(u64 e) {
  std::size_t phi = euler_phi(e);
  std::vector<u64> units;
  if (e == 1) {
    units.push_back(0);
  } else {
    for (u64 u = 1; u < e; ++u)
      if (std::gcd(u, e) == 1) units.push_back(u);
  }
  using C = std::complex<long double>;
  std::vector<C> m(phi * phi);
  const long double pi = 3.14159265358979323846264338327950288L;
  for (std::size_t r = 0; r < phi; ++r)
    for (std::size_t c = 0; c < phi; ++c)
      m[r * phi + c] =
          std::polar<long double>(1.0L, 2.0L * pi * (long double)(units[r] * c % e) / (long double)e);
  // invert by Gauss-Jordan
  std::vector<C> inv(phi * phi, C(0));
  for (std::size_t i = 0; i < phi; ++i) inv[i * phi + i] = 1;
  for (std::size_t col = 0; col < phi; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col; r < phi; ++r)
      if (std::abs(m[r * phi + col]) > std::abs(m[piv * phi + col])) piv = r;
    for (std::size_t j = 0; j < phi; ++j) {
      std::swap(m[piv * phi + j], m[col * phi + j]);
      std::swap(inv[piv * phi + j], inv[col * phi + j]);
    }
    C d = m[col * phi + col];
    for (std::size_t j = 0; j < phi; ++j) {
      m[col * phi + j] /= d;
      inv[col * phi + j] /= d;
    }
    for (std::size_t r = 0; r < phi; ++r) {
      if (r == col) continue;
      C f = m[r * phi + col];
      if (std::abs(f) == 0.0L) continue;
      for (std::size_t j = 0; j < phi; ++j) {
        m[r * phi + j] -= f * m[col * phi + j];
        inv[r * phi + j] -= f * inv[col * phi + j];
      }
    }
  }
  long double worst = 0;
  for (std::size_t r = 0; r < phi; ++r) {
    long double s = 0;
    for (std::size_t c = 0; c < phi; ++c) s += std::abs(inv[r * phi + c]);
    if (s > worst) worst = s;
  }
  return worst * 8.0L;
}

}  // namespace orthodetail

// Exact first and second orthogonality. Small tables are checked directly in
// cyclotomic arithmetic. For large tables the pairwise (row) products are
// certified through modular evaluation at a primitive e-th root: the row set
// is verified to be closed under every Galois map, the exact row norms give
// the Cauchy-Schwarz bound |sigma(V)| <= |G| on every embedding of each
// pairwise sum V, and evaluating all row pairs at one root then covers all
// conjugate evaluations of each V. Coefficients below the bound that vanish
// at every conjugate evaluation modulo the certification primes are exactly
// zero.
inline bool verify_orthogonality(const CharacterTable& tab) {
  const std::size_t k = tab.k;
  const u64 e = tab.conductor;
  const std::size_t phi = tab.phi;
  const ClassData& cd = *tab.class_data;
  const u64 n = tab.group->order();

  // identity column and degree sum
  u64 sum_sq = 0;
  for (std::size_t chi = 0; chi < k; ++chi) {
    const i64* id = tab.entry(chi, 0);
    if (id[0] != i64(tab.degrees[chi])) return false;
    for (std::size_t i = 1; i < phi; ++i)
      if (id[i] != 0) return false;
    sum_sq += tab.degrees[chi] * tab.degrees[chi];
  }
  if (sum_sq != n) return false;

  // conjugate slices once
  std::vector<i64> conj_coeffs(k * k * phi);
  for (std::size_t chi = 0; chi < k; ++chi)
    for (std::size_t cls = 0; cls < k; ++cls) {
      std::vector<i64> c = orthodetail::conj_slice(tab.entry(chi, cls), e, phi);
      std::copy(c.begin(), c.end(), conj_coeffs.begin() + (chi * k + cls) * phi);
    }
  auto conj_entry = [&](std::size_t chi, std::size_t cls) {
    return conj_coeffs.data() + (chi * k + cls) * phi;
  };

  std::vector<i64> acc(2 * phi);
  auto expect_integer = [&](std::vector<i64>& buf, i64 want) {
    orthodetail::reduce_into(buf, e, phi);
    if (buf[0] != want) return false;
    for (std::size_t i = 1; i < phi; ++i)
      if (buf[i] != 0) return false;
    return true;
  };

  // exact row norms: sum_j h_j chi_j conj(chi_j) = |G|
  for (std::size_t chi = 0; chi < k; ++chi) {
    std::fill(acc.begin(), acc.end(), 0);
    std::vector<i64> weighted(phi);
    for (std::size_t j = 0; j < k; ++j) {
      const i64* a = tab.entry(chi, j);
      const i64* b = conj_entry(chi, j);
      for (std::size_t i = 0; i < phi; ++i) weighted[i] = b[i] * i64(cd.sizes[j]);
      orthodetail::mul_acc(a, weighted.data(), phi, acc.data());
    }
    if (!expect_integer(acc, i64(n))) return false;
  }

  // exact column norms: sum_chi |chi(g)|^2 = |C_G(g)| = |G| / h_j
  for (std::size_t cls = 0; cls < k; ++cls) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t chi = 0; chi < k; ++chi)
      orthodetail::mul_acc(tab.entry(chi, cls), conj_entry(chi, cls), phi,
                           acc.data());
    if (!expect_integer(acc, i64(n / cd.sizes[cls]))) return false;
  }

  constexpr std::size_t kDirectLimit = 180;
  if (k <= kDirectLimit) {
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        std::fill(acc.begin(), acc.end(), 0);
        std::vector<i64> weighted(phi);
        for (std::size_t j = 0; j < k; ++j) {
          const i64* x = tab.entry(a, j);
          const i64* y = conj_entry(b, j);
          for (std::size_t i = 0; i < phi; ++i) weighted[i] = y[i] * i64(cd.sizes[j]);
          orthodetail::mul_acc(x, weighted.data(), phi, acc.data());
        }
        if (!expect_integer(acc, 0)) return false;
      }
    return true;
  }

  // ---- certified modular path for large tables ----
  // 1. the row set must be closed under every Galois automorphism
  {
    std::map<std::vector<i64>, std::size_t> row_index;
    for (std::size_t chi = 0; chi < k; ++chi) {
      std::vector<i64> key(tab.coeffs.begin() + chi * k * phi,
                           tab.coeffs.begin() + (chi + 1) * k * phi);
      row_index.emplace(std::move(key), chi);
    }
    for (u64 u = 2; u < e; ++u) {
      if (std::gcd(u, e) != 1) continue;
      for (std::size_t chi = 0; chi < k; ++chi) {
        std::vector<i64> mapped(k * phi);
        for (std::size_t cls = 0; cls < k; ++cls) {
          std::vector<i64> poly(e, 0);
          const i64* src = tab.entry(chi, cls);
          for (std::size_t i = 0; i < phi; ++i) {
            if (src[i] == 0) continue;
            poly[(i * u) % e] += src[i];
          }
          orthodetail::reduce_into(poly, e, phi);
          std::copy(poly.begin(), poly.begin() + phi, mapped.begin() + cls * phi);
        }
        if (!row_index.count(mapped)) return false;
      }
    }
  }

  // 2. coefficient bound via Cauchy-Schwarz and the evaluation conditioning
  long double bound = orthodetail::coefficient_condition(e) * (long double)n;
  // 3. certification primes q = 1 (mod e), descending from 2^62
  std::vector<u64> qs;
  {
    long double prod = 1.0L;
    u64 start = ((u64(1) << 62) / e) * e + 1;
    for (u64 q = start; prod <= 2.0L * bound; q -= e) {
      if (!is_prime_u64(q)) continue;
      qs.push_back(q);
      prod *= (long double)q;
    }
  }
  for (u64 q : qs) {
    u64 omega = element_of_order(e, q);
    u64 omega_inv = invmod(omega, q);
    std::vector<u64> w(k * k), wc(k * k);
    for (std::size_t chi = 0; chi < k; ++chi)
      for (std::size_t cls = 0; cls < k; ++cls) {
        const i64* src = tab.entry(chi, cls);
        u64 acc_w = 0, pw = 1;
        for (std::size_t i = 0; i < phi; ++i) {
          if (src[i] != 0) {
            u64 cm = src[i] >= 0 ? u64(src[i]) % q : q - (u64(-src[i]) % q);
            acc_w = addmod(acc_w, mulmod(cm, pw, q), q);
          }
          pw = mulmod(pw, omega, q);
        }
        w[chi * k + cls] = acc_w;
        u64 acc_c = 0;
        pw = 1;
        for (std::size_t i = 0; i < phi; ++i) {
          if (src[i] != 0) {
            u64 cm = src[i] >= 0 ? u64(src[i]) % q : q - (u64(-src[i]) % q);
            acc_c = addmod(acc_c, mulmod(cm, pw, q), q);
          }
          pw = mulmod(pw, omega_inv, q);
        }
        wc[chi * k + cls] = acc_c;
      }
    // fold class sizes into the conjugate side
    for (std::size_t chi = 0; chi < k; ++chi)
      for (std::size_t cls = 0; cls < k; ++cls)
        wc[chi * k + cls] = mulmod(wc[chi * k + cls], cd.sizes[cls] % q, q);
    // both evaluation directions per pair so the Galois-conjugate coverage
    // includes every primitive root
    for (std::size_t a = 0; a < k; ++a) {
      const u64* wa = w.data() + a * k;
      const u64* ca = wc.data() + a * k;
      for (std::size_t b = a + 1; b < k; ++b) {
        const u64* wb = w.data() + b * k;
        const u64* cb = wc.data() + b * k;
        u64 s1 = 0, s2 = 0;
        for (std::size_t j = 0; j < k; ++j) {
          if (wa[j] != 0 && cb[j] != 0) s1 = addmod(s1, mulmod(wa[j], cb[j], q), q);
          if (ca[j] != 0 && wb[j] != 0) s2 = addmod(s2, mulmod(ca[j], wb[j], q), q);
        }
        if (s1 != 0 || s2 != 0) return false;
      }
    }
  }
  return true;
}

// Full pipeline. The returned table always passes verify_orthogonality.
inline CharacterTable character_table(Group G, u64 prime_override = 0) {
  auto cd = std::make_shared<ClassData>(conjugacy_classes(G));
  ClassAlgebra algebra(G, cd);
  u64 e = cd->exponent;
  u64 p = prime_override ? prime_override : choose_dixon_prime(G->order(), e);
  ModularTable mt = modular_character_table(algebra, p);
  CharacterTable tab = lift_to_cyclotomic(mt, algebra, p, e);
  if (!verify_orthogonality(tab))
    throw GroupError("character table failed orthogonality verification");
  return tab;
}

}  // namespace vanish
