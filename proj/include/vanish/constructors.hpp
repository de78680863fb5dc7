#pragma once

// Builders for every group family used here: cyclic/homocyclic/dihedral
// bases, the order-p^3 extraspecial groups, semidirect products with the
// maximal-kernel action pattern, SL(2,3), A5, and the normalizer of a Sylow
// 2-subgroup of Suz(8) via F8 arithmetic.

#include <algorithm>
#include <array>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "vanish/group.hpp"
#include "vanish/structure.hpp"

namespace vanish {

// ---------------------------------------------------------------------------
// Direct products.

class ProductDomain final : public Domain {
 public:
  ProductDomain(Group a, Group b) : a_(std::move(a)), b_(std::move(b)) {}

  ElemCode encode(Index ai, Index bi) const { return ElemCode(ai) * b_->order() + bi; }
  Index left(ElemCode c) const { return Index(c / b_->order()); }
  Index right(ElemCode c) const { return Index(c % b_->order()); }

  ElemCode identity() const override { return 0; }
  ElemCode mul(ElemCode x, ElemCode y) const override {
    return encode(a_->product(left(x), left(y)), b_->product(right(x), right(y)));
  }
  ElemCode inv(ElemCode x) const override {
    return encode(a_->inverse(left(x)), b_->inverse(right(x)));
  }
  bool valid(ElemCode x) const override { return x < code_space(); }
  u64 code_space() const override { return u64(a_->order()) * b_->order(); }
  std::string backing() const override { return "pairs"; }

  const Group& left_group() const { return a_; }
  const Group& right_group() const { return b_; }

 private:
  Group a_, b_;
};

inline Group direct_product(Group a, Group b) {
  auto dom = std::make_shared<ProductDomain>(a, b);
  std::vector<ElemCode> gens;
  for (Index g : a->generators()) gens.push_back(dom->encode(g, 0));
  for (Index g : b->generators()) gens.push_back(dom->encode(0, g));
  return FiniteGroup::enumerate(dom, gens, dom->code_space());
}

// ---------------------------------------------------------------------------
// Abelian module acted on by a finite group: the generic semidirect product.
// Convention, fixed project-wide: (n1,h1)(n2,h2) = (n1 + h1.n2, h1 h2) with
// the action a homomorphism P -> Aut(module) applied on the left.

struct ModuleFactor {
  u64 modulus = 0;
  unsigned rank = 1;
};

struct ModuleSpec {
  std::vector<ModuleFactor> factors;

  u64 total_order() const {
    u64 t = 1;
    for (const ModuleFactor& f : factors)
      for (unsigned i = 0; i < f.rank; ++i) t *= f.modulus;
    return t;
  }
  unsigned dimension() const {
    unsigned d = 0;
    for (const ModuleFactor& f : factors) d += f.rank;
    return d;
  }
  std::vector<u64> flat_moduli() const {
    std::vector<u64> m;
    for (const ModuleFactor& f : factors)
      for (unsigned i = 0; i < f.rank; ++i) m.push_back(f.modulus);
    return m;
  }
  bool operator==(const ModuleSpec& o) const {
    if (factors.size() != o.factors.size()) return false;
    for (std::size_t i = 0; i < factors.size(); ++i)
      if (factors[i].modulus != o.factors[i].modulus ||
          factors[i].rank != o.factors[i].rank)
        return false;
    return true;
  }
};

// Block-diagonal matrices, one block per module factor, entries mod the
// factor modulus. "MaximalKernels" is the construction pattern where factor i
// is acted on through P/M_i with M_i the i-th maximal subgroup of P.
struct ActionSpec {
  enum Kind { MaximalKernels, ExplicitMatrices } kind = MaximalKernels;
  // for ExplicitMatrices: per P-generator, per factor, a row-major r x r block
  std::vector<std::vector<std::vector<u64>>> generator_blocks;

  bool operator==(const ActionSpec& o) const {
    return kind == o.kind && generator_blocks == o.generator_blocks;
  }
};

class SdpDomain final : public Domain {
 public:
  SdpDomain(ModuleSpec module, Group actor,
            std::vector<std::vector<u64>> element_matrices)
      : spec_(std::move(module)), actor_(std::move(actor)),
        mats_(std::move(element_matrices)) {
    moduli_ = spec_.flat_moduli();
    module_space_ = 1;
    for (u64 m : moduli_) module_space_ *= m;
    unsigned off = 0;
    for (const ModuleFactor& f : spec_.factors) {
      blocks_.push_back({off, f.rank, f.modulus});
      off += f.rank;
    }
  }

  const ModuleSpec& module_spec() const { return spec_; }
  const Group& actor() const { return actor_; }
  u64 module_space() const { return module_space_; }
  const std::vector<std::vector<u64>>& matrices() const { return mats_; }

  ElemCode encode(const std::vector<u64>& residues, Index actor_idx) const {
    ElemCode c = 0;
    for (std::size_t i = moduli_.size(); i-- > 0;)
      c = c * moduli_[i] + residues[i] % moduli_[i];
    return ElemCode(actor_idx) * module_space_ + c;
  }
  std::vector<u64> module_part(ElemCode c) const {
    std::vector<u64> r(moduli_.size());
    c %= module_space_;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      r[i] = c % moduli_[i];
      c /= moduli_[i];
    }
    return r;
  }
  Index actor_part(ElemCode c) const { return Index(c / module_space_); }

  // n -> M_a . n  for actor element a
  std::vector<u64> apply(Index a, const std::vector<u64>& n) const {
    std::vector<u64> out(n.size(), 0);
    const std::vector<u64>& M = mats_[a];
    std::size_t mat_off = 0;
    for (const Block& b : blocks_) {
      for (unsigned i = 0; i < b.rank; ++i) {
        u64 acc = 0;
        for (unsigned j = 0; j < b.rank; ++j)
          acc += M[mat_off + i * b.rank + j] * n[b.offset + j];
        out[b.offset + i] = acc % b.modulus;
      }
      mat_off += std::size_t(b.rank) * b.rank;
    }
    return out;
  }

  ElemCode identity() const override {
    return ElemCode(0) * module_space_ + 0;
  }
  ElemCode mul(ElemCode x, ElemCode y) const override {
    Index ax = actor_part(x), ay = actor_part(y);
    std::vector<u64> nx = module_part(x), ny = module_part(y);
    std::vector<u64> moved = apply(ax, ny);
    for (std::size_t i = 0; i < nx.size(); ++i) {
      nx[i] += moved[i];
      if (nx[i] >= moduli_[i]) nx[i] -= moduli_[i];
    }
    return encode(nx, actor_->product(ax, ay));
  }
  ElemCode inv(ElemCode x) const override {
    Index ai = actor_->inverse(actor_part(x));
    std::vector<u64> n = module_part(x);
    std::vector<u64> moved = apply(ai, n);
    for (std::size_t i = 0; i < moved.size(); ++i)
      moved[i] = moved[i] == 0 ? 0 : moduli_[i] - moved[i];
    return encode(moved, ai);
  }
  bool valid(ElemCode x) const override { return x < code_space(); }
  u64 code_space() const override { return module_space_ * actor_->order(); }
  std::string backing() const override { return "pairs"; }

 private:
  struct Block {
    unsigned offset;
    unsigned rank;
    u64 modulus;
  };
  ModuleSpec spec_;
  Group actor_;
  std::vector<std::vector<u64>> mats_;  // per actor element, concatenated blocks
  std::vector<u64> moduli_;
  std::vector<Block> blocks_;
  u64 module_space_ = 1;
};

// ---------------------------------------------------------------------------
// Base families.

enum class Family {
  Cyclic,
  ElementaryAbelian,
  Homocyclic,
  Dihedral,
  Quaternion8,
  Extraspecial,  // params: p, sign (+1/-1)
  SL23,
  Sz8Borel,
  Alt5,
};

namespace detail {

inline Group perm_group(unsigned degree,
                        const std::vector<std::vector<unsigned>>& gen_images,
                        std::size_t bound) {
  auto dom = std::make_shared<PermDomain>(degree);
  std::vector<ElemCode> gens;
  for (const auto& img : gen_images) gens.push_back(dom->encode(img));
  return FiniteGroup::enumerate(dom, gens, bound);
}

inline Group abelian_group(std::vector<u64> moduli, std::size_t bound) {
  auto dom = std::make_shared<AbelianDomain>(std::move(moduli));
  std::vector<ElemCode> gens;
  const auto& m = dom->moduli();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 1) continue;
    std::vector<u64> r(m.size(), 0);
    r[i] = 1;
    gens.push_back(dom->encode(r));
  }
  return FiniteGroup::enumerate(dom, gens, bound);
}

}  // namespace detail

struct SemidirectProduct {
  Group group;
  Homomorphism projection;        // onto the acting group
  Homomorphism module_embedding;  // from the module viewed as a group
  Subgroup module_subgroup;
  std::vector<Subgroup> actor_maximals;  // maximal-kernel pattern only
};

// Maximal (index-p) subgroups of a p-group, via the Frattini quotient,
// ordered by sorted member-index sets.
inline std::vector<Subgroup> maximal_subgroups_of_p_group(Group P, u64 p) {
  // Frattini subgroup of a p-group: P' P^p
  Subgroup derived = derived_subgroup(P);
  std::vector<Index> frat_gens = derived.generators;
  for (Index x = 0; x < Index(P->order()); ++x) {
    Index xp = P->power(x, p);
    if (xp != 0) frat_gens.push_back(xp);
  }
  Subgroup frattini = make_subgroup(P, std::move(frat_gens));
  auto [Q, h] = quotient(P, frattini);

  // basis of the elementary abelian quotient
  std::vector<Index> basis;
  {
    Subgroup span = trivial_subgroup(Q);
    for (Index x = 1; x < Index(Q->order()); ++x) {
      if (span.contains(x)) continue;
      std::vector<Index> g = span.generators;
      g.push_back(x);
      span = make_subgroup(Q, std::move(g));
      basis.push_back(x);
    }
  }
  unsigned r = unsigned(basis.size());
  // coordinates of each element of Q in that basis
  std::vector<std::vector<u64>> coord_of(Q->order());
  {
    std::vector<u64> exps(r, 0);
    for (u64 count = 0;; ++count) {
      Index e = 0;
      for (unsigned i = 0; i < r; ++i) e = Q->product(e, Q->power(basis[i], exps[i]));
      coord_of[e] = exps;
      unsigned i = 0;
      while (i < r && ++exps[i] == p) exps[i++] = 0;
      if (i == r) break;
    }
  }
  // hyperplanes = kernels of the nonzero functionals, one per scalar class
  std::vector<Subgroup> maximals;
  std::vector<u64> alpha(r, 0);
  for (u64 count = 0;; ++count) {
    unsigned i = 0;
    while (i < r && ++alpha[i] == p) alpha[i++] = 0;
    if (i == r) break;
    unsigned lead = r;
    for (unsigned j = r; j-- > 0;)
      if (alpha[j] != 0) lead = j;
    if (alpha[lead] != 1) continue;  // canonical representative per line
    std::vector<Index> members;
    for (Index x = 0; x < Index(P->order()); ++x) {
      const std::vector<u64>& co = coord_of[h.image_of[x]];
      u64 dot = 0;
      for (unsigned j = 0; j < r; ++j) dot += alpha[j] * co[j];
      if (dot % p == 0) members.push_back(x);
    }
    maximals.push_back(subgroup_from_members(P, std::move(members)));
  }
  std::sort(maximals.begin(), maximals.end(),
            [](const Subgroup& a, const Subgroup& b) { return a.members < b.members; });
  return maximals;
}

// Canonical fixed-point-free order-p generator on one module factor: for a
// cyclic factor C_m, multiplication by the least integer of multiplicative
// order p mod m; for a rank-r factor over a prime, the companion matrix of
// the lexicographically least degree-r factor of x^p - 1.
inline std::vector<u64> canonical_factor_generator(const ModuleFactor& f, u64 p) {
  if (f.rank == 1) {
    for (u64 u = 2; u < f.modulus; ++u) {
      if (std::gcd(u, f.modulus) != 1) continue;
      u64 pw = u % f.modulus;
      u64 ord = 1;
      while (pw != 1) {
        pw = pw * u % f.modulus;
        ++ord;
        if (ord > p) break;
      }
      if (ord == p) return {u};
    }
    throw BadParams("no order-" + std::to_string(p) + " unit mod " +
                    std::to_string(f.modulus));
  }
  // rank >= 2: factor x^p - 1 over F_modulus (modulus must be prime here):
  // scan monic degree-r polynomials in lexicographic coefficient order and
  // take the first that divides x^p - 1 and has no root 1.
  u64 q = f.modulus;
  unsigned r = f.rank;
  std::vector<u64> coeffs(r, 0);  // c0..c_{r-1}, poly = x^r + sum c_i x^i
  auto divides_xp_minus_1 = [&](const std::vector<u64>& c) {
    // compute x^p mod f by repeated squaring over F_q
    std::vector<u64> base(r, 0), result(r, 0);
    if (r > 1) base[1] = 1; else base[0] = 1 % q;
    result[0] = 1 % q;
    auto mulmodf = [&](const std::vector<u64>& a, const std::vector<u64>& b) {
      std::vector<u64> t(2 * r, 0);
      for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < r; ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % q;
      for (unsigned i = 2 * r; i-- > r;) {
        u64 lead = t[i];
        if (lead == 0) continue;
        t[i] = 0;
        for (unsigned j = 0; j < r; ++j)
          t[i - r + j] = (t[i - r + j] + (q - c[j] % q) * lead) % q;
      }
      t.resize(r);
      return t;
    };
    u64 e = p;
    while (e) {
      if (e & 1) result = mulmodf(result, base);
      base = mulmodf(base, base);
      e >>= 1;
    }
    // x^p == 1 mod f  <=>  f | x^p - 1
    if (result[0] != 1 % q) return false;
    for (unsigned i = 1; i < r; ++i)
      if (result[i] != 0) return false;
    return true;
  };
  while (true) {
    u64 at1 = 1;  // f(1) = 1 + sum c_i
    for (unsigned i = 0; i < r; ++i) at1 += coeffs[i];
    if (at1 % q != 0 && divides_xp_minus_1(coeffs)) {
      // companion matrix, row-major: shifts basis, last column = -c
      std::vector<u64> M(std::size_t(r) * r, 0);
      for (unsigned i = 0; i + 1 < r; ++i) M[std::size_t(i + 1) * r + i] = 1;
      for (unsigned i = 0; i < r; ++i)
        M[std::size_t(i) * r + (r - 1)] = (q - coeffs[i] % q) % q;
      return M;
    }
    unsigned i = 0;
    while (i < r && ++coeffs[i] == q) coeffs[i++] = 0;
    if (i == r) throw BadParams("no fixed-point-free degree-" + std::to_string(r) +
                                " factor of x^p-1 mod " + std::to_string(q));
  }
}

inline SemidirectProduct semidirect_product(
    const ModuleSpec& module, Group P, const ActionSpec& action,
    std::size_t bound = kDefaultEnumerationBound) {
  u64 total = module.total_order() * P->order();
  if (total > bound)
    throw BoundExceeded("semidirect order " + std::to_string(total) +
                        " exceeds bound");
  unsigned nfac = unsigned(module.factors.size());
  std::size_t mat_len = 0;
  for (const ModuleFactor& f : module.factors) mat_len += std::size_t(f.rank) * f.rank;

  std::vector<std::vector<u64>> mats(P->order());
  std::vector<Subgroup> maximals;

  auto block_matmul = [&](const std::vector<u64>& A, const std::vector<u64>& B) {
    std::vector<u64> C(mat_len, 0);
    std::size_t off = 0;
    for (const ModuleFactor& f : module.factors) {
      unsigned r = f.rank;
      for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < r; ++j) {
          u64 acc = 0;
          for (unsigned l = 0; l < r; ++l)
            acc += A[off + i * r + l] * B[off + l * r + j] % f.modulus;
          C[off + i * r + j] = acc % f.modulus;
        }
      off += std::size_t(r) * r;
    }
    return C;
  };
  auto identity_mat = [&]() {
    std::vector<u64> I(mat_len, 0);
    std::size_t off = 0;
    for (const ModuleFactor& f : module.factors) {
      for (unsigned i = 0; i < f.rank; ++i) I[off + std::size_t(i) * f.rank + i] = 1;
      off += std::size_t(f.rank) * f.rank;
    }
    return I;
  };

  if (action.kind == ActionSpec::MaximalKernels) {
    std::vector<u64> primes = prime_factors(P->order());
    if (primes.size() != 1)
      throw BadParams("maximal-kernel action needs a p-group actor");
    u64 p = primes[0];
    maximals = maximal_subgroups_of_p_group(P, p);
    if (maximals.size() != nfac)
      throw FactorCountMismatch("actor has " + std::to_string(maximals.size()) +
                                " maximal subgroups but module has " +
                                std::to_string(nfac) + " factors");
    // factor i is acted on through P/M_i: x acts as C_i^j where x lies in
    // g_i^j M_i and g_i is the least element outside M_i
    std::vector<std::vector<u64>> gen_block(nfac);
    std::vector<std::vector<unsigned>> coset_exp(nfac,
                                                 std::vector<unsigned>(P->order()));
    for (unsigned i = 0; i < nfac; ++i) {
      gen_block[i] = canonical_factor_generator(module.factors[i], p);
      Index gi = kNoIndex;
      for (Index x = 0; x < Index(P->order()); ++x)
        if (!maximals[i].contains(x)) {
          gi = x;
          break;
        }
      Index coset_rep = 0;
      for (unsigned j = 0; j < unsigned(p); ++j) {
        for (Index m : maximals[i].members)
          coset_exp[i][P->product(coset_rep, m)] = j;
        coset_rep = P->product(coset_rep, gi);
      }
    }
    for (Index x = 0; x < Index(P->order()); ++x) {
      std::vector<u64> M(mat_len, 0);
      std::size_t off = 0;
      for (unsigned i = 0; i < nfac; ++i) {
        unsigned r = module.factors[i].rank;
        std::vector<u64> block(std::size_t(r) * r, 0);
        for (unsigned d = 0; d < r; ++d) block[std::size_t(d) * r + d] = 1;
        for (unsigned rep = 0; rep < coset_exp[i][x]; ++rep) {
          // block *= gen_block[i] (single factor multiply)
          std::vector<u64> nb(std::size_t(r) * r, 0);
          for (unsigned a = 0; a < r; ++a)
            for (unsigned b = 0; b < r; ++b) {
              u64 acc = 0;
              for (unsigned l = 0; l < r; ++l)
                acc += block[a * r + l] * gen_block[i][l * r + b] %
                       module.factors[i].modulus;
              nb[a * r + b] = acc % module.factors[i].modulus;
            }
          block = std::move(nb);
        }
        std::copy(block.begin(), block.end(), M.begin() + off);
        off += std::size_t(r) * r;
      }
      mats[x] = std::move(M);
    }
  } else {
    if (action.generator_blocks.size() != P->generators().size())
      throw BadParams("explicit action needs one block list per actor generator");
    std::vector<std::vector<u64>> gen_mats(P->generators().size());
    for (std::size_t g = 0; g < gen_mats.size(); ++g) {
      if (action.generator_blocks[g].size() != nfac)
        throw FactorCountMismatch("explicit action: generator " + std::to_string(g) +
                                  " has wrong factor count");
      std::vector<u64> M(mat_len, 0);
      std::size_t off = 0;
      for (unsigned i = 0; i < nfac; ++i) {
        unsigned r = module.factors[i].rank;
        const std::vector<u64>& blk = action.generator_blocks[g][i];
        if (blk.size() != std::size_t(r) * r)
          throw BadParams("explicit action: block shape mismatch");
        for (std::size_t t = 0; t < blk.size(); ++t)
          M[off + t] = blk[t] % module.factors[i].modulus;
        off += std::size_t(r) * r;
      }
      gen_mats[g] = std::move(M);
    }
    // assign matrices to all actor elements by BFS over the Cayley graph
    std::vector<char> have(P->order(), 0);
    mats[0] = identity_mat();
    have[0] = 1;
    std::vector<Index> order{0};
    for (std::size_t head = 0; head < order.size(); ++head) {
      Index x = order[head];
      for (std::size_t g = 0; g < P->generators().size(); ++g) {
        Index y = P->product(x, P->generators()[g]);
        if (!have[y]) {
          have[y] = 1;
          mats[y] = block_matmul(mats[x], gen_mats[g]);
          order.push_back(y);
        }
      }
    }
    for (Index x = 0; x < Index(P->order()); ++x)
      if (!have[x]) throw BadParams("actor generators do not generate the actor");
  }

  // direct multiplication check that the assignment is a homomorphism
  for (Index x = 0; x < Index(P->order()); ++x) {
    for (Index g : P->generators()) {
      std::vector<u64> lhs = mats[P->product(x, g)];
      std::vector<u64> rhs = block_matmul(mats[x], mats[g]);
      if (lhs != rhs)
        throw ActionNotHomomorphism("action matrices violate a generator relation");
    }
  }
  // invertibility comes with the homomorphism property (inverse element
  // supplies the inverse matrix), but reject visibly degenerate blocks
  {
    const std::vector<u64>& id = mats[0];
    if (id != identity_mat())
      throw ActionNotHomomorphism("identity acts nontrivially");
  }

  auto dom = std::make_shared<SdpDomain>(module, P, std::move(mats));
  std::vector<ElemCode> gens;
  unsigned dim = module.dimension();
  for (unsigned i = 0; i < dim; ++i) {
    std::vector<u64> r(dim, 0);
    r[i] = 1;
    if (dom->module_spec().flat_moduli()[i] > 1) gens.push_back(dom->encode(r, 0));
  }
  std::vector<u64> zero(dim, 0);
  for (Index g : P->generators()) gens.push_back(dom->encode(zero, g));
  Group G = FiniteGroup::enumerate(dom, gens, bound);
  if (G->order() != total) throw GroupError("semidirect closure has wrong order");

  SemidirectProduct out;
  out.projection.source = G;
  out.projection.target = P;
  out.projection.image_of.resize(G->order());
  std::vector<Index> module_members;
  for (Index i = 0; i < Index(G->order()); ++i) {
    ElemCode c = G->code(i);
    out.projection.image_of[i] = dom->actor_part(c);
    if (dom->actor_part(c) == 0) module_members.push_back(i);
  }
  Group M = detail::abelian_group(dom->module_spec().flat_moduli(), bound);
  out.module_embedding.source = M;
  out.module_embedding.target = G;
  out.module_embedding.image_of.resize(M->order());
  for (Index i = 0; i < Index(M->order()); ++i) {
    const auto* adom = static_cast<const AbelianDomain*>(&M->domain());
    out.module_embedding.image_of[i] = G->index_of(dom->encode(adom->decode(M->code(i)), 0));
  }
  out.module_subgroup = subgroup_from_members(G, std::move(module_members));
  out.actor_maximals = std::move(maximals);
  out.group = std::move(G);
  return out;
}

// ---------------------------------------------------------------------------
// Suzuki Borel subgroup: (F8 x F8) x| F8* with the Sz(8) twist.

class Sz8Domain final : public Domain {
 public:
  Sz8Domain() {
    for (unsigned a = 0; a < 8; ++a)
      for (unsigned b = 0; b < 8; ++b) mul_[a][b] = f8_mul(a, b);
    for (unsigned a = 0; a < 8; ++a) {
      theta_[a] = mul_[mul_[a][a]][mul_[a][a]];  // a^4
      pow5_[a] = mul_[mul_[mul_[a][a]][mul_[a][a]]][a];  // a^5
    }
  }

  // code = a | b<<3 | lambda<<6, lambda in F8*
  static ElemCode pack(unsigned a, unsigned b, unsigned lam) {
    return ElemCode(a) | ElemCode(b) << 3 | ElemCode(lam) << 6;
  }

  ElemCode identity() const override { return pack(0, 0, 1); }
  ElemCode mul(ElemCode x, ElemCode y) const override {
    unsigned a = unsigned(x & 7), b = unsigned((x >> 3) & 7), lam = unsigned(x >> 6);
    unsigned c = unsigned(y & 7), d = unsigned((y >> 3) & 7), mu = unsigned(y >> 6);
    // lambda . (c,d) = (lam c, lam^5 d), then Q-product with theta twist
    unsigned c2 = mul_[lam][c];
    unsigned d2 = mul_[pow5_[lam]][d];
    unsigned na = a ^ c2;
    unsigned nb = b ^ d2 ^ mul_[theta_[a]][c2];
    return pack(na, nb, mul_[lam][mu]);
  }
  ElemCode inv(ElemCode x) const override {
    unsigned a = unsigned(x & 7), b = unsigned((x >> 3) & 7), lam = unsigned(x >> 6);
    unsigned li = 1;
    for (unsigned t = 1; t < 8; ++t)
      if (mul_[lam][t] == 1) li = t;
    // (a,b)^-1 = (a, b + a^theta a); then pull the lambda action back
    unsigned qa = a, qb = b ^ mul_[theta_[a]][a];
    unsigned ia = mul_[li][qa];
    unsigned ib = mul_[pow5_[li]][qb];
    return pack(ia, ib, li);
  }
  bool valid(ElemCode x) const override {
    return x < 512 && (x >> 6) != 0;
  }
  u64 code_space() const override { return 512; }
  std::string backing() const override { return "pairs"; }

 private:
  static unsigned f8_mul(unsigned a, unsigned b) {
    unsigned r = 0;
    for (unsigned i = 0; i < 3; ++i)
      if (b & (1u << i)) r ^= a << i;
    // reduce modulo x^3 + x + 1
    for (unsigned i = 5; i >= 3; --i)
      if (r & (1u << i)) r ^= (1u << i) | (1u << (i - 3)) | (1u << (i - 2));
    return r & 7;
  }

  unsigned mul_[8][8];
  unsigned theta_[8];
  unsigned pow5_[8];
};

inline Group sz8_borel() {
  auto dom = std::make_shared<Sz8Domain>();
  std::vector<ElemCode> gens{Sz8Domain::pack(1, 0, 1), Sz8Domain::pack(0, 0, 2)};
  return FiniteGroup::enumerate(dom, gens, 512);
}

// ---------------------------------------------------------------------------

inline Group extraspecial(u64 p, int sign,
                          std::size_t bound = kDefaultEnumerationBound);

inline Group build_base(Family family, const std::vector<u64>& params,
                        std::size_t bound = kDefaultEnumerationBound) {
  switch (family) {
    case Family::Cyclic: {
      if (params.size() != 1 || params[0] < 1) throw BadParams("C(n) needs n >= 1");
      if (params[0] > bound) throw BoundExceeded("cyclic order exceeds bound");
      return detail::abelian_group({params[0]}, bound);
    }
    case Family::ElementaryAbelian: {
      if (params.size() != 2 || !is_prime_u64(params[0]) || params[1] < 1)
        throw BadParams("EA(p,k) needs a prime p and k >= 1");
      return detail::abelian_group(std::vector<u64>(params[1], params[0]), bound);
    }
    case Family::Homocyclic: {
      if (params.size() != 2 || params[0] < 2 || params[1] < 1)
        throw BadParams("Homocyclic(m,k) needs m >= 2, k >= 1");
      return detail::abelian_group(std::vector<u64>(params[1], params[0]), bound);
    }
    case Family::Dihedral: {
      if (params.size() != 1 || params[0] < 1) throw BadParams("D(n) needs n >= 1");
      u64 n = params[0];
      Group c2 = detail::abelian_group({2}, bound);
      ModuleSpec spec{{ModuleFactor{n, 1}}};
      ActionSpec act;
      act.kind = ActionSpec::ExplicitMatrices;
      act.generator_blocks = {{{(n - 1) % n}}};  // inversion
      return semidirect_product(spec, c2, act, bound).group;
    }
    case Family::Quaternion8: {
      if (!params.empty()) throw BadParams("Q8 takes no parameters");
      // left-regular representation on {1,-1,i,-i,j,-j,k,-k}
      return detail::perm_group(8,
                                {{2, 3, 1, 0, 6, 7, 5, 4},
                                 {4, 5, 7, 6, 1, 0, 2, 3}},
                                8);
    }
    case Family::Extraspecial: {
      if (params.size() != 2) throw BadParams("ES takes (p, sign)");
      return extraspecial(params[0], params[1] == 0 ? +1 : -1, bound);
    }
    case Family::SL23: {
      if (!params.empty()) throw BadParams("SL23 takes no parameters");
      // natural action on the 8 nonzero vectors of F_3^2, listed row-wise:
      // (1,0),(2,0),(0,1),(1,1),(2,1),(0,2),(1,2),(2,2)
      auto apply = [](int m00, int m01, int m10, int m11) {
        std::array<std::pair<int, int>, 8> pts{
            {{1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}, {0, 2}, {1, 2}, {2, 2}}};
        auto idx = [&](int x, int y) {
          for (unsigned i = 0; i < 8; ++i)
            if (pts[i].first == x && pts[i].second == y) return i;
          throw BadParams("unreachable");
        };
        std::vector<unsigned> img(8);
        for (unsigned i = 0; i < 8; ++i) {
          int x = pts[i].first, y = pts[i].second;
          img[i] = idx(((m00 * x + m01 * y) % 3 + 3) % 3,
                       ((m10 * x + m11 * y) % 3 + 3) % 3);
        }
        return img;
      };
      return detail::perm_group(8, {apply(1, 1, 0, 1), apply(0, -1, 1, 0)}, 24);
    }
    case Family::Sz8Borel: {
      if (!params.empty()) throw BadParams("Sz8Borel takes no parameters");
      return sz8_borel();
    }
    case Family::Alt5: {
      if (!params.empty()) throw BadParams("A5 takes no parameters");
      return detail::perm_group(5, {{1, 2, 0, 3, 4}, {1, 2, 3, 4, 0}}, 60);
    }
  }
  throw BadParams("unknown family");
}

// Order p^3 only. p=2: + gives D8, - gives Q8. p=3: + has exponent 3
// (affine shears on F_3^2), - has exponent 9 (affine maps x -> 4^j x + i
// on Z_9).
inline Group extraspecial(u64 p, int sign, std::size_t bound) {
  if (p == 2) {
    if (sign > 0) return build_base(Family::Dihedral, {4}, bound);
    return build_base(Family::Quaternion8, {}, bound);
  }
  if (p == 3) {
    if (sign > 0) {
      // generators: translation by (1,0), shear (x,y) -> (x, x+y)
      std::vector<unsigned> t1(9), sh(9);
      for (unsigned x = 0; x < 3; ++x)
        for (unsigned y = 0; y < 3; ++y) {
          t1[x + 3 * y] = (x + 1) % 3 + 3 * y;
          sh[x + 3 * y] = x + 3 * ((x + y) % 3);
        }
      return detail::perm_group(9, {t1, sh}, 27);
    }
    std::vector<unsigned> a(9), b(9);
    for (unsigned x = 0; x < 9; ++x) {
      a[x] = (x + 1) % 9;
      b[x] = (4 * x) % 9;
    }
    return detail::perm_group(9, {a, b}, 27);
  }
  throw BadParams("extraspecial groups are built for p in {2,3} only");
}

}  // namespace vanish
