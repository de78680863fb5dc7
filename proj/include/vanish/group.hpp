#pragma once

// FiniteGroup: deterministic breadth-first enumeration over a domain,
// conjugacy classes, centers, normal closures, derived subgroups and
// quotients. All structures are immutable once built.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "vanish/domain.hpp"
#include "vanish/errors.hpp"

namespace vanish {

inline constexpr std::size_t kDefaultEnumerationBound = 200000;
inline constexpr std::size_t kProductTableLimit = 1024;
inline constexpr Index kNoIndex = Index(-1);

class FiniteGroup;
using Group = std::shared_ptr<const FiniteGroup>;

class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  // Breadth-first closure from `gens` in the given order; identity gets
  // index 0 and indices follow discovery order, so two enumerations from the
  // same generator list agree element-by-element.
  static Group enumerate(std::shared_ptr<const Domain> domain,
                         const std::vector<ElemCode>& gens,
                         std::size_t bound = kDefaultEnumerationBound) {
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->domain_ = std::move(domain);
    for (ElemCode c : gens)
      if (!g->domain_->valid(c)) throw InvalidGenerator("malformed element encoding");

    u64 space = g->domain_->code_space();
    bool dense = space != 0 && space <= (u64(1) << 22);
    if (dense) g->dense_lookup_.assign(space, kNoIndex);

    auto lookup_or_add = [&](ElemCode c) -> std::pair<Index, bool> {
      if (dense) {
        Index& slot = g->dense_lookup_[c];
        if (slot != kNoIndex) return {slot, false};
        slot = Index(g->codes_.size());
        g->codes_.push_back(c);
        return {slot, true};
      }
      auto [it, inserted] = g->hash_lookup_.try_emplace(c, Index(g->codes_.size()));
      if (inserted) g->codes_.push_back(c);
      return {it->second, inserted};
    };

    lookup_or_add(g->domain_->identity());
    for (ElemCode c : gens) {
      auto [idx, fresh] = lookup_or_add(c);
      g->generators_.push_back(idx);
    }
    for (std::size_t head = 0; head < g->codes_.size(); ++head) {
      ElemCode x = g->codes_[head];
      for (ElemCode c : gens) {
        lookup_or_add(g->domain_->mul(x, c));
        if (g->codes_.size() > bound)
          throw BoundExceeded("enumeration passed bound " + std::to_string(bound));
      }
    }

    g->inverse_.resize(g->codes_.size());
    for (std::size_t i = 0; i < g->codes_.size(); ++i)
      g->inverse_[i] = g->index_of(g->domain_->inv(g->codes_[i]));

    if (g->codes_.size() <= kProductTableLimit) {
      std::size_t n = g->codes_.size();
      g->table_.resize(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          g->table_[a * n + b] = g->index_of(g->domain_->mul(g->codes_[a], g->codes_[b]));
    }
    return g;
  }

  std::size_t order() const { return codes_.size(); }
  const std::vector<Index>& generators() const { return generators_; }
  const Domain& domain() const { return *domain_; }
  std::shared_ptr<const Domain> domain_ptr() const { return domain_; }
  ElemCode code(Index i) const { return codes_[i]; }
  const std::vector<ElemCode>& codes() const { return codes_; }

  Index index_of(ElemCode c) const {
    if (!dense_lookup_.empty()) {
      Index i = dense_lookup_[c];
      if (i == kNoIndex) throw GroupError("element not in group");
      return i;
    }
    auto it = hash_lookup_.find(c);
    if (it == hash_lookup_.end()) throw GroupError("element not in group");
    return it->second;
  }

  bool contains_code(ElemCode c) const {
    if (!domain_->valid(c)) return false;
    if (!dense_lookup_.empty()) return dense_lookup_[c] != kNoIndex;
    return hash_lookup_.count(c) != 0;
  }

  Index product(Index a, Index b) const {
    if (!table_.empty()) return table_[std::size_t(a) * codes_.size() + b];
    return index_of(domain_->mul(codes_[a], codes_[b]));
  }
  Index inverse(Index a) const { return inverse_[a]; }
  // g^{-1} x g
  Index conjugate(Index x, Index g) const {
    return product(product(inverse_[g], x), g);
  }
  Index commutator(Index a, Index b) const {
    return product(product(inverse_[a], inverse_[b]), product(a, b));
  }

  Index power(Index x, u64 n) const {
    Index r = 0, base = x;
    while (n) {
      if (n & 1) r = product(r, base);
      base = product(base, base);
      n >>= 1;
    }
    return r;
  }

  u64 element_order(Index x) const {
    u64 o = 1;
    Index y = x;
    while (y != 0) {
      y = product(y, x);
      ++o;
    }
    return o;
  }

 private:
  FiniteGroup() = default;

  std::shared_ptr<const Domain> domain_;
  std::vector<ElemCode> codes_;
  std::vector<Index> dense_lookup_;
  std::unordered_map<ElemCode, Index> hash_lookup_;
  std::vector<Index> inverse_;
  std::vector<Index> generators_;
  std::vector<Index> table_;
};

// ---------------------------------------------------------------------------
// Subgroups are index sets of a parent group.

struct Subgroup {
  Group parent;
  std::vector<Index> members;     // sorted
  std::vector<Index> generators;  // generate the member set

  std::size_t order() const { return members.size(); }
  bool contains(Index x) const {
    return std::binary_search(members.begin(), members.end(), x);
  }
  bool is_trivial() const { return members.size() == 1; }
  bool same_members(const Subgroup& o) const { return members == o.members; }
};

struct Homomorphism {
  Group source;
  Group target;
  std::vector<Index> image_of;  // |source| entries

  Index operator()(Index x) const { return image_of[x]; }
};

// Closure of `gens` under right multiplication, starting from the identity.
// Optional cap aborts early (returns empty) once the closure would exceed it.
inline std::vector<Index> close_subgroup(const FiniteGroup& G,
                                         const std::vector<Index>& gens,
                                         std::size_t cap = 0) {
  std::vector<Index> elems{0};
  std::vector<std::uint8_t> in(G.order(), 0);
  in[0] = 1;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (Index g : gens) {
      Index y = G.product(elems[head], g);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
        if (cap && elems.size() > cap) return {};
      }
    }
  }
  return elems;
}

inline Subgroup make_subgroup(Group G, std::vector<Index> gens) {
  std::vector<Index> members = close_subgroup(*G, gens);
  std::sort(members.begin(), members.end());
  gens.erase(std::remove(gens.begin(), gens.end(), Index(0)), gens.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return Subgroup{std::move(G), std::move(members), std::move(gens)};
}

inline Subgroup trivial_subgroup(Group G) { return Subgroup{std::move(G), {0}, {}}; }

inline Subgroup whole_group_subgroup(Group G) {
  std::vector<Index> all(G->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup{G, std::move(all), G->generators()};
}

// Greedy generating set for a known member set (ascending index order keeps
// it deterministic).
inline Subgroup subgroup_from_members(Group G, std::vector<Index> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<Index> gens;
  std::vector<Index> closed{0};
  std::vector<std::uint8_t> in(G->order(), 0);
  in[0] = 1;
  for (Index x : members) {
    if (in[x]) continue;
    gens.push_back(x);
    // extend closure with the new generator
    std::vector<Index> frontier = closed;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      for (Index g : gens) {
        Index y = G->product(frontier[head], g);
        if (!in[y]) {
          in[y] = 1;
          closed.push_back(y);
          frontier.push_back(y);
        }
      }
    }
  }
  return Subgroup{std::move(G), std::move(members), std::move(gens)};
}

// ---------------------------------------------------------------------------
// Conjugacy classes.

struct ClassData {
  Group group;
  std::vector<Index> reps;       // representative = least index in the class
  std::vector<u64> sizes;
  std::vector<Index> class_of;   // |G|
  std::vector<u64> rep_orders;
  u64 exponent = 1;
  std::vector<Index> power_table;  // k * exponent when precomputed

  std::size_t count() const { return reps.size(); }

  // class of reps[cls]^j
  Index power_class(std::size_t cls, u64 j) const {
    u64 jm = exponent ? j % exponent : j;
    if (!power_table.empty()) return power_table[cls * exponent + jm];
    return class_of[group->power(reps[cls], jm)];
  }
};

inline constexpr u64 kPowerTableLimit = u64(1) << 25;

// Orbits of the conjugation action; generator conjugation suffices since the
// generators generate G.
inline ClassData conjugacy_classes(Group G) {
  ClassData cd;
  cd.group = G;
  std::size_t n = G->order();
  cd.class_of.assign(n, kNoIndex);
  std::vector<Index> orbit;
  for (Index x = 0; x < n; ++x) {
    if (cd.class_of[x] != kNoIndex) continue;
    Index cls = Index(cd.reps.size());
    cd.reps.push_back(x);
    cd.class_of[x] = cls;
    orbit.assign(1, x);
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (Index g : G->generators()) {
        Index y = G->conjugate(orbit[head], g);
        if (cd.class_of[y] == kNoIndex) {
          cd.class_of[y] = cls;
          orbit.push_back(y);
        }
      }
    }
    cd.sizes.push_back(orbit.size());
  }
  cd.rep_orders.reserve(cd.reps.size());
  cd.exponent = 1;
  for (Index r : cd.reps) {
    u64 o = G->element_order(r);
    cd.rep_orders.push_back(o);
    cd.exponent = std::lcm(cd.exponent, o);
  }
  if (u64(cd.reps.size()) * cd.exponent <= kPowerTableLimit) {
    std::size_t k = cd.reps.size();
    cd.power_table.assign(k * cd.exponent, 0);
    for (std::size_t i = 0; i < k; ++i) {
      Index y = 0;
      for (u64 j = 0; j < cd.exponent; ++j) {
        cd.power_table[i * cd.exponent + j] = cd.class_of[y];
        y = G->product(y, cd.reps[i]);
      }
    }
  }
  return cd;
}

inline Subgroup center(Group G) {
  std::vector<Index> members;
  for (Index x = 0; x < G->order(); ++x) {
    bool central = true;
    for (Index g : G->generators()) {
      if (G->product(x, g) != G->product(g, x)) {
        central = false;
        break;
      }
    }
    if (central) members.push_back(x);
  }
  return subgroup_from_members(std::move(G), std::move(members));
}

// Centralizer of x inside an arbitrary member list.
inline std::vector<Index> centralizer_in(const FiniteGroup& G,
                                         const std::vector<Index>& members,
                                         Index x) {
  std::vector<Index> out;
  for (Index m : members)
    if (G.product(m, x) == G.product(x, m)) out.push_back(m);
  return out;
}

inline bool members_abelian(const FiniteGroup& G, const std::vector<Index>& members) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (G.product(members[i], members[j]) != G.product(members[j], members[i]))
        return false;
  return true;
}

// Smallest normal subgroup of G containing `seed`: close under conjugation
// by the generators of G (both directions) and under subgroup closure.
inline Subgroup normal_closure(Group G, const std::vector<Index>& seed) {
  std::vector<Index> gens;
  for (Index s : seed)
    if (s != 0) gens.push_back(s);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  std::vector<Index> elems{0};
  std::vector<std::uint8_t> in(G->order(), 0);
  in[0] = 1;
  auto extend = [&](Index fresh) {
    // incremental closure after adding one generator
    if (in[fresh]) return;
    gens.push_back(fresh);
    std::vector<Index> frontier;
    std::size_t snapshot = elems.size();
    for (std::size_t i = 0; i < snapshot; ++i) {
      Index y = G->product(elems[i], fresh);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
        frontier.push_back(y);
      }
    }
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      for (Index g : gens) {
        Index y = G->product(frontier[head], g);
        if (!in[y]) {
          in[y] = 1;
          elems.push_back(y);
          frontier.push_back(y);
        }
      }
    }
  };
  std::vector<Index> initial = gens;
  gens.clear();
  for (Index s : initial) extend(s);
  for (std::size_t head = 0; head < gens.size(); ++head) {
    Index t = gens[head];
    for (Index g : G->generators()) {
      Index c = G->conjugate(t, g);
      if (!in[c]) extend(c);
      c = G->conjugate(t, G->inverse(g));
      if (!in[c]) extend(c);
    }
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup{std::move(G), std::move(elems), std::move(gens)};
}

// Normal closure of the commutators of all generator pairs; G/G' is abelian.
inline Subgroup derived_subgroup(Group G) {
  std::vector<Index> comms;
  const auto& gens = G->generators();
  for (Index a : gens)
    for (Index b : gens) {
      Index c = G->commutator(a, b);
      if (c != 0) comms.push_back(c);
    }
  return normal_closure(std::move(G), comms);
}

inline bool is_normal(const Subgroup& N) {
  const FiniteGroup& G = *N.parent;
  for (Index g : G.generators())
    for (Index t : N.generators)
      if (!N.contains(G.conjugate(t, g))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Quotients: coset labels are the minimal member index of each coset, and a
// quotient of a quotient is flattened back onto the original parent.

class QuotientDomain final : public Domain {
 public:
  QuotientDomain(Group parent, std::vector<Index> coset_label)
      : parent_(std::move(parent)), label_(std::move(coset_label)) {}

  const Group& parent() const { return parent_; }
  const std::vector<Index>& labels() const { return label_; }

  ElemCode identity() const override { return label_[0]; }
  ElemCode mul(ElemCode a, ElemCode b) const override {
    return label_[parent_->product(Index(a), Index(b))];
  }
  ElemCode inv(ElemCode a) const override { return label_[parent_->inverse(Index(a))]; }
  bool valid(ElemCode a) const override {
    return a < label_.size() && label_[a] == a;
  }
  u64 code_space() const override { return label_.size(); }
  std::string backing() const override { return "cosets"; }

 private:
  Group parent_;
  std::vector<Index> label_;
};

inline std::pair<Group, Homomorphism> quotient(Group G, const Subgroup& N) {
  if (N.parent.get() != G.get()) throw GroupError("subgroup of a different group");
  if (!is_normal(N)) throw NotNormal("quotient by a non-normal subgroup");

  // Resolve through an existing quotient backing so products stay O(1).
  Group root = G;
  const std::vector<Index>* outer_labels = nullptr;
  if (auto qd = dynamic_cast<const QuotientDomain*>(&G->domain())) {
    root = qd->parent();
    outer_labels = &qd->labels();
  }

  // index of a G-element inside root
  auto root_index = [&](Index x) {
    return outer_labels ? Index(G->code(x)) : x;
  };

  std::vector<Index> label(root->order(), kNoIndex);
  // Scan ascending: the first unassigned element of each coset is minimal.
  std::vector<Index> root_members;
  if (outer_labels) {
    // members of N viewed inside root: all root elements whose coset lies in N
    std::vector<std::uint8_t> in_n(root->order(), 0);
    for (Index m : N.members) in_n[Index(G->code(m))] = 1;
    for (Index x = 0; x < Index(root->order()); ++x)
      if (in_n[(*outer_labels)[x]]) root_members.push_back(x);
  } else {
    root_members = N.members;
  }
  for (Index x = 0; x < Index(root->order()); ++x) {
    if (label[x] != kNoIndex) continue;
    for (Index m : root_members) label[root->product(x, m)] = x;
  }

  auto dom = std::make_shared<QuotientDomain>(root, std::move(label));
  std::vector<ElemCode> qgens;
  for (Index g : G->generators()) qgens.push_back(dom->labels()[root_index(g)]);
  Group Q = FiniteGroup::enumerate(dom, qgens, root->order());
  if (Q->order() * N.order() != G->order())
    throw GroupError("quotient order mismatch");

  Homomorphism h;
  h.source = G;
  h.target = Q;
  h.image_of.resize(G->order());
  for (Index x = 0; x < Index(G->order()); ++x)
    h.image_of[x] = Q->index_of(dom->labels()[root_index(x)]);
  return {std::move(Q), std::move(h)};
}

// Re-enumerate a subgroup as a standalone group in the same domain.
struct SubgroupGroup {
  Group group;
  std::vector<Index> to_parent;    // subgroup index -> parent index
  std::vector<Index> from_parent;  // parent index -> subgroup index or kNoIndex
};

inline SubgroupGroup subgroup_as_group(const Subgroup& S) {
  const Group& P = S.parent;
  std::vector<ElemCode> gens;
  for (Index g : S.generators) gens.push_back(P->code(g));
  Group H = FiniteGroup::enumerate(P->domain_ptr(), gens, S.members.size());
  SubgroupGroup out;
  out.to_parent.resize(H->order());
  out.from_parent.assign(P->order(), kNoIndex);
  for (Index i = 0; i < H->order(); ++i) {
    Index pi = P->index_of(H->code(i));
    out.to_parent[i] = pi;
    out.from_parent[pi] = i;
  }
  out.group = std::move(H);
  return out;
}

}  // namespace vanish
