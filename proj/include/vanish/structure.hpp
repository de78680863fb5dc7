#pragma once

// Structural subgroup algorithms. Normalizers are brute-force scans over the
// whole group; at desk scale O(|G|*|gens|) is acceptable everywhere here.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "vanish/group.hpp"
#include "vanish/modmath.hpp"

namespace vanish {

inline std::vector<Index> normalizer_members(const FiniteGroup& G,
                                             const Subgroup& P) {
  std::vector<Index> out;
  for (Index g = 0; g < Index(G.order()); ++g) {
    bool ok = true;
    for (Index t : P.generators) {
      if (!P.contains(G.conjugate(t, g))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(g);
  }
  return out;
}

inline bool is_p_power_order(const FiniteGroup& G, Index x, u64 p) {
  u64 o = G.element_order(x);
  while (o % p == 0) o /= p;
  return o == 1;
}

// Normalizer ascent: starting from the trivial subgroup, repeatedly adjoin a
// p-element of the normalizer until the full p-part is reached. Any p-element
// of N_G(P) outside P extends P to a p-group p times as large.
inline Subgroup sylow_subgroup(Group G, u64 p) {
  u64 p_part = 1, n = G->order();
  while (n % p == 0) {
    n /= p;
    p_part *= p;
  }
  Subgroup P = trivial_subgroup(G);
  if (p_part == 1) return P;
  while (P.order() < p_part) {
    std::vector<Index> nm;
    if (!P.is_trivial()) nm = normalizer_members(*G, P);
    std::size_t limit = P.is_trivial() ? G->order() : nm.size();
    Index found = kNoIndex;
    for (std::size_t i = 0; i < limit; ++i) {
      Index y = P.is_trivial() ? Index(i) : nm[i];
      if (y == 0 || P.contains(y)) continue;
      if (is_p_power_order(*G, y, p)) {
        found = y;
        break;
      }
    }
    if (found == kNoIndex)
      throw GroupError("sylow ascent found no extending element");
    std::vector<Index> gens = P.generators;
    gens.push_back(found);
    P = make_subgroup(G, std::move(gens));
  }
  return P;
}

// Largest normal p-subgroup: intersection of all conjugates of one Sylow
// p-subgroup.
inline Subgroup p_core(Group G, u64 p) {
  Subgroup P = sylow_subgroup(G, p);
  if (P.is_trivial()) return P;
  std::set<std::vector<Index>> seen;
  std::vector<std::vector<Index>> orbit;
  seen.insert(P.members);
  orbit.push_back(P.members);
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    for (Index g : G->generators()) {
      std::vector<Index> img;
      img.reserve(orbit[head].size());
      for (Index m : orbit[head]) img.push_back(G->conjugate(m, g));
      std::sort(img.begin(), img.end());
      if (seen.insert(img).second) orbit.push_back(std::move(img));
    }
  }
  std::vector<Index> inter = orbit[0];
  for (std::size_t i = 1; i < orbit.size() && inter.size() > 1; ++i) {
    std::vector<Index> next;
    std::set_intersection(inter.begin(), inter.end(), orbit[i].begin(),
                          orbit[i].end(), std::back_inserter(next));
    inter = std::move(next);
  }
  return subgroup_from_members(std::move(G), std::move(inter));
}

// Fitting subgroup: product of the p-cores over primes dividing |G|.
inline Subgroup fitting_subgroup(Group G) {
  std::vector<Index> gens;
  for (u64 p : prime_factors(G->order())) {
    Subgroup op = p_core(G, p);
    gens.insert(gens.end(), op.generators.begin(), op.generators.end());
  }
  return make_subgroup(std::move(G), std::move(gens));
}

inline bool is_nilpotent(Group G) {
  for (u64 p : prime_factors(G->order())) {
    if (!is_normal(sylow_subgroup(G, p))) return false;
  }
  return true;
}

// Derived subgroup computed inside a subgroup (members are parent indices):
// normal closure in H of the commutators of H's generators.
inline Subgroup subgroup_derived(const Subgroup& H) {
  const Group& G = H.parent;
  std::vector<Index> comms;
  for (Index a : H.generators)
    for (Index b : H.generators) {
      Index c = G->commutator(a, b);
      if (c != 0) comms.push_back(c);
    }
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  std::vector<Index> gens;
  std::vector<Index> elems{0};
  std::vector<std::uint8_t> in(G->order(), 0);
  in[0] = 1;
  auto extend = [&](Index fresh) {
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
  for (Index c : comms) extend(c);
  for (std::size_t head = 0; head < gens.size(); ++head) {
    for (Index g : H.generators) {
      Index c = G->conjugate(gens[head], g);
      if (!in[c]) extend(c);
      c = G->conjugate(gens[head], G->inverse(g));
      if (!in[c]) extend(c);
    }
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup{G, std::move(elems), std::move(gens)};
}

inline bool is_solvable(Group G) {
  Subgroup D = derived_subgroup(G);
  while (!D.is_trivial()) {
    Subgroup next = subgroup_derived(D);
    if (next.order() == D.order()) return false;
    D = std::move(next);
  }
  return true;
}

// Minimal normal subgroups: the inclusion-minimal normal closures of the
// nontrivial class representatives. Ordered by (order, member set).
inline std::vector<Subgroup> minimal_normal_subgroups(Group G,
                                                      const ClassData& classes) {
  std::vector<Subgroup> cands;
  std::set<std::vector<Index>> seen;
  for (std::size_t c = 1; c < classes.count(); ++c) {
    Subgroup ncl = normal_closure(G, {classes.reps[c]});
    if (seen.insert(ncl.members).second) cands.push_back(std::move(ncl));
  }
  std::vector<Subgroup> out;
  for (const Subgroup& a : cands) {
    bool minimal = true;
    for (const Subgroup& b : cands) {
      if (b.order() < a.order() &&
          std::includes(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(a);
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members < b.members;
  });
  return out;
}

inline std::vector<Subgroup> minimal_normal_subgroups(Group G) {
  ClassData cd = conjugacy_classes(G);
  return minimal_normal_subgroups(std::move(G), cd);
}

struct ChiefSeries {
  std::vector<Subgroup> terms;  // descending; front = G, back = trivial
  std::vector<u64> factor_orders;
};

// Greedy chief series: repeatedly factor out the first minimal normal
// subgroup of the current quotient and pull the series back to G.
inline ChiefSeries chief_series(Group G) {
  std::vector<Subgroup> ascending{trivial_subgroup(G)};
  Group Q = G;
  std::vector<Index> comp(G->order());
  for (Index i = 0; i < Index(G->order()); ++i) comp[i] = i;
  while (Q->order() > 1) {
    std::vector<Subgroup> mins = minimal_normal_subgroups(Q);
    const Subgroup& M = mins.front();
    std::vector<std::uint8_t> in_m(Q->order(), 0);
    for (Index m : M.members) in_m[m] = 1;
    std::vector<Index> pre;
    for (Index x = 0; x < Index(G->order()); ++x)
      if (in_m[comp[x]]) pre.push_back(x);
    ascending.push_back(subgroup_from_members(G, std::move(pre)));
    auto [Q2, h] = quotient(Q, M);
    for (Index x = 0; x < Index(G->order()); ++x) comp[x] = h.image_of[comp[x]];
    Q = Q2;
  }
  ChiefSeries cs;
  cs.terms.assign(ascending.rbegin(), ascending.rend());
  for (std::size_t i = 0; i + 1 < cs.terms.size(); ++i)
    cs.factor_orders.push_back(cs.terms[i].order() / cs.terms[i + 1].order());
  return cs;
}

// True iff some (hence any) greedy chief series has all factors of prime
// order. Nonsolvable groups simply hit a nonprime factor and return false.
inline bool is_supersolvable(Group G) {
  Group Q = G;
  while (Q->order() > 1) {
    std::vector<Subgroup> mins = minimal_normal_subgroups(Q);
    const Subgroup& M = mins.front();
    if (!is_prime_u64(M.order())) return false;
    Q = quotient(Q, M).first;
  }
  return true;
}

// The set of elements with pi-number order forms the normal Hall
// pi-subgroup when one exists.
inline std::optional<Subgroup> normal_hall_subgroup(Group G,
                                                    const std::vector<u64>& pi) {
  u64 target = part_for_primes(G->order(), pi);
  std::vector<Index> members;
  for (Index x = 0; x < Index(G->order()); ++x) {
    u64 o = G->element_order(x);
    for (u64 p : pi)
      while (o % p == 0) o /= p;
    if (o == 1) members.push_back(x);
  }
  if (members.size() != target) return std::nullopt;
  Subgroup S = subgroup_from_members(G, std::move(members));
  // the element set is conjugation-closed; subgroup-ness needs closure
  if (close_subgroup(*G, S.generators).size() != target) return std::nullopt;
  return S;
}

// Schur-Zassenhaus complement to a normal Hall subgroup. Seeded randomized
// search over closures of up to three coprime-order elements, with a
// deterministic exhaustive fallback over class representatives.
inline Subgroup hall_complement(Group G, const Subgroup& N, u64 seed = 1) {
  if (!is_normal(N)) throw NotNormal("hall_complement: subgroup not normal");
  u64 m = G->order() / N.order();
  if (std::gcd(u64(N.order()), m) != 1)
    throw NotCoprime("hall_complement: |N| and |G:N| share a prime");
  if (m == 1) return trivial_subgroup(G);

  u64 n_order = N.order();
  auto coprime_part_of = [&](Index x) -> Index {
    u64 o = G->element_order(x);
    u64 d = o;
    u64 g;
    while ((g = std::gcd(d, n_order)) > 1) d /= g;
    // x^(o/d) has order d, coprime to |N|
    return G->power(x, o / d);
  };
  auto try_candidate = [&](std::vector<Index> gens) -> std::optional<Subgroup> {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    gens.erase(std::remove(gens.begin(), gens.end(), Index(0)), gens.end());
    if (gens.empty()) return std::nullopt;
    std::vector<Index> closure = close_subgroup(*G, gens, m);
    if (closure.size() != m) return std::nullopt;
    for (Index x : closure)
      if (x != 0 && N.contains(x)) return std::nullopt;
    std::sort(closure.begin(), closure.end());
    return Subgroup{G, std::move(closure), std::move(gens)};
  };

  std::mt19937_64 rng(seed);
  for (int round = 0; round < 1000; ++round) {
    std::size_t count = 1 + std::size_t(rng() % 3);
    std::vector<Index> gens;
    for (std::size_t i = 0; i < count; ++i) {
      Index y = coprime_part_of(Index(rng() % G->order()));
      if (y != 0) gens.push_back(y);
    }
    if (auto s = try_candidate(std::move(gens))) return *s;
  }

  // deterministic fallback: closures of <= 3 coprime-order class reps
  ClassData cd = conjugacy_classes(G);
  std::vector<Index> cands;
  for (std::size_t c = 1; c < cd.count(); ++c)
    if (std::gcd(cd.rep_orders[c], n_order) == 1) cands.push_back(cd.reps[c]);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (auto s = try_candidate({cands[i]})) return *s;
  }
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = i + 1; j < cands.size(); ++j)
      if (auto s = try_candidate({cands[i], cands[j]})) return *s;
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = i + 1; j < cands.size(); ++j)
      for (std::size_t l = j + 1; l < cands.size(); ++l)
        if (auto s = try_candidate({cands[i], cands[j], cands[l]})) return *s;
  throw SearchExhausted("hall_complement: no complement found (bug: existence is guaranteed)");
}

struct FrobeniusWitness {
  Subgroup kernel;
  Subgroup complement;
  bool fixed_point_free = false;
};

// Frobenius test from the centralizer condition. Both the kernel condition
// C_G(k) <= K and the complement condition C_K(h) = 1 are verified even
// though the first implies the rest in theory.
inline std::optional<FrobeniusWitness> is_frobenius_with_kernel(
    Group G, const Subgroup& K, u64 seed = 1) {
  if (K.order() <= 1 || K.order() >= G->order()) return std::nullopt;
  if (!is_normal(K)) return std::nullopt;
  ClassData cd = conjugacy_classes(G);
  // C_G(k) <= K  <=>  |C_K(k)| == |C_G(k)| = |G| / classsize(k)
  for (Index k : K.members) {
    if (k == 0) continue;
    u64 cg = G->order() / cd.sizes[cd.class_of[k]];
    u64 ck = centralizer_in(*G, K.members, k).size();
    if (ck != cg) return std::nullopt;
  }
  if (std::gcd(u64(K.order()), u64(G->order() / K.order())) != 1)
    return std::nullopt;
  Subgroup H = hall_complement(G, K, seed);
  for (Index h : H.members) {
    if (h == 0) continue;
    for (Index k : K.members) {
      if (k == 0) continue;
      if (G->product(h, k) == G->product(k, h)) return std::nullopt;
    }
  }
  return FrobeniusWitness{K, std::move(H), true};
}

enum class PrimeOrderCase { NotAllPrimeOrder, PGroupExponentP, FrobeniusPQ, Alt5 };

struct PrimeOrderClassification {
  PrimeOrderCase kind = PrimeOrderCase::NotAllPrimeOrder;
  u64 p = 0;  // PGroupExponentP / FrobeniusPQ kernel prime
  u64 q = 0;  // FrobeniusPQ complement prime
};

// Groups all of whose nontrivial elements have prime order: either a p-group
// of exponent p, a Frobenius group P x| Q with |Q| = q, or A5.
inline PrimeOrderClassification prime_order_classification(Group G) {
  PrimeOrderClassification out;
  if (G->order() == 1) {
    out.kind = PrimeOrderCase::PGroupExponentP;
    out.p = 1;
    return out;
  }
  ClassData cd = conjugacy_classes(G);
  for (std::size_t c = 1; c < cd.count(); ++c)
    if (!is_prime_u64(cd.rep_orders[c])) return out;

  std::vector<u64> primes = prime_factors(G->order());
  if (is_nilpotent(G)) {
    if (primes.size() != 1)
      throw GroupError("prime-order nilpotent group with two primes (bug)");
    out.kind = PrimeOrderCase::PGroupExponentP;
    out.p = primes[0];
    return out;
  }
  if (is_solvable(G)) {
    if (primes.size() != 2)
      throw GroupError("prime-order solvable group without two primes (bug)");
    // the kernel prime has a normal Sylow subgroup
    for (u64 p : primes) {
      Subgroup P = sylow_subgroup(G, p);
      if (!is_normal(P)) continue;
      u64 q = primes[0] == p ? primes[1] : primes[0];
      if (G->order() / P.order() != q)
        throw GroupError("prime-order Frobenius complement not of prime order (bug)");
      if (!is_frobenius_with_kernel(G, P))
        throw GroupError("prime-order solvable group not Frobenius (bug)");
      out.kind = PrimeOrderCase::FrobeniusPQ;
      out.p = p;
      out.q = q;
      return out;
    }
    throw GroupError("prime-order solvable group without normal Sylow (bug)");
  }
  if (G->order() != 60 || minimal_normal_subgroups(G, cd).front().order() != 60)
    throw GroupError("prime-order nonsolvable group that is not simple of order 60 (bug)");
  out.kind = PrimeOrderCase::Alt5;
  return out;
}

}  // namespace vanish
