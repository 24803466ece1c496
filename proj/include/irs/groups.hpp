#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "irs/automorphism.hpp"
#include "irs/error.hpp"
#include "irs/rational.hpp"
#include "irs/tree.hpp"

namespace irs {

inline constexpr std::size_t kDefaultOrderCap = 200000;

/// S_d^wr(n) or A_d^wr(n): all automorphisms of the depth-n tree, optionally
/// with every vertex permutation even.
struct TruncatedWreathGroup {
  int d = 2;
  int n = 0;
  Flavor flavor = Flavor::symmetric;

  TruncatedWreathGroup() = default;
  TruncatedWreathGroup(int d_, int n_, Flavor f) : d(d_), n(n_), flavor(f) {
    check_arity(d);
    if (n < 0) throw InvalidArgument("negative depth");
    if (flavor == Flavor::alternating && d < 3) {
      throw PreconditionViolated("alternating flavor needs d >= 3 (A_2 is trivial)");
    }
  }

  /// Number of vertices on levels 0..n-1.
  std::uint64_t vertex_count() const { return vertices_between(0, n); }

  std::uint64_t vertices_between(int from, int to) const {
    std::uint64_t c = 0;
    for (int l = from; l < to; ++l) c += ipow(d, l);
    return c;
  }

  BigInt base_order() const {
    BigInt f = 1;
    for (int i = 2; i <= d; ++i) f *= i;
    return flavor == Flavor::alternating ? BigInt(f / 2) : f;
  }

  bool contains(const FinitaryAutomorphism& g) const {
    if (g.arity() != d || g.support_depth() > n) return false;
    return flavor == Flavor::symmetric || g.is_alternating();
  }

  /// Generators of the vertex group: (0 1) and the d-cycle, or the 3-cycles (0 1 i).
  std::vector<Permutation> base_generators() const {
    std::vector<Permutation> out;
    if (flavor == Flavor::symmetric) {
      out.push_back(Permutation::transposition(d, 0, 1));
      if (d > 2) {
        std::vector<int> all(static_cast<std::size_t>(d));
        std::iota(all.begin(), all.end(), 0);
        out.push_back(Permutation::cycle(d, all));
      }
    } else {
      for (int i = 2; i < d; ++i) out.push_back(Permutation::cycle(d, {0, 1, i}));
    }
    return out;
  }

  /// Base generators placed at every vertex of the given set.
  std::vector<FinitaryAutomorphism> elementary_at(const std::vector<VertexAddress>& vertices) const {
    std::vector<FinitaryAutomorphism> out;
    auto base = base_generators();
    for (const auto& v : vertices) {
      for (const auto& p : base) out.push_back(FinitaryAutomorphism::elementary(d, n, v, p));
    }
    return out;
  }

  std::vector<FinitaryAutomorphism> elementary_generators(int from_level = 0) const {
    std::vector<VertexAddress> vertices;
    for (int l = from_level; l < n; ++l) {
      for (const auto& v : LevelSet::full(d, l)) vertices.push_back(v);
    }
    return elementary_at(vertices);
  }

  FinitaryAutomorphism identity() const { return FinitaryAutomorphism::identity(d, n); }

  friend bool operator==(const TruncatedWreathGroup&, const TruncatedWreathGroup&) = default;
};

/// |base|^((d^n - 1)/(d - 1)).
inline BigInt group_order(const TruncatedWreathGroup& G) {
  return boost::multiprecision::pow(G.base_order(), static_cast<unsigned>(G.vertex_count()));
}

/// Partition of one level into blocks; canonical form has sorted members and
/// blocks ordered by their first member.
struct LevelPartition {
  int level = 0;
  std::vector<std::vector<VertexAddress>> blocks;

  LevelPartition() = default;
  LevelPartition(int lvl, std::vector<std::vector<VertexAddress>> b) : level(lvl), blocks(std::move(b)) {
    for (auto& block : blocks) std::sort(block.begin(), block.end());
    std::sort(blocks.begin(), blocks.end());
  }

  /// Throws unless the blocks are nonempty, disjoint and cover L_level.
  void validate(int d) const {
    std::vector<VertexAddress> all;
    for (const auto& block : blocks) {
      if (block.empty()) throw InvalidArgument("empty block in level partition");
      all.insert(all.end(), block.begin(), block.end());
    }
    std::sort(all.begin(), all.end());
    if (all != LevelSet::full(d, level).members()) {
      throw InvalidArgument("blocks do not partition level " + std::to_string(level));
    }
  }

  static LevelPartition singletons(int d, int level) {
    std::vector<std::vector<VertexAddress>> b;
    for (const auto& v : LevelSet::full(d, level)) b.push_back({v});
    return LevelPartition(level, std::move(b));
  }

  /// Index of the block containing v, or -1.
  int block_of(const VertexAddress& v) const {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (std::binary_search(blocks[i].begin(), blocks[i].end(), v)) return static_cast<int>(i);
    }
    return -1;
  }

  friend bool operator==(const LevelPartition&, const LevelPartition&) = default;
};

/// Result of a level-comparison metric: 1/2^k for the deepest agreeing level k.
struct LevelDistance {
  Rational value;
  int agreement_level = 0;
  bool equal_at_truncation = false;
  bool no_agreement = false;
};

/// d_O on partition sequences P_0..P_N, Q_0..Q_N.
inline LevelDistance partition_distance(const std::vector<LevelPartition>& P,
                                        const std::vector<LevelPartition>& Q) {
  if (P.size() != Q.size() || P.empty()) {
    throw InvalidArgument("partition sequences must be nonempty and of equal depth");
  }
  LevelDistance r;
  std::size_t first_diff = P.size();
  for (std::size_t k = 0; k < P.size(); ++k) {
    if (P[k].level != static_cast<int>(k) || Q[k].level != static_cast<int>(k)) {
      throw InvalidArgument("partition sequence must list levels 0, 1, 2, ...");
    }
    if (!(P[k] == Q[k])) {
      first_diff = k;
      break;
    }
  }
  if (first_diff == 0) {
    r.no_agreement = true;
    r.value = 1;
    return r;
  }
  r.agreement_level = static_cast<int>(first_diff) - 1;
  r.equal_at_truncation = first_diff == P.size();
  r.value = reciprocal_power(2, static_cast<unsigned>(r.agreement_level));
  return r;
}

using ElementList = std::vector<FinitaryAutomorphism>;

class GeneratedSubgroup;
GeneratedSubgroup enumerate(const GeneratedSubgroup& S);

/// Subgroup of a truncated wreath group, given by generators and optionally
/// by its full sorted element list.
class GeneratedSubgroup {
 public:
  GeneratedSubgroup() = default;

  GeneratedSubgroup(TruncatedWreathGroup ambient, std::vector<FinitaryAutomorphism> generators,
                    std::size_t order_cap = kDefaultOrderCap)
      : ambient_(ambient), order_cap_(order_cap) {
    std::vector<FinitaryAutomorphism> kept;
    for (auto& g : generators) {
      if (!ambient_.contains(g)) {
        throw InvalidArgument("generator " + g.str() + " does not lie in the ambient group");
      }
      if (g.is_identity()) continue;
      g = g.with_depth(ambient_.n);
      if (std::find(kept.begin(), kept.end(), g) == kept.end()) kept.push_back(std::move(g));
    }
    generators_ = std::make_shared<std::vector<FinitaryAutomorphism>>(std::move(kept));
  }

  static GeneratedSubgroup trivial(const TruncatedWreathGroup& G) { return GeneratedSubgroup(G, {}); }

  static GeneratedSubgroup full(const TruncatedWreathGroup& G, std::size_t cap = kDefaultOrderCap) {
    return GeneratedSubgroup(G, G.elementary_generators(), cap);
  }

  /// Wraps a list already known to be a subgroup; generators are derived on demand.
  static GeneratedSubgroup from_elements(const TruncatedWreathGroup& G, ElementList elements,
                                         std::size_t cap = kDefaultOrderCap) {
    GeneratedSubgroup S;
    S.ambient_ = G;
    S.order_cap_ = cap;
    for (auto& e : elements) e = e.with_depth(G.n);
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    S.elements_ = std::make_shared<const ElementList>(std::move(elements));
    return S;
  }

  /// Generators together with the (trusted) full element list they generate.
  static GeneratedSubgroup with_elements(const TruncatedWreathGroup& G, std::vector<FinitaryAutomorphism> gens,
                                         ElementList elements, std::size_t cap = kDefaultOrderCap) {
    GeneratedSubgroup S(G, std::move(gens), cap);
    GeneratedSubgroup E = from_elements(G, std::move(elements), cap);
    S.elements_ = E.elements_;
    return S;
  }

  const TruncatedWreathGroup& ambient() const { return ambient_; }
  std::size_t order_cap() const { return order_cap_; }
  bool is_enumerated() const { return elements_ != nullptr; }

  /// Sorted element list; throws if not enumerated.
  const ElementList& elements() const {
    if (!elements_) throw PreconditionViolated("subgroup is not enumerated");
    return *elements_;
  }
  std::shared_ptr<const ElementList> shared_elements() const { return elements_; }

  std::size_t order() const { return elements().size(); }

  bool contains(const FinitaryAutomorphism& g) const {
    return std::binary_search(elements().begin(), elements().end(), g);
  }

  /// Generators; for subgroups built from elements a small generating set is
  /// computed greedily and cached.
  const std::vector<FinitaryAutomorphism>& generators() const {
    if (!generators_) {
      generators_ = std::make_shared<std::vector<FinitaryAutomorphism>>(greedy_generators(*elements_));
    }
    return *generators_;
  }

  /// Elements acting on the tree that suffice for orbit/fixed-point questions.
  const std::vector<FinitaryAutomorphism>& acting_set() const {
    if (generators_) return *generators_;
    return *elements_;
  }

  static std::vector<FinitaryAutomorphism> greedy_generators(const ElementList& elements) {
    std::vector<FinitaryAutomorphism> gens;
    if (elements.empty()) return gens;
    std::unordered_set<FinitaryAutomorphism> closure{
        FinitaryAutomorphism::identity(elements.front().arity(), elements.front().depth())};
    for (const auto& g : elements) {
      if (closure.count(g)) continue;
      gens.push_back(g);
      // Old elements are closed under old generators; only products with g and
      // everything new need expanding.
      std::deque<FinitaryAutomorphism> frontier;
      std::vector<FinitaryAutomorphism> old(closure.begin(), closure.end());
      for (const auto& h : old) {
        auto x = compose(h, g);
        if (closure.insert(x).second) frontier.push_back(std::move(x));
      }
      while (!frontier.empty()) {
        auto h = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& s : gens) {
          auto x = compose(h, s);
          if (closure.insert(x).second) frontier.push_back(std::move(x));
        }
      }
    }
    return gens;
  }

 private:
  friend GeneratedSubgroup enumerate(const GeneratedSubgroup& S);

  TruncatedWreathGroup ambient_;
  mutable std::shared_ptr<std::vector<FinitaryAutomorphism>> generators_;
  std::shared_ptr<const ElementList> elements_;
  std::size_t order_cap_ = kDefaultOrderCap;
};

/// Breadth-first closure of the generators under right multiplication.
inline GeneratedSubgroup enumerate(const GeneratedSubgroup& S) {
  if (S.is_enumerated()) return S;
  const auto& gens = S.generators();
  std::unordered_set<FinitaryAutomorphism> seen;
  std::deque<FinitaryAutomorphism> queue;
  auto id = S.ambient().identity();
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    auto h = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      auto x = compose(h, s);
      if (seen.insert(x).second) {
        if (seen.size() > S.order_cap()) throw OrderCapExceeded(S.order_cap(), seen.size());
        queue.push_back(std::move(x));
      }
    }
  }
  ElementList elements(seen.begin(), seen.end());
  for (auto& e : elements) e = e.with_depth(S.ambient().n);
  std::sort(elements.begin(), elements.end());
  GeneratedSubgroup r = S;
  r.elements_ = std::make_shared<const ElementList>(std::move(elements));
  return r;
}

/// All elements of G (enumerates the full wreath group).
inline GeneratedSubgroup enumerate_group(const TruncatedWreathGroup& G, std::size_t cap = kDefaultOrderCap) {
  return enumerate(GeneratedSubgroup::full(G, cap));
}

/// Orbits of <acting set> on L_level, via union-find over generator images.
inline LevelPartition orbits(const GeneratedSubgroup& S, int level) {
  const int d = S.ambient().d;
  auto level_set = LevelSet::full(d, level);
  const auto& verts = level_set.members();
  std::vector<std::size_t> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : S.acting_set()) {
    for (std::size_t i = 0; i < verts.size(); ++i) {
      std::size_t j = apply(g, verts[i]).index(d);
      std::size_t a = find(i), b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<VertexAddress>> blocks;
  std::vector<int> slot(verts.size(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(slot[r])].push_back(verts[i]);
  }
  return LevelPartition(level, std::move(blocks));
}

inline std::vector<LevelPartition> orbit_sequence(const GeneratedSubgroup& S, int depth) {
  std::vector<LevelPartition> out;
  for (int k = 0; k <= depth; ++k) out.push_back(orbits(S, k));
  return out;
}

inline LevelSet fixed_vertices(const GeneratedSubgroup& S, int level) {
  std::vector<VertexAddress> out;
  for (const auto& v : LevelSet::full(S.ambient().d, level)) {
    bool fixed = std::all_of(S.acting_set().begin(), S.acting_set().end(),
                             [&v](const FinitaryAutomorphism& g) { return apply(g, v) == v; });
    if (fixed) out.push_back(v);
  }
  return LevelSet(level, std::move(out));
}

/// Stab_G(L_m): base generators at every vertex of levels m..n-1.
inline GeneratedSubgroup level_stabilizer_gens(const TruncatedWreathGroup& G, int m) {
  if (m < 0 || m > G.n) throw DepthExceeded("level " + std::to_string(m) + " outside 0.." + std::to_string(G.n));
  return GeneratedSubgroup(G, G.elementary_generators(m));
}

/// Rst_G(V): base generators at every vertex of levels < n lying at or below some v in V.
inline GeneratedSubgroup rigid_stabilizer_gens(const TruncatedWreathGroup& G, const LevelSet& V) {
  if (V.level() > G.n) throw DepthExceeded("vertex set lies below the ambient depth");
  std::vector<VertexAddress> vertices;
  for (const auto& v : V) {
    for (int l = v.level(); l < G.n; ++l) {
      auto sh = shadow_at_level(v, l, G.d);
      vertices.insert(vertices.end(), sh.begin(), sh.end());
    }
  }
  return GeneratedSubgroup(G, G.elementary_at(vertices));
}

/// H^g = g^-1 H g; the element list is carried over when present.
inline GeneratedSubgroup conjugate_subgroup(const GeneratedSubgroup& S, const FinitaryAutomorphism& g) {
  std::vector<FinitaryAutomorphism> gens;
  for (const auto& s : S.generators()) gens.push_back(conjugate(s, g));
  if (!S.is_enumerated()) return GeneratedSubgroup(S.ambient(), std::move(gens), S.order_cap());
  ElementList el;
  el.reserve(S.order());
  for (const auto& s : S.elements()) el.push_back(conjugate(s, g));
  return GeneratedSubgroup::with_elements(S.ambient(), std::move(gens), std::move(el), S.order_cap());
}

/// Commutator subgroup: normal closure of the generator commutators, grown
/// until it is closed under conjugation by the generators of S.
inline GeneratedSubgroup derived_subgroup(const GeneratedSubgroup& S) {
  const auto& sg = S.generators();
  std::vector<FinitaryAutomorphism> w;
  for (std::size_t i = 0; i < sg.size(); ++i) {
    for (std::size_t j = i + 1; j < sg.size(); ++j) {
      auto c = commutator(sg[i], sg[j]);
      if (!c.is_identity()) w.push_back(std::move(c));
    }
  }
  GeneratedSubgroup H = enumerate(GeneratedSubgroup(S.ambient(), w, S.order_cap()));
  bool grew = true;
  while (grew) {
    grew = false;
    const auto hg = H.generators();
    for (const auto& h : hg) {
      for (const auto& s : sg) {
        auto c = conjugate(h, s);
        if (!H.contains(c)) {
          w.push_back(std::move(c));
          grew = true;
        }
      }
    }
    if (grew) H = enumerate(GeneratedSubgroup(S.ambient(), w, S.order_cap()));
  }
  return H;
}

namespace detail {

template <class Pred>
GeneratedSubgroup filter_subgroup(const GeneratedSubgroup& S, Pred keep) {
  ElementList out;
  for (const auto& g : S.elements()) {
    if (keep(g)) out.push_back(g);
  }
  return GeneratedSubgroup::from_elements(S.ambient(), std::move(out), S.order_cap());
}

}  // namespace detail

/// Elements of an enumerated S fixing every vertex of V.
inline GeneratedSubgroup pointwise_stabilizer(const GeneratedSubgroup& S, const LevelSet& V) {
  return detail::filter_subgroup(S, [&V](const FinitaryAutomorphism& g) {
    return std::all_of(V.begin(), V.end(), [&g](const VertexAddress& v) { return apply(g, v) == v; });
  });
}

/// Elements of an enumerated S mapping V onto itself.
inline GeneratedSubgroup setwise_stabilizer(const GeneratedSubgroup& S, const LevelSet& V) {
  return detail::filter_subgroup(S, [&V](const FinitaryAutomorphism& g) {
    return std::all_of(V.begin(), V.end(), [&](const VertexAddress& v) { return V.contains(apply(g, v)); });
  });
}

/// A generating set of size at most |L_k| whose orbits on L_k are exactly the
/// target blocks, or none if no subgroup of G has that orbit partition.
inline std::optional<GeneratedSubgroup> find_witness(const LevelPartition& target, const TruncatedWreathGroup& G,
                                                     std::size_t cap = kDefaultOrderCap) {
  target.validate(G.d);
  auto all = enumerate_group(G, cap);
  // Every realizing subgroup preserves each block, so lies in M.
  auto M = detail::filter_subgroup(all, [&target](const FinitaryAutomorphism& g) {
    for (const auto& block : target.blocks) {
      for (const auto& v : block) {
        if (!std::binary_search(block.begin(), block.end(), apply(g, v))) return false;
      }
    }
    return true;
  });
  if (!(orbits(M, target.level) == target)) return std::nullopt;

  std::vector<FinitaryAutomorphism> candidates;
  for (const auto& g : G.elementary_generators()) {
    if (M.contains(g)) candidates.push_back(g);
  }
  candidates.insert(candidates.end(), M.elements().begin(), M.elements().end());

  std::vector<FinitaryAutomorphism> chosen;
  LevelPartition current = LevelPartition::singletons(G.d, target.level);
  for (const auto& c : candidates) {
    if (current == target) break;
    auto trial = chosen;
    trial.push_back(c);
    auto p = orbits(GeneratedSubgroup(G, trial, cap), target.level);
    if (p.blocks.size() < current.blocks.size()) {
      chosen = std::move(trial);
      current = std::move(p);
    }
  }
  return GeneratedSubgroup(G, chosen, cap);
}

}  // namespace irs
