#pragma once

// Closed subsets of the boundary, approximated by their level sets C_0..C_N.
// A depth-N approximation stands for the clopen set of rays through C_N.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irs/automorphism.hpp"
#include "irs/error.hpp"
#include "irs/groups.hpp"
#include "irs/rational.hpp"
#include "irs/tree.hpp"

namespace irs {

class ClosedSetApprox {
 public:
  ClosedSetApprox() = default;

  /// Validates levels 0..N: C_0 within {root}, and v in C_k iff some child lies in C_(k+1).
  ClosedSetApprox(int d, std::vector<LevelSet> levels) : d_(d), levels_(std::move(levels)) {
    check_arity(d);
    if (levels_.empty()) throw InvalidArgument("a closed set needs at least level 0");
    for (std::size_t k = 0; k < levels_.size(); ++k) {
      if (levels_[k].level() != static_cast<int>(k)) throw InvalidArgument("levels must be listed from 0");
      if (!levels_[k].valid_for(d)) throw InvalidArgument("vertex digit out of range");
    }
    for (std::size_t k = 0; k + 1 < levels_.size(); ++k) {
      std::vector<VertexAddress> parents;
      for (const auto& c : levels_[k + 1]) parents.push_back(*c.parent());
      if (LevelSet(static_cast<int>(k), parents) != levels_[k]) {
        throw InvalidArgument("level sets are not consistent between levels " + std::to_string(k) + " and " +
                              std::to_string(k + 1));
      }
    }
  }

  /// Upward closure of a vertex set at level >= depth, cut at `depth`.
  static ClosedSetApprox from_deep_level(int d, int depth, const LevelSet& deep) {
    if (deep.level() < depth) throw LevelTooShallow("vertex set lies above the requested depth");
    std::vector<LevelSet> levels;
    for (int k = 0; k <= depth; ++k) {
      std::vector<VertexAddress> pref;
      for (const auto& v : deep) pref.push_back(v.prefix(k));
      levels.emplace_back(k, std::move(pref));
    }
    return ClosedSetApprox(d, std::move(levels));
  }

  static ClosedSetApprox empty(int d, int depth) { return from_deep_level(d, depth, LevelSet(depth)); }
  static ClosedSetApprox full(int d, int depth) { return from_deep_level(d, depth, LevelSet::full(d, depth)); }

  static ClosedSetApprox shadow(const VertexAddress& v, int d, int depth) {
    return from_deep_level(d, depth, shadow_at_level(v, std::max(depth, v.level()), d));
  }

  /// The single ray through v, truncated at level(v).
  static ClosedSetApprox ray(const VertexAddress& v, int d) {
    return from_deep_level(d, v.level(), LevelSet(v.level(), {v}));
  }

  /// Union of the shadows of the given vertices.
  static ClosedSetApprox union_of_shadows(const std::vector<VertexAddress>& vs, int d, int depth) {
    std::vector<VertexAddress> deep;
    for (const auto& v : vs) {
      auto sh = shadow_at_level(v, depth, d);
      deep.insert(deep.end(), sh.begin(), sh.end());
    }
    return from_deep_level(d, depth, LevelSet(depth, std::move(deep)));
  }

  int arity() const { return d_; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  const LevelSet& level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
  const std::vector<LevelSet>& levels() const { return levels_; }
  const LevelSet& bottom() const { return levels_.back(); }
  bool is_empty() const { return levels_.front().empty(); }
  bool is_full() const { return bottom().size() == ipow(d_, depth()); }

  /// Measure of the clopen set through C_N.
  Rational measure() const {
    return Rational(BigInt(bottom().size()), BigInt(ipow(d_, depth())));
  }

  ClosedSetApprox truncate(int k) const {
    if (k > depth()) throw DepthExceeded("cannot truncate below the stored depth");
    return ClosedSetApprox(d_, std::vector<LevelSet>(levels_.begin(), levels_.begin() + k + 1));
  }

  /// Same clopen set listed to a deeper level.
  ClosedSetApprox extend(int k) const {
    if (k < depth()) return truncate(k);
    return from_deep_level(d_, k, shadow_at_level(bottom(), k, d_));
  }

  friend bool operator==(const ClosedSetApprox&, const ClosedSetApprox&) = default;

 private:
  int d_ = 2;
  std::vector<LevelSet> levels_;
};

/// Greedy closed set of measure r: full shadows along the d-adic expansion of
/// r plus the ray of the final partial digit.
inline ClosedSetApprox greedy_measure_set(int d, int depth, const Rational& r) {
  check_arity(d);
  if (r < 0 || r > 1) throw InvalidArgument("measure must lie in [0, 1]");
  std::vector<VertexAddress> deep;
  VertexAddress v;
  Rational rem = r;
  bool open_ray = true;
  for (int l = 0; l < depth; ++l) {
    Rational scaled = rem * d;
    BigInt whole = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
    int j = static_cast<int>(whole);
    for (int y = 0; y < std::min(j, d); ++y) {
      auto sh = shadow_at_level(v.child(y), depth, d);
      deep.insert(deep.end(), sh.begin(), sh.end());
    }
    if (j >= d) {
      open_ray = false;
      break;
    }
    rem = scaled - j;
    v = v.child(j);
  }
  if (open_ray) deep.push_back(v);
  return ClosedSetApprox::from_deep_level(d, depth, LevelSet(depth, std::move(deep)));
}

enum class Color : std::uint8_t { red, green, blue };

inline const char* to_string(Color c) {
  switch (c) {
    case Color::red:
      return "red";
    case Color::green:
      return "green";
    default:
      return "blue";
  }
}

/// Colors of every vertex on levels 0..N, stored per level by vertex index.
class Coloring {
 public:
  Coloring() = default;
  Coloring(int d, int depth) : d_(d) {
    for (int k = 0; k <= depth; ++k) colors_.emplace_back(ipow(d, k), Color::blue);
  }

  int arity() const { return d_; }
  int depth() const { return static_cast<int>(colors_.size()) - 1; }
  Color color(const VertexAddress& v) const {
    return colors_[static_cast<std::size_t>(v.level())][v.index(d_)];
  }
  void set(const VertexAddress& v, Color c) { colors_[static_cast<std::size_t>(v.level())][v.index(d_)] = c; }

  std::vector<VertexAddress> vertices_of(Color c, int level) const {
    std::vector<VertexAddress> out;
    const auto& row = colors_[static_cast<std::size_t>(level)];
    for (std::uint64_t i = 0; i < row.size(); ++i) {
      if (row[i] == c) out.push_back(VertexAddress::from_index(d_, level, i));
    }
    return out;
  }

  /// Red and blue are inherited by children; parents of green vertices are green.
  bool satisfies_heredity() const {
    for (int k = 1; k <= depth(); ++k) {
      for (const auto& v : LevelSet::full(d_, k)) {
        Color pc = color(*v.parent());
        Color c = color(v);
        if (pc == Color::red && c != Color::red) return false;
        if (pc == Color::blue && c != Color::blue) return false;
        if (c == Color::green && pc != Color::green) return false;
      }
    }
    return true;
  }

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  int d_ = 2;
  std::vector<std::vector<Color>> colors_;
};

/// Red iff every level-N descendant lies in C_N, blue iff none does.
inline Coloring coloring_from_set(const ClosedSetApprox& C) {
  const int d = C.arity();
  const int N = C.depth();
  Coloring phi(d, N);
  std::vector<std::uint64_t> count(ipow(d, N), 0);
  for (const auto& v : C.bottom()) count[v.index(d)] = 1;
  for (int k = N; k >= 0; --k) {
    std::uint64_t cap = ipow(d, N - k);
    for (std::uint64_t i = 0; i < count.size(); ++i) {
      auto v = VertexAddress::from_index(d, k, i);
      phi.set(v, count[i] == cap ? Color::red : count[i] == 0 ? Color::blue : Color::green);
    }
    if (k == 0) break;
    std::vector<std::uint64_t> up(ipow(d, k - 1), 0);
    for (std::uint64_t i = 0; i < count.size(); ++i) up[i / static_cast<std::uint64_t>(d)] += count[i];
    count = std::move(up);
  }
  return phi;
}

/// Translated coloring: phi^g(w^g) = phi(w).
inline Coloring translate_coloring(const Coloring& phi, const FinitaryAutomorphism& g) {
  Coloring out(phi.arity(), phi.depth());
  for (int k = 0; k <= phi.depth(); ++k) {
    for (const auto& v : LevelSet::full(phi.arity(), k)) out.set(apply(g, v), phi.color(v));
  }
  return out;
}

inline bool is_clopen_at_depth(const ClosedSetApprox& C, int k) {
  if (k < 0 || k > C.depth()) throw DepthExceeded("level outside the stored depth");
  return coloring_from_set(C).vertices_of(Color::green, k).empty();
}

/// 1/2^k with k the deepest level where the level sets agree.
inline LevelDistance hausdorff_distance_approx(const ClosedSetApprox& A, const ClosedSetApprox& B) {
  if (A.arity() != B.arity()) throw ArityMismatch("closed sets over different trees");
  if (A.depth() != B.depth()) throw InvalidArgument("closed sets must share a truncation depth");
  if (A.is_empty() || B.is_empty()) throw InvalidArgument("Hausdorff distance needs nonempty sets");
  LevelDistance r;
  int k = 0;
  while (k + 1 <= A.depth() && A.level(k + 1) == B.level(k + 1)) ++k;
  r.agreement_level = k;
  r.equal_at_truncation = k == A.depth();
  r.value = reciprocal_power(2, static_cast<unsigned>(k));
  return r;
}

inline ClosedSetApprox translate_set(const ClosedSetApprox& C, const FinitaryAutomorphism& g) {
  if (g.arity() != C.arity()) throw ArityMismatch("automorphism and set over different trees");
  std::vector<VertexAddress> moved;
  for (const auto& v : C.bottom()) moved.push_back(apply(g, v));
  return ClosedSetApprox::from_deep_level(C.arity(), C.depth(), LevelSet(C.depth(), std::move(moved)));
}

inline LevelSet translate_level_set(const LevelSet& S, const FinitaryAutomorphism& g) {
  std::vector<VertexAddress> moved;
  for (const auto& v : S) moved.push_back(apply(g, v));
  return LevelSet(S.level(), std::move(moved));
}

/// T~_i: the first i levels of the tree of C together with the components of
/// T minus the edges of that tree which hang off F_i = C_i.
struct SubtreeDescriptor {
  int attach_level = 0;
  LevelSet root_set;
  std::vector<VertexAddress> hanging_roots;  // children of F_i outside C_(i+1), sorted

  bool in_hanging_part(const VertexAddress& v) const {
    return std::any_of(hanging_roots.begin(), hanging_roots.end(),
                       [&v](const VertexAddress& r) { return v.has_prefix(r); });
  }

  /// Membership in T~_i: hanging part, or a vertex of the tree of C up to level i.
  bool member(const VertexAddress& v, const ClosedSetApprox& C) const {
    if (in_hanging_part(v)) return true;
    return v.level() <= attach_level && v.level() <= C.depth() && C.level(v.level()).contains(v);
  }

  /// Boundary piece at level n: the level-n vertices below the hanging roots.
  LevelSet boundary_piece(int n, int d) const {
    std::vector<VertexAddress> out;
    for (const auto& r : hanging_roots) {
      if (r.level() > n) continue;
      auto sh = shadow_at_level(r, n, d);
      out.insert(out.end(), sh.begin(), sh.end());
    }
    return LevelSet(n, std::move(out));
  }

  friend bool operator==(const SubtreeDescriptor&, const SubtreeDescriptor&) = default;
};

/// Decomposition with respect to C, one descriptor per attach level 0..N. The
/// empty set yields the single descriptor whose hanging part is the whole tree.
inline std::vector<SubtreeDescriptor> decompose(const ClosedSetApprox& C) {
  const int d = C.arity();
  if (C.is_empty()) {
    return {SubtreeDescriptor{0, LevelSet(0), {VertexAddress()}}};
  }
  std::vector<SubtreeDescriptor> out;
  for (int i = 0; i <= C.depth(); ++i) {
    SubtreeDescriptor s{i, C.level(i), {}};
    if (i < C.depth()) {
      for (const auto& f : C.level(i)) {
        for (int y = 0; y < d; ++y) {
          auto c = f.child(y);
          if (!C.level(i + 1).contains(c)) s.hanging_roots.push_back(c);
        }
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// One hanging subtree T_j of the introduction's decomposition.
struct HangingSubtree {
  int attach_level = 0;
  VertexAddress root;
};

/// The pure-hanging-subtree view: every component of T minus the tree of C.
inline std::vector<HangingSubtree> hanging_subtrees(const ClosedSetApprox& C) {
  std::vector<HangingSubtree> out;
  for (const auto& s : decompose(C)) {
    for (const auto& r : s.hanging_roots) out.push_back({s.attach_level, r});
  }
  return out;
}

/// Whether m_i counts levels inside each hanging subtree (introduction form)
/// or is an absolute level inside T~_i (section-four form).
enum class DecompositionStyle { hanging, spine };

/// Depths m_i indexed by attach level; levels not listed use `fallback`.
struct CongruenceSpec {
  std::vector<int> depths;
  int fallback = 0;
  DecompositionStyle style = DecompositionStyle::hanging;

  int at(int attach_level) const {
    auto i = static_cast<std::size_t>(attach_level);
    int m = i < depths.size() ? depths[i] : fallback;
    if (m < 0) throw InvalidArgument("congruence depth must be non-negative");
    return m;
  }
};

struct GeneralizedStabilizer {
  GeneratedSubgroup group;
  std::vector<VertexAddress> truncated_roots;  // subtrees whose level m_i lies below the ambient depth
};

namespace detail {

inline int first_active_level(const HangingSubtree& h, int m, DecompositionStyle style) {
  return style == DecompositionStyle::hanging ? h.root.level() + m : std::max(m, h.root.level());
}

/// Permutations at v fixing every child in `keep` (generators of the symmetric
/// or alternating group on the remaining children).
inline std::vector<FinitaryAutomorphism> moves_fixing_children(const TruncatedWreathGroup& G,
                                                               const VertexAddress& v,
                                                               const std::vector<int>& free_children) {
  std::vector<FinitaryAutomorphism> out;
  const auto& c = free_children;
  if (G.flavor == Flavor::symmetric) {
    for (std::size_t j = 1; j < c.size(); ++j) {
      out.push_back(FinitaryAutomorphism::elementary(G.d, G.n, v, Permutation::transposition(G.d, c[0], c[j])));
    }
  } else {
    for (std::size_t j = 2; j < c.size(); ++j) {
      out.push_back(FinitaryAutomorphism::elementary(G.d, G.n, v, Permutation::cycle(G.d, {c[0], c[1], c[j]})));
    }
  }
  return out;
}

template <class PerSubtree>
GeneralizedStabilizer generalized_stabilizer(const ClosedSetApprox& C, const CongruenceSpec& spec,
                                             const TruncatedWreathGroup& G, PerSubtree per_subtree) {
  if (C.arity() != G.d) throw ArityMismatch("closed set and group over different trees");
  if (C.depth() > G.n) throw DepthExceeded("closed set is deeper than the ambient group");
  // Read C as the clopen set it stands for, down to the ambient depth.
  ClosedSetApprox Cn = C.extend(G.n);
  GeneralizedStabilizer out;
  std::vector<FinitaryAutomorphism> gens;
  for (const auto& h : hanging_subtrees(Cn)) {
    int m = spec.at(h.attach_level);
    int from = first_active_level(h, m, spec.style);
    if (from >= G.n) {
      out.truncated_roots.push_back(h.root);
      continue;
    }
    auto g = per_subtree(h.root, from);
    gens.insert(gens.end(), g.begin(), g.end());
  }
  if (spec.style == DecompositionStyle::spine && !Cn.is_empty()) {
    // m_i <= i lets T~_i move the hanging roots at F_i among themselves.
    for (int i = 0; i < std::min(Cn.depth(), G.n); ++i) {
      if (spec.at(i) > i) continue;
      for (const auto& f : Cn.level(i)) {
        std::vector<int> free_children;
        for (int y = 0; y < G.d; ++y) {
          if (!Cn.level(i + 1).contains(f.child(y))) free_children.push_back(y);
        }
        auto g = moves_fixing_children(G, f, free_children);
        gens.insert(gens.end(), g.begin(), g.end());
      }
    }
  }
  out.group = GeneratedSubgroup(G, std::move(gens));
  return out;
}

}  // namespace detail

/// L(C, (m_i)): direct sum over hanging subtrees of their level-m_i stabilizers.
inline GeneralizedStabilizer generalized_congruence_gens(const ClosedSetApprox& C, const CongruenceSpec& spec,
                                                         const TruncatedWreathGroup& G) {
  return detail::generalized_stabilizer(C, spec, G, [&G](const VertexAddress& root, int from) {
    std::vector<VertexAddress> vertices;
    for (int l = from; l < G.n; ++l) {
      auto sh = shadow_at_level(root, l, G.d);
      vertices.insert(vertices.end(), sh.begin(), sh.end());
    }
    return G.elementary_at(vertices);
  });
}

/// Same construction with the rigid level stabilizers of each subtree.
inline GeneralizedStabilizer generalized_rigid_gens(const ClosedSetApprox& C, const CongruenceSpec& spec,
                                                    const TruncatedWreathGroup& G) {
  return detail::generalized_stabilizer(C, spec, G, [&G](const VertexAddress& root, int from) {
    return rigid_stabilizer_gens(G, shadow_at_level(root, from, G.d)).generators();
  });
}

/// Green spine u_0..u_(N-1) (leftmost choice) extended by the first child of
/// u_(N-1) inside C_N; none when level N-1 carries no green vertex.
inline std::optional<VertexAddress> find_green_ray(const ClosedSetApprox& C) {
  if (C.depth() < 1) return std::nullopt;
  auto phi = coloring_from_set(C);
  auto greens = phi.vertices_of(Color::green, C.depth() - 1);
  if (greens.empty()) return std::nullopt;
  const auto& u = greens.front();
  for (int y = 0; y < C.arity(); ++y) {
    if (C.bottom().contains(u.child(y))) return u.child(y);
  }
  return std::nullopt;
}

/// The green path ending in find_green_ray(C), as prefixes u_0..u_N.
inline std::vector<VertexAddress> green_ray_path(const ClosedSetApprox& C) {
  std::vector<VertexAddress> out;
  auto end = find_green_ray(C);
  if (!end) return out;
  for (int k = 0; k <= end->level(); ++k) out.push_back(end->prefix(k));
  return out;
}

/// min over g in G of the level distance between C1^g and C2.
inline LevelDistance class_distance_at_depth(const ClosedSetApprox& C1, const ClosedSetApprox& C2,
                                             const GeneratedSubgroup& G) {
  LevelDistance best;
  bool have = false;
  for (const auto& g : G.elements()) {
    auto r = hausdorff_distance_approx(translate_set(C1, g), C2);
    if (!have || r.agreement_level > best.agreement_level) {
      best = r;
      have = true;
      if (r.equal_at_truncation) break;
    }
  }
  return best;
}

}  // namespace irs
