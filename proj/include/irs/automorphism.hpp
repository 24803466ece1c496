#pragma once

// Finitary automorphisms of the d-ary tree stored as sparse portraits.
//
// Convention: automorphisms act on the right, w^(ab) = (w^a)^b, and
// compose(a, b) is "a, then b". Conjugation is s^g = g^-1 s g.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "irs/error.hpp"
#include "irs/permutation.hpp"
#include "irs/rational.hpp"
#include "irs/rng.hpp"
#include "irs/tree.hpp"

namespace irs {

enum class Flavor { symmetric, alternating };

inline const char* to_string(Flavor f) { return f == Flavor::symmetric ? "symmetric" : "alternating"; }

inline Flavor parse_flavor(const std::string& s) {
  if (s == "symmetric" || s == "sym" || s == "S") return Flavor::symmetric;
  if (s == "alternating" || s == "alt" || s == "A") return Flavor::alternating;
  throw ParseError("unknown flavor '" + s + "'");
}

class FinitaryAutomorphism {
 public:
  using Entry = std::pair<VertexAddress, Permutation>;

  FinitaryAutomorphism() : d_(2), depth_(0) {}
  FinitaryAutomorphism(int d, int depth) : d_(d), depth_(depth) {
    check_arity(d);
    if (depth < 0) throw InvalidArgument("negative depth");
  }

  static FinitaryAutomorphism identity(int d, int depth = 0) { return FinitaryAutomorphism(d, depth); }

  /// Builds from arbitrary (vertex, permutation) pairs; identity entries are
  /// dropped and the rest sorted. Throws on duplicate keys or keys too deep.
  static FinitaryAutomorphism from_entries(int d, int depth, std::vector<Entry> entries) {
    FinitaryAutomorphism g(d, depth);
    for (const auto& [v, p] : entries) {
      if (!v.valid_for(d)) throw InvalidArgument("portrait key '" + v.str() + "' invalid for arity");
      if (v.level() >= depth) {
        throw InvalidArgument("portrait key '" + v.str() + "' not above depth " + std::to_string(depth));
      }
      if (p.size() != d) throw ArityMismatch("vertex permutation of wrong size at '" + v.str() + "'");
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries.size(); ++i) {
      if (entries[i].first == entries[i - 1].first) {
        throw InvalidArgument("duplicate portrait key '" + entries[i].first.str() + "'");
      }
    }
    for (auto& e : entries) {
      if (!e.second.is_identity()) g.entries_.push_back(std::move(e));
    }
    return g;
  }

  /// The single vertex permutation p at v.
  static FinitaryAutomorphism elementary(int d, int depth, const VertexAddress& v, const Permutation& p) {
    return from_entries(d, depth, {{v, p}});
  }

  int arity() const { return d_; }
  int depth() const { return depth_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_identity() const { return entries_.empty(); }

  /// Deepest level carrying a nontrivial permutation plus one (0 for identity).
  int support_depth() const {
    int m = 0;
    for (const auto& e : entries_) m = std::max(m, e.first.level() + 1);
    return m;
  }

  const Permutation* find(const VertexAddress& v) const {
    auto it = lower_bound(v);
    if (it != entries_.end() && it->first == v) return &it->second;
    return nullptr;
  }

  Permutation at(const VertexAddress& v) const {
    const Permutation* p = find(v);
    return p ? *p : Permutation::identity(d_);
  }

  /// True iff some portrait entry lies at or below v.
  bool touches_subtree(const VertexAddress& v) const {
    auto it = lower_bound(v);
    return it != entries_.end() && it->first.has_prefix(v);
  }

  VertexAddress apply(const VertexAddress& w) const {
    VertexAddress out;
    VertexAddress prefix;
    auto lo = entries_.begin();
    for (int i = 0; i < w.level(); ++i) {
      // Successive prefixes increase lexicographically, so the search range only shrinks.
      lo = std::lower_bound(lo, entries_.end(), prefix,
                            [](const Entry& e, const VertexAddress& k) { return e.first < k; });
      if (lo == entries_.end() || !lo->first.has_prefix(prefix)) return out.concat(w.suffix_from(i));
      int y = w.digit(i);
      out.append(lo->first == prefix ? lo->second(y) : y);
      prefix.append(y);
    }
    return out;
  }

  bool is_alternating() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.second.is_even(); });
  }

  /// Same element with the declared depth replaced (must cover the support).
  FinitaryAutomorphism with_depth(int depth) const {
    if (support_depth() > depth) throw DepthExceeded("portrait does not fit in depth " + std::to_string(depth));
    FinitaryAutomorphism r = *this;
    r.depth_ = depth;
    return r;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t x) {
      h ^= x;
      h *= 0x100000001b3ULL;
    };
    mix(static_cast<std::uint64_t>(d_));
    for (const auto& [v, p] : entries_) {
      for (char c : v.str()) mix(static_cast<unsigned char>(c));
      mix(0xff);
      mix(p.code());
    }
    return h;
  }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [v, p] : entries_) {
      if (!first) s += ", ";
      first = false;
      s += "\"" + v.str() + "\": " + p.str();
    }
    return s + "}";
  }

  /// Element equality: the declared depth is bookkeeping and is ignored.
  friend bool operator==(const FinitaryAutomorphism& a, const FinitaryAutomorphism& b) {
    return a.d_ == b.d_ && a.entries_ == b.entries_;
  }

  friend bool operator<(const FinitaryAutomorphism& a, const FinitaryAutomorphism& b) {
    return std::lexicographical_compare(
        a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
        [](const Entry& x, const Entry& y) {
          if (x.first != y.first) return x.first < y.first;
          return x.second < y.second;
        });
  }

 private:
  friend FinitaryAutomorphism compose(const FinitaryAutomorphism&, const FinitaryAutomorphism&);
  friend FinitaryAutomorphism inverse(const FinitaryAutomorphism&);
  friend FinitaryAutomorphism section(const FinitaryAutomorphism&, const VertexAddress&);
  friend FinitaryAutomorphism place_at(const FinitaryAutomorphism&, const VertexAddress&, int);
  friend FinitaryAutomorphism restrict_to_depth(const FinitaryAutomorphism&, int);

  std::vector<Entry>::const_iterator lower_bound(const VertexAddress& v) const {
    return std::lower_bound(entries_.begin(), entries_.end(), v,
                            [](const Entry& e, const VertexAddress& k) { return e.first < k; });
  }

  int d_;
  int depth_;
  std::vector<Entry> entries_;
};

inline VertexAddress apply(const FinitaryAutomorphism& g, const VertexAddress& w) { return g.apply(w); }

namespace detail {

inline void compose_visit(const FinitaryAutomorphism& a, const FinitaryAutomorphism& b,
                          const VertexAddress& w, const VertexAddress& wa, int depth,
                          std::vector<FinitaryAutomorphism::Entry>& out) {
  if (w.level() >= depth) return;
  if (!a.touches_subtree(w) && !b.touches_subtree(wa)) return;
  Permutation pa = a.at(w);
  Permutation pc = pa.then(b.at(wa));
  if (!pc.is_identity()) out.emplace_back(w, pc);
  for (int y = 0; y < a.arity(); ++y) compose_visit(a, b, w.child(y), wa.child(pa(y)), depth, out);
}

}  // namespace detail

/// a then b: apply(compose(a, b), w) == apply(b, apply(a, w)).
inline FinitaryAutomorphism compose(const FinitaryAutomorphism& a, const FinitaryAutomorphism& b) {
  if (a.d_ != b.d_) throw ArityMismatch("compose: arities differ");
  FinitaryAutomorphism c(a.d_, std::max(a.depth_, b.depth_));
  if (a.is_identity()) {
    c.entries_ = b.entries_;
    return c;
  }
  if (b.is_identity()) {
    c.entries_ = a.entries_;
    return c;
  }
  // Preorder over digit strings is lexicographic order, so entries come out sorted.
  detail::compose_visit(a, b, VertexAddress(), VertexAddress(), c.depth_, c.entries_);
  return c;
}

inline FinitaryAutomorphism inverse(const FinitaryAutomorphism& a) {
  FinitaryAutomorphism r(a.d_, a.depth_);
  r.entries_.reserve(a.entries_.size());
  for (const auto& [w, p] : a.entries_) r.entries_.emplace_back(a.apply(w), p.inverse());
  std::sort(r.entries_.begin(), r.entries_.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return r;
}

/// s^g = g^-1 s g.
inline FinitaryAutomorphism conjugate(const FinitaryAutomorphism& s, const FinitaryAutomorphism& g) {
  return compose(compose(inverse(g), s), g);
}

/// [a, b] = a^-1 b^-1 a b.
inline FinitaryAutomorphism commutator(const FinitaryAutomorphism& a, const FinitaryAutomorphism& b) {
  return compose(compose(compose(inverse(a), inverse(b)), a), b);
}

/// Portrait below v with the prefix v deleted.
inline FinitaryAutomorphism section(const FinitaryAutomorphism& g, const VertexAddress& v) {
  FinitaryAutomorphism r(g.d_, std::max(0, g.depth_ - v.level()));
  for (auto it = g.lower_bound(v); it != g.entries_.end() && it->first.has_prefix(v); ++it) {
    r.entries_.emplace_back(it->first.suffix_from(v.level()), it->second);
  }
  return r;
}

/// Copy of h acting inside the subtree at v (inverse of section on Rst(v)).
inline FinitaryAutomorphism place_at(const FinitaryAutomorphism& h, const VertexAddress& v, int depth) {
  if (v.level() + h.support_depth() > depth) {
    throw DepthExceeded("element placed at '" + v.str() + "' exceeds depth " + std::to_string(depth));
  }
  FinitaryAutomorphism r(h.d_, depth);
  r.entries_.reserve(h.entries_.size());
  for (const auto& [w, p] : h.entries_) r.entries_.emplace_back(v.concat(w), p);
  return r;
}

/// Image in the depth-m quotient: entries at levels >= m dropped.
inline FinitaryAutomorphism restrict_to_depth(const FinitaryAutomorphism& g, int m) {
  FinitaryAutomorphism r(g.d_, std::min(g.depth_, m));
  for (const auto& e : g.entries_) {
    if (e.first.level() < m) r.entries_.push_back(e);
  }
  return r;
}

inline FinitaryAutomorphism power(const FinitaryAutomorphism& g, int k) {
  FinitaryAutomorphism r = FinitaryAutomorphism::identity(g.arity(), g.depth());
  for (int i = 0; i < k; ++i) r = compose(r, g);
  return r;
}

/// Order by iterated composition; returns 0 if larger than `limit`.
inline int element_order(const FinitaryAutomorphism& g, int limit = 1 << 20) {
  FinitaryAutomorphism r = g;
  for (int k = 1; k <= limit; ++k) {
    if (r.is_identity()) return k;
    r = compose(r, g);
  }
  return 0;
}

/// 1/2^k with k the deepest level on which a and b act identically.
inline Rational aut_distance(const FinitaryAutomorphism& a, const FinitaryAutomorphism& b) {
  if (a.arity() != b.arity()) throw ArityMismatch("aut_distance: arities differ");
  if (a == b) throw EqualElements("aut_distance of equal elements");
  // The actions agree on L_m iff the portraits agree on all levels < m.
  int k = -1;
  auto consider = [&k](int level) { k = (k < 0) ? level : std::min(k, level); };
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  std::size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
      consider(ea[i++].first.level());
    } else if (i == ea.size() || eb[j].first < ea[i].first) {
      consider(eb[j++].first.level());
    } else {
      if (!(ea[i].second == eb[j].second)) consider(ea[i].first.level());
      ++i;
      ++j;
    }
  }
  return reciprocal_power(2, static_cast<unsigned>(k));
}

/// Uniform random permutation of S_d, or of A_d.
inline Permutation random_permutation(int d, Flavor flavor, Rng& rng) {
  std::vector<int> images(static_cast<std::size_t>(d));
  for (int y = 0; y < d; ++y) images[static_cast<std::size_t>(y)] = y;
  std::shuffle(images.begin(), images.end(), rng);
  Permutation p = Permutation::from_images(images);
  // Right-multiplying odd permutations by (0 1) is a bijection onto A_d.
  if (flavor == Flavor::alternating && !p.is_even()) p.swap_first_two_images();
  return p;
}

/// Uniform element of S_d^wr(n) (or A_d^wr(n)): independent uniform vertex
/// permutations at every vertex of levels 0..n-1, drawn in level order.
inline FinitaryAutomorphism haar_sample(int d, int n, Flavor flavor, Rng& rng) {
  check_arity(d);
  if (n < 0) throw InvalidArgument("negative depth");
  std::vector<FinitaryAutomorphism::Entry> entries;
  for (int level = 0; level < n; ++level) {
    std::uint64_t count = ipow(d, level);
    for (std::uint64_t i = 0; i < count; ++i) {
      entries.emplace_back(VertexAddress::from_index(d, level, i), random_permutation(d, flavor, rng));
    }
  }
  return FinitaryAutomorphism::from_entries(d, n, std::move(entries));
}

}  // namespace irs

template <>
struct std::hash<irs::FinitaryAutomorphism> {
  std::size_t operator()(const irs::FinitaryAutomorphism& g) const noexcept {
    return static_cast<std::size_t>(g.hash());
  }
};
