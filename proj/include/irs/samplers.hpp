#pragma once

// Invariant random subgroups at truncation depth: samplers, subgroup
// fingerprints and empirical distributions over sampled subgroups.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "irs/automorphism.hpp"
#include "irs/boundary.hpp"
#include "irs/error.hpp"
#include "irs/groups.hpp"
#include "irs/rational.hpp"
#include "irs/rng.hpp"
#include "irs/tree.hpp"

namespace irs {

enum class StabilizerMode { pointwise, setwise };

inline const char* to_string(StabilizerMode m) { return m == StabilizerMode::pointwise ? "pointwise" : "setwise"; }

/// L^g for Haar-random g in the ambient.
struct UniformConjugate {
  GeneratedSubgroup L;
};

/// Stab(C^g) for Haar-random g; pointwise or setwise on the level-n shadow of C_N.
struct StabilizerOfRandomSet {
  ClosedSetApprox C;
  TruncatedWreathGroup ambient;
  StabilizerMode mode = StabilizerMode::pointwise;
};

/// Preimage of a uniform conjugate of L_top <= G_n under restriction to depth n:
/// conjugated L_top generators together with Stab(L_n).
struct LevelIRS {
  TruncatedWreathGroup ambient;
  int n = 0;
  GeneratedSubgroup L_top;
};

/// Per-component recipe on a tree hanging off the random ray. Coordinates are
/// canonical: the component root's ray child is digit 0 and is never touched.
struct ComponentSpec {
  enum class Top { trivial, full, generators };
  int m = 0;
  Top top = Top::full;
  std::vector<FinitaryAutomorphism> generators;  // canonical, depth <= m, only for Top::generators
};

/// Direct sum over the components K_0..K_(n-1) hanging off a uniform random
/// depth-n ray; component i runs a level-type IRS of its own.
struct FixedRayIRS {
  TruncatedWreathGroup ambient;
  std::vector<ComponentSpec> components;  // missing entries default to {m = 0}

  ComponentSpec component(int i) const {
    auto k = static_cast<std::size_t>(i);
    return k < components.size() ? components[k] : ComponentSpec{};
  }
};

/// FixedRayIRS whose first two components share a randomly conjugated
/// diagonal top {(x, x^c)} of depth m.
struct CoupledIRS {
  FixedRayIRS base;
  int m = 1;
  std::optional<FinitaryAutomorphism> coupling;  // canonical conjugator c
};

/// Control sampler: always returns L itself, with no conjugation.
struct FixedSubgroup {
  GeneratedSubgroup L;
};

using IRSSampler =
    std::variant<UniformConjugate, StabilizerOfRandomSet, LevelIRS, FixedRayIRS, CoupledIRS, FixedSubgroup>;

inline std::string sampler_name(const IRSSampler& s) {
  static const char* names[] = {"UniformConjugate", "StabilizerOfRandomSet", "LevelIRS",
                                "FixedRayIRS",      "CoupledIRS",            "FixedSubgroup"};
  return names[s.index()];
}

inline TruncatedWreathGroup sampler_ambient(const IRSSampler& s) {
  return std::visit(
      [](const auto& x) -> TruncatedWreathGroup {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, UniformConjugate> || std::is_same_v<T, FixedSubgroup>) {
          return x.L.ambient();
        } else if constexpr (std::is_same_v<T, CoupledIRS>) {
          return x.base.ambient;
        } else {
          return x.ambient;
        }
      },
      s);
}

namespace detail {

/// Uniform permutation of the vertex group fixing the digit `keep`.
inline Permutation random_permutation_fixing(int d, Flavor flavor, int keep, Rng& rng) {
  while (true) {
    Permutation p = random_permutation(d, flavor, rng);
    if (p(keep) == keep) return p;
  }
}

/// Canonical component coordinates -> the component rooted at u whose ray
/// child is `ray_digit`: relabel digit 0 <-> ray_digit at the root, then shift.
inline FinitaryAutomorphism transport(const FinitaryAutomorphism& x, const VertexAddress& u, int ray_digit,
                                      int depth) {
  FinitaryAutomorphism y = x;
  if (ray_digit != 0) {
    auto tau = FinitaryAutomorphism::elementary(x.arity(), std::max(1, x.depth()), VertexAddress(),
                                                Permutation::transposition(x.arity(), 0, ray_digit));
    y = conjugate(x, tau);
  }
  return place_at(y, u, depth);
}

/// Haar element of the component group, truncated at relative depth m.
inline FinitaryAutomorphism component_haar(int d, int m, Flavor flavor, Rng& rng) {
  std::vector<FinitaryAutomorphism::Entry> entries;
  if (m >= 1) entries.emplace_back(VertexAddress(), random_permutation_fixing(d, flavor, 0, rng));
  for (int y = 1; y < d; ++y) {
    for (int level = 1; level < m; ++level) {
      auto sh = shadow_at_level(VertexAddress().child(y), level, d);
      for (const auto& v : sh) entries.emplace_back(v, random_permutation(d, flavor, rng));
    }
  }
  return FinitaryAutomorphism::from_entries(d, std::max(m, 0), std::move(entries));
}

/// Generators of the component group at relative levels >= m, canonical
/// coordinates, inside a component of relative depth `height`.
inline std::vector<FinitaryAutomorphism> component_stabilizer(const TruncatedWreathGroup& G, int m, int height) {
  TruncatedWreathGroup canon(G.d, height, G.flavor);
  std::vector<FinitaryAutomorphism> out;
  if (m == 0 && height >= 1) {
    std::vector<int> free_children;
    for (int y = 1; y < G.d; ++y) free_children.push_back(y);
    out = moves_fixing_children(canon, VertexAddress(), free_children);
  }
  std::vector<VertexAddress> vertices;
  for (int y = 1; y < G.d; ++y) {
    for (int level = std::max(m, 1); level < height; ++level) {
      auto sh = shadow_at_level(VertexAddress().child(y), level, G.d);
      vertices.insert(vertices.end(), sh.begin(), sh.end());
    }
  }
  auto more = canon.elementary_at(vertices);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

/// Canonical generators of the top group of a component recipe.
inline std::vector<FinitaryAutomorphism> component_top(const TruncatedWreathGroup& G, const ComponentSpec& spec,
                                                       int height) {
  int m = std::min(spec.m, height);
  switch (spec.top) {
    case ComponentSpec::Top::trivial:
      return {};
    case ComponentSpec::Top::generators:
      for (const auto& x : spec.generators) {
        if (x.support_depth() > m) throw DepthExceeded("component top generator deeper than m");
        if (x.touches_subtree(VertexAddress().child(0)) || x.at(VertexAddress())(0) != 0) {
          throw InvalidArgument("component top generator moves the ray child");
        }
      }
      return spec.generators;
    default: {
      // Everything above relative level m.
      auto all = component_stabilizer(G, 0, height);
      std::vector<FinitaryAutomorphism> out;
      for (const auto& x : all) {
        if (x.support_depth() <= m) out.push_back(x);
      }
      return out;
    }
  }
}

/// Generators of one component IRS, placed in the tree.
inline std::vector<FinitaryAutomorphism> component_sample(const TruncatedWreathGroup& G, const ComponentSpec& spec,
                                                          const VertexAddress& u, int ray_digit, Rng& rng) {
  int height = G.n - u.level();
  int m = std::min(spec.m, height);
  auto gamma = component_haar(G.d, m, G.flavor, rng);
  std::vector<FinitaryAutomorphism> out;
  for (const auto& x : component_top(G, spec, height)) {
    out.push_back(transport(conjugate(x, gamma), u, ray_digit, G.n));
  }
  for (const auto& x : component_stabilizer(G, m, height)) out.push_back(transport(x, u, ray_digit, G.n));
  return out;
}

inline VertexAddress random_ray(int d, int depth, Rng& rng) {
  std::vector<int> digits;
  for (int i = 0; i < depth; ++i) digits.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(d))));
  return VertexAddress::from_digits(digits);
}

}  // namespace detail

/// Draws subgroups from a sampler. Stateful only through caches that do not
/// affect results; one instance per thread.
class Sampler {
 public:
  explicit Sampler(IRSSampler spec) : spec_(std::move(spec)) { validate(); }

  const IRSSampler& spec() const { return spec_; }
  TruncatedWreathGroup ambient() const { return sampler_ambient(spec_); }

  GeneratedSubgroup sample(Rng& rng) {
    return std::visit([&](const auto& s) { return draw(s, rng); }, spec_);
  }

 private:
  void validate() const {
    if (auto* s = std::get_if<LevelIRS>(&spec_)) {
      if (s->n < 0 || s->n > s->ambient.n) throw DepthExceeded("LevelIRS depth outside the ambient");
      TruncatedWreathGroup top(s->ambient.d, s->n, s->ambient.flavor);
      if (!(s->L_top.ambient() == top)) throw InvalidArgument("L_top must live in the depth-n group");
    }
    if (auto* s = std::get_if<StabilizerOfRandomSet>(&spec_)) {
      if (s->C.depth() > s->ambient.n) throw DepthExceeded("closed set deeper than the ambient");
      if (s->C.arity() != s->ambient.d) throw ArityMismatch("closed set and ambient differ in arity");
    }
    if (auto* s = std::get_if<CoupledIRS>(&spec_)) {
      if (s->base.ambient.n < 2) throw PreconditionViolated("coupling needs two components");
      if (s->m < 0 || s->m > s->base.ambient.n - 1) throw DepthExceeded("coupled top deeper than the second component");
    }
  }

  GeneratedSubgroup draw(const UniformConjugate& s, Rng& rng) {
    const auto& G = s.L.ambient();
    return conjugate_subgroup(s.L, haar_sample(G.d, G.n, G.flavor, rng));
  }

  GeneratedSubgroup draw(const FixedSubgroup& s, Rng&) { return s.L; }

  GeneratedSubgroup draw(const StabilizerOfRandomSet& s, Rng& rng) {
    const auto& G = s.ambient;
    auto g = haar_sample(G.d, G.n, G.flavor, rng);
    if (!base_) {
      ambient_elements_ = std::make_unique<GeneratedSubgroup>(enumerate_group(G));
      auto shadow = shadow_at_level(s.C.bottom(), G.n, G.d);
      base_ = std::make_unique<GeneratedSubgroup>(s.mode == StabilizerMode::pointwise
                                                      ? pointwise_stabilizer(*ambient_elements_, shadow)
                                                      : setwise_stabilizer(*ambient_elements_, shadow));
    }
    // Stab(C^g) = Stab(C)^g depends only on the translate.
    auto key = translate_level_set(s.C.bottom(), g);
    auto it = cache_.find(key.members());
    if (it != cache_.end()) return it->second;
    auto H = conjugate_subgroup(*base_, g);
    cache_.emplace(key.members(), H);
    return H;
  }

  GeneratedSubgroup draw(const LevelIRS& s, Rng& rng) {
    const auto& G = s.ambient;
    auto gamma = haar_sample(G.d, s.n, G.flavor, rng);
    // The sample depends only on the conjugate of the top; equal tops share
    // one enumerated subgroup when it fits under the cap.
    auto top = enumerate(conjugate_subgroup(s.L_top, gamma));
    auto it = level_cache_.find(top.elements());
    if (it != level_cache_.end()) return it->second;
    std::vector<FinitaryAutomorphism> gens;
    for (const auto& x : top.generators()) gens.push_back(x.with_depth(G.n));
    auto stab = level_stabilizer_gens(G, s.n).generators();
    gens.insert(gens.end(), stab.begin(), stab.end());
    GeneratedSubgroup H(G, std::move(gens));
    try {
      H = enumerate(H);
    } catch (const OrderCapExceeded&) {
    }
    level_cache_.emplace(top.elements(), H);
    return H;
  }

  GeneratedSubgroup draw(const FixedRayIRS& s, Rng& rng) {
    const auto& G = s.ambient;
    auto ray = detail::random_ray(G.d, G.n, rng);
    std::vector<FinitaryAutomorphism> gens;
    for (int i = 0; i < G.n; ++i) {
      auto part = detail::component_sample(G, s.component(i), ray.prefix(i), ray.digit(i), rng);
      gens.insert(gens.end(), part.begin(), part.end());
    }
    return GeneratedSubgroup(G, std::move(gens));
  }

  GeneratedSubgroup draw(const CoupledIRS& s, Rng& rng) {
    const auto& G = s.base.ambient;
    auto ray = detail::random_ray(G.d, G.n, rng);
    std::vector<FinitaryAutomorphism> gens;
    // Diagonal top on K_0 and K_1, conjugated by independent component Haar elements.
    auto a = detail::component_haar(G.d, s.m, G.flavor, rng);
    auto b = detail::component_haar(G.d, s.m, G.flavor, rng);
    auto top = detail::component_top(G, ComponentSpec{s.m, ComponentSpec::Top::full, {}}, G.n - 1);
    for (const auto& x : top) {
      auto x0 = conjugate(x, a);
      auto x1 = conjugate(s.coupling ? conjugate(x, *s.coupling) : x, b);
      gens.push_back(compose(detail::transport(x0, ray.prefix(0), ray.digit(0), G.n),
                             detail::transport(x1, ray.prefix(1), ray.digit(1), G.n)));
    }
    for (int i = 0; i < 2; ++i) {
      for (const auto& x : detail::component_stabilizer(G, s.m, G.n - i)) {
        gens.push_back(detail::transport(x, ray.prefix(i), ray.digit(i), G.n));
      }
    }
    for (int i = 2; i < G.n; ++i) {
      auto part = detail::component_sample(G, s.base.component(i), ray.prefix(i), ray.digit(i), rng);
      gens.insert(gens.end(), part.begin(), part.end());
    }
    return GeneratedSubgroup(G, std::move(gens));
  }

  IRSSampler spec_;
  std::unique_ptr<GeneratedSubgroup> ambient_elements_;
  std::unique_ptr<GeneratedSubgroup> base_;
  std::map<std::vector<VertexAddress>, GeneratedSubgroup> cache_;
  std::map<ElementList, GeneratedSubgroup> level_cache_;
};

inline GeneratedSubgroup sample(const IRSSampler& s, Rng& rng) {
  Sampler sm(s);
  return sm.sample(rng);
}

/// Canonical encoding of a subgroup's image in the depth-k quotient: its
/// sorted, deduplicated restricted elements; or, past the order cap, the
/// orbit and fixed-set sequences.
struct SubgroupFingerprint {
  int depth = 0;
  bool exact = true;
  std::uint64_t hash = 0;
  std::shared_ptr<const ElementList> elements;
  std::string coarse;

  std::size_t size() const { return elements ? elements->size() : 0; }

  friend bool operator==(const SubgroupFingerprint& a, const SubgroupFingerprint& b) {
    if (a.depth != b.depth || a.exact != b.exact || a.hash != b.hash) return false;
    return a.exact ? *a.elements == *b.elements : a.coarse == b.coarse;
  }
};

namespace detail {

inline std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline SubgroupFingerprint exact_fingerprint(ElementList restricted, int depth) {
  std::sort(restricted.begin(), restricted.end());
  restricted.erase(std::unique(restricted.begin(), restricted.end()), restricted.end());
  SubgroupFingerprint fp;
  fp.depth = depth;
  fp.hash = fnv_mix(0xcbf29ce484222325ULL, static_cast<std::uint64_t>(depth));
  for (const auto& e : restricted) fp.hash = fnv_mix(fp.hash, e.hash());
  fp.elements = std::make_shared<const ElementList>(std::move(restricted));
  return fp;
}

}  // namespace detail

/// Largest quotient image enumerated before falling back to the coarse form.
inline constexpr std::size_t kFingerprintCap = 1 << 16;

inline SubgroupFingerprint fingerprint(const GeneratedSubgroup& H, int depth, std::size_t cap = kFingerprintCap) {
  if (depth < 0 || depth > H.ambient().n) throw DepthExceeded("fingerprint depth outside the ambient");
  ElementList restricted;
  if (H.is_enumerated()) {
    restricted.reserve(H.order());
    for (const auto& g : H.elements()) restricted.push_back(restrict_to_depth(g, depth).with_depth(depth));
    return detail::exact_fingerprint(std::move(restricted), depth);
  }
  try {
    // Restriction is a homomorphism, so the image is generated by the
    // restricted generators and can be enumerated in the small quotient.
    TruncatedWreathGroup Q(H.ambient().d, depth, H.ambient().flavor);
    std::vector<FinitaryAutomorphism> gens;
    for (const auto& g : H.generators()) gens.push_back(restrict_to_depth(g, depth).with_depth(depth));
    GeneratedSubgroup image = enumerate(GeneratedSubgroup(Q, std::move(gens), cap));
    restricted = image.elements();
    return detail::exact_fingerprint(std::move(restricted), depth);
  } catch (const OrderCapExceeded&) {
    std::ostringstream out;
    for (int k = 0; k <= depth; ++k) {
      out << "P" << k << ":";
      for (const auto& block : orbits(H, k).blocks) {
        out << "[";
        for (const auto& v : block) out << v.str() << ",";
        out << "]";
      }
      out << "F" << k << ":";
      for (const auto& v : fixed_vertices(H, k)) out << v.str() << ",";
    }
    SubgroupFingerprint fp;
    fp.depth = depth;
    fp.exact = false;
    fp.coarse = out.str();
    fp.hash = 0xcbf29ce484222325ULL;
    for (char c : fp.coarse) fp.hash = detail::fnv_mix(fp.hash, static_cast<unsigned char>(c));
    return fp;
  }
}

namespace detail {

/// Reuses fingerprints of subgroups sharing one element list (cached samples).
class FingerprintMemo {
 public:
  SubgroupFingerprint operator()(const GeneratedSubgroup& H, int depth) {
    auto key = H.shared_elements();
    if (!key) return fingerprint(H, depth);
    auto it = memo_.find(key.get());
    if (it != memo_.end() && it->second.second.depth == depth) return it->second.second;
    if (memo_.size() >= 4096) memo_.clear();
    auto fp = fingerprint(H, depth);
    memo_[key.get()] = {key, fp};
    return fp;
  }

 private:
  // The shared_ptr keeps the address from being reused while memoized.
  std::unordered_map<const ElementList*, std::pair<std::shared_ptr<const ElementList>, SubgroupFingerprint>> memo_;
};

}  // namespace detail

/// Fingerprint of H^g computed from that of H.
inline SubgroupFingerprint conjugate_fingerprint(const SubgroupFingerprint& fp, const FinitaryAutomorphism& g) {
  if (!fp.exact) throw PreconditionViolated("coarse fingerprints are not conjugated element-wise");
  auto gr = restrict_to_depth(g, fp.depth);
  ElementList out;
  out.reserve(fp.size());
  for (const auto& e : *fp.elements) out.push_back(conjugate(e, gr).with_depth(fp.depth));
  return detail::exact_fingerprint(std::move(out), fp.depth);
}

/// Counts of distinct fingerprints; iteration order is by hash, then size.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  explicit EmpiricalDistribution(std::uint64_t seed) : seed_(seed) {}

  void add(const SubgroupFingerprint& fp, std::uint64_t count = 1) {
    auto& bucket = index_[fp.hash];
    for (std::size_t i : bucket) {
      if (entries_[i].first == fp) {
        entries_[i].second += count;
        total_ += count;
        return;
      }
    }
    bucket.push_back(entries_.size());
    entries_.emplace_back(fp, count);
    total_ += count;
  }

  void merge(const EmpiricalDistribution& other) {
    for (const auto& [fp, c] : other.entries_) add(fp, c);
  }

  std::uint64_t total() const { return total_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t support_size() const { return entries_.size(); }

  std::uint64_t count(const SubgroupFingerprint& fp) const {
    auto it = index_.find(fp.hash);
    if (it == index_.end()) return 0;
    for (std::size_t i : it->second) {
      if (entries_[i].first == fp) return entries_[i].second;
    }
    return 0;
  }

  std::vector<std::pair<SubgroupFingerprint, std::uint64_t>> sorted() const {
    auto out = entries_;
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.first.hash != b.first.hash) return a.first.hash < b.first.hash;
      if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
      return a.second < b.second;
    });
    return out;
  }

  Rational max_frequency() const {
    std::uint64_t best = 0;
    for (const auto& e : entries_) best = std::max(best, e.second);
    if (total_ == 0) return 0;
    return Rational(BigInt(best), BigInt(total_));
  }

  /// Exact total-variation distance between the two empirical laws.
  friend Rational total_variation(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    if (a.total_ == 0 || b.total_ == 0) throw PreconditionViolated("empty distribution");
    Rational sum = 0;
    auto term = [&](const SubgroupFingerprint& fp) {
      Rational pa(BigInt(a.count(fp)), BigInt(a.total_));
      Rational pb(BigInt(b.count(fp)), BigInt(b.total_));
      return pa > pb ? Rational(pa - pb) : Rational(pb - pa);
    };
    for (const auto& e : a.entries_) sum += term(e.first);
    for (const auto& e : b.entries_) {
      if (a.count(e.first) == 0) sum += term(e.first);
    }
    return sum / 2;
  }

  friend std::size_t joint_support(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    std::size_t n = a.support_size();
    for (const auto& e : b.entries_) n += a.count(e.first) == 0 ? 1 : 0;
    return n;
  }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t total_ = 0;
  std::vector<std::pair<SubgroupFingerprint, std::uint64_t>> entries_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> index_;
};

/// Trial t draws from Rng(seed).split(t), so results do not depend on scheduling.
inline EmpiricalDistribution sample_distribution(const IRSSampler& spec, std::uint64_t trials, int depth,
                                                 std::uint64_t seed) {
  Sampler s(spec);
  Rng root(seed);
  EmpiricalDistribution dist(seed);
  detail::FingerprintMemo memo;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng r = root.split(t);
    dist.add(memo(s.sample(r), depth));
  }
  return dist;
}

struct AtomMass {
  Rational max_frequency;
  std::size_t support_size = 0;
};

inline AtomMass estimate_atom_mass(const IRSSampler& spec, std::uint64_t trials, int depth, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("trials must be positive");
  auto dist = sample_distribution(spec, trials, depth, seed);
  return {dist.max_frequency(), dist.support_size()};
}

struct InvarianceResult {
  Rational statistic;
  double threshold = 0;
  bool pass = false;
  std::size_t support = 0;
};

/// TV distance between fingerprints of samples and of independent samples
/// conjugated by g; passes below 4 sqrt(F / trials), F the joint support size.
inline InvarianceResult invariance_test(const IRSSampler& spec, const FinitaryAutomorphism& g, std::uint64_t trials,
                                        std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("trials must be positive");
  const auto G = sampler_ambient(spec);
  if (!G.contains(g)) throw InvalidArgument("conjugator outside the ambient group");
  Sampler s(spec);
  Rng root(seed);
  EmpiricalDistribution plain(seed), moved(seed);
  detail::FingerprintMemo memo;
  std::unordered_map<std::uint64_t, std::vector<std::pair<SubgroupFingerprint, SubgroupFingerprint>>> moved_memo;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng r = root.split(t);
    plain.add(memo(s.sample(r), G.n));
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng r = root.split(trials + t);
    auto H = s.sample(r);
    auto fp = memo(H, G.n);
    if (!fp.exact) {
      moved.add(fingerprint(conjugate_subgroup(H, g), G.n));
      continue;
    }
    auto& bucket = moved_memo[fp.hash];
    auto it = std::find_if(bucket.begin(), bucket.end(), [&](const auto& e) { return e.first == fp; });
    if (it == bucket.end()) {
      bucket.emplace_back(fp, conjugate_fingerprint(fp, g));
      it = std::prev(bucket.end());
    }
    moved.add(it->second);
  }
  InvarianceResult out;
  out.statistic = total_variation(plain, moved);
  out.support = joint_support(plain, moved);
  out.threshold = 4.0 * std::sqrt(static_cast<double>(out.support) / static_cast<double>(trials));
  out.pass = to_double(out.statistic) < out.threshold;
  return out;
}

/// Fixed vertices at the ambient level, closed upward and cut at `depth`.
inline ClosedSetApprox fix_set_of_sample(const GeneratedSubgroup& H, int depth) {
  const auto& G = H.ambient();
  if (depth > G.n) throw DepthExceeded("fixed-set depth below the ambient depth");
  return ClosedSetApprox::from_deep_level(G.d, depth, fixed_vertices(H, G.n));
}

/// Sections at v of the elements of an enumerated H that fix v.
inline ElementList project_to_subtree(const GeneratedSubgroup& H, const VertexAddress& v) {
  ElementList out;
  for (const auto& g : H.elements()) {
    if (apply(g, v) == v) out.push_back(section(g, v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace irs
