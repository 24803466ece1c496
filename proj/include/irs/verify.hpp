#pragma once

// Exact and statistical checks of the finite ingredients behind the IRS
// results. Every check returns a CheckReport; failures carry a counterexample
// that replays from the recorded parameters and seed.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "irs/automorphism.hpp"
#include "irs/boundary.hpp"
#include "irs/error.hpp"
#include "irs/groups.hpp"
#include "irs/io.hpp"
#include "irs/rational.hpp"
#include "irs/rng.hpp"
#include "irs/samplers.hpp"
#include "irs/tree.hpp"

namespace irs {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    default:
      return "inconclusive";
  }
}

struct CheckReport {
  std::string check;
  Json params = Json::object();
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::pass;
  Json counterexample = nullptr;
  Json details = Json::object();
  double ms = 0;

  bool passed() const { return verdict == Verdict::pass; }
};

/// Runtime is left out unless asked for, so reports stay byte-identical.
inline Json to_json(const CheckReport& r, bool with_timing = false) {
  Json out{{"check", r.check},
           {"params", r.params},
           {"seed", r.seed},
           {"verdict", to_string(r.verdict)},
           {"counterexample", r.counterexample},
           {"details", r.details}};
  if (with_timing) out["ms"] = r.ms;
  return out;
}

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline CheckReport start_report(const char* name, Json params, std::uint64_t seed = 0) {
  CheckReport r;
  r.check = name;
  r.params = std::move(params);
  r.seed = seed;
  return r;
}

/// Haar element of Rst(L_k) at depth n: independent Haar portraits below each level-k vertex.
inline FinitaryAutomorphism haar_rigid_level(int d, int n, int k, Flavor flavor, Rng& rng) {
  std::vector<FinitaryAutomorphism::Entry> entries;
  for (const auto& v : LevelSet::full(d, k)) {
    auto h = haar_sample(d, n - k, flavor, rng);
    for (const auto& [w, p] : h.entries()) entries.emplace_back(v.concat(w), p);
  }
  return FinitaryAutomorphism::from_entries(d, n, std::move(entries));
}

/// Element moving `from` onto `to` (same level, common ancestor `top`) whose
/// support lies on the path from `top` to `from`.
inline FinitaryAutomorphism path_mover(const TruncatedWreathGroup& G, const VertexAddress& top,
                                       const VertexAddress& from, const VertexAddress& to) {
  std::vector<FinitaryAutomorphism::Entry> entries;
  for (int l = top.level(); l < from.level(); ++l) {
    int a = from.digit(l), b = to.digit(l);
    if (a == b) continue;
    Permutation p = Permutation::transposition(G.d, a, b);
    if (G.flavor == Flavor::alternating) {
      int c = 0;
      while (c == a || c == b) ++c;
      p = Permutation::cycle(G.d, {a, b, c});
    }
    entries.emplace_back(from.prefix(l), p);
  }
  return FinitaryAutomorphism::from_entries(G.d, G.n, std::move(entries));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sections of conjugates

/// right: s^g = g^-1 s g, claimed section inverse(sigma_u) . sigma_(u^s).
/// left:  s^g = g s g^-1, claimed section sigma_u . inverse(sigma_(u^s)).
/// mixed: right-action conjugate against the left-action formula (control).
enum class SectionConvention { right, left, mixed };

inline const char* to_string(SectionConvention c) {
  return c == SectionConvention::right ? "right" : c == SectionConvention::left ? "left" : "mixed";
}

inline CheckReport check_conjugate_sections(int d, int n, int k, Flavor flavor, int trials, std::uint64_t seed,
                                            SectionConvention convention = SectionConvention::right) {
  detail::Stopwatch clock;
  if (k < 0 || k >= n) throw InvalidArgument("need 0 <= k < n");
  TruncatedWreathGroup G(d, n, flavor);
  auto r = detail::start_report(
      "conjugate_sections",
      Json{{"d", d}, {"n", n}, {"k", k}, {"flavor", to_string(flavor)}, {"trials", trials},
           {"convention", to_string(convention)}},
      seed);
  Rng root(seed);
  std::uint64_t compared = 0;
  for (int t = 0; t < trials && r.verdict == Verdict::pass; ++t) {
    Rng rng = root.split(static_cast<std::uint64_t>(t));
    auto sbar = haar_sample(d, k, flavor, rng).with_depth(n);
    auto sigma = detail::haar_rigid_level(d, n, k, flavor, rng);
    auto conj = convention == SectionConvention::left ? compose(compose(sigma, sbar), inverse(sigma))
                                                      : conjugate(sbar, sigma);
    for (const auto& u : LevelSet::full(d, k)) {
      auto su = section(sigma, u);
      auto sv = section(sigma, apply(sbar, u));
      auto claimed = convention == SectionConvention::right ? compose(inverse(su), sv) : compose(su, inverse(sv));
      auto actual = section(conj, u);
      ++compared;
      if (!(claimed == actual)) {
        r.verdict = Verdict::fail;
        r.counterexample = Json{{"trial", t},     {"s", to_json(sbar)},         {"sigma", to_json(sigma)},
                                {"u", u.str()},   {"section", to_json(actual)}, {"formula", to_json(claimed)}};
        break;
      }
    }
  }
  r.details["sections_compared"] = compared;
  r.ms = clock.ms();
  return r;
}

/// Sections of s^sigma over D = C minus the first vertex of each cycle, as sigma
/// runs through Rst(C); passes iff the image is all of Rst(D) with equal fibers.
inline CheckReport check_sections_surjective(int d, int n, int k, Flavor flavor,
                                             const std::vector<std::vector<VertexAddress>>& cycles,
                                             bool discard = true, std::size_t cap = kDefaultOrderCap) {
  detail::Stopwatch clock;
  if (k < 0 || k >= n) throw InvalidArgument("need 0 <= k < n");
  Json cyc = Json::array();
  std::vector<VertexAddress> C, D;
  for (const auto& c : cycles) {
    if (c.size() < 3) throw PreconditionViolated("cycles must have length at least 3");
    Json cj = Json::array();
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j].level() != k || !c[j].valid_for(d)) throw InvalidArgument("cycle vertex not on level k");
      cj.push_back(c[j].str());
      C.push_back(c[j]);
      if (j > 0 || !discard) D.push_back(c[j]);
    }
    cyc.push_back(cj);
  }
  {
    auto sorted = C;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidArgument("cycles must be disjoint");
    }
  }
  auto r = detail::start_report("sections_surjective",
                                Json{{"d", d}, {"n", n}, {"k", k}, {"flavor", to_string(flavor)},
                                     {"cycles", cyc}, {"discard", discard}});

  // An element of G_k realizing every cycle.
  auto top = enumerate_group(TruncatedWreathGroup(d, k, flavor), cap);
  std::optional<FinitaryAutomorphism> sbar;
  for (const auto& s : top.elements()) {
    bool ok = true;
    for (const auto& c : cycles) {
      for (std::size_t j = 0; j < c.size() && ok; ++j) ok = apply(s, c[j]) == c[(j + 1) % c.size()];
    }
    if (ok) {
      sbar = s.with_depth(n);
      break;
    }
  }
  if (!sbar) throw PreconditionViolated("no element of G_k has the requested cycles");

  auto subtree_group = enumerate_group(TruncatedWreathGroup(d, n - k, flavor), cap);
  const auto& E = subtree_group.elements();
  const std::size_t e = E.size();
  double total = 1;
  for (std::size_t i = 0; i < C.size(); ++i) total *= static_cast<double>(e);
  if (total > static_cast<double>(cap)) throw OrderCapExceeded(cap, static_cast<std::size_t>(std::min(total, 1e18)));

  std::map<std::vector<FinitaryAutomorphism>, std::uint64_t> image;
  std::vector<std::size_t> digits(C.size(), 0);
  while (true) {
    std::vector<FinitaryAutomorphism::Entry> entries;
    for (std::size_t i = 0; i < C.size(); ++i) {
      for (const auto& [w, p] : E[digits[i]].entries()) entries.emplace_back(C[i].concat(w), p);
    }
    auto sigma = FinitaryAutomorphism::from_entries(d, n, std::move(entries));
    auto conj = conjugate(*sbar, sigma);
    std::vector<FinitaryAutomorphism> key;
    for (const auto& u : D) key.push_back(section(conj, u).with_depth(n - k));
    ++image[key];
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == e) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  double target = 1;
  for (std::size_t i = 0; i < D.size(); ++i) target *= static_cast<double>(e);
  std::set<std::uint64_t> fibers;
  for (const auto& [key, count] : image) fibers.insert(count);
  r.details = Json{{"rst_c_order", static_cast<std::uint64_t>(total)},
                   {"image_size", image.size()},
                   {"rst_d_order", static_cast<std::uint64_t>(target)},
                   {"fiber_sizes", std::vector<std::uint64_t>(fibers.begin(), fibers.end())}};
  if (static_cast<double>(image.size()) != target || fibers.size() != 1) {
    r.verdict = Verdict::fail;
    r.counterexample = Json{{"image_size", image.size()}, {"rst_d_order", static_cast<std::uint64_t>(target)}};
  }
  r.ms = clock.ms();
  return r;
}

/// D, E, F discard the element at positions discards[0..2] of every cycle;
/// checks (D & E) | (E & F) | (D & F) == C.
inline CheckReport check_def_cover(const std::vector<int>& cycle_lengths, std::array<int, 3> discards = {0, 1, 2}) {
  detail::Stopwatch clock;
  auto r = detail::start_report(
      "def_cover", Json{{"cycle_lengths", cycle_lengths}, {"discards", std::vector<int>(discards.begin(), discards.end())}});
  std::set<std::pair<int, int>> C, sets[3];
  for (int i = 0; i < static_cast<int>(cycle_lengths.size()); ++i) {
    int len = cycle_lengths[static_cast<std::size_t>(i)];
    if (len < 3) throw PreconditionViolated("cycle lengths must be at least 3");
    for (int j = 0; j < len; ++j) {
      C.insert({i, j});
      for (int s = 0; s < 3; ++s) {
        if (j != discards[static_cast<std::size_t>(s)]) sets[s].insert({i, j});
      }
    }
  }
  std::set<std::pair<int, int>> cover;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      for (const auto& x : sets[a]) {
        if (sets[b].count(x)) cover.insert(x);
      }
    }
  }
  if (cover != C) {
    r.verdict = Verdict::fail;
    for (const auto& x : C) {
      if (!cover.count(x)) {
        r.counterexample = Json{{"cycle", x.first}, {"position", x.second}};
        break;
      }
    }
  }
  r.details["points"] = C.size();
  r.ms = clock.ms();
  return r;
}

/// All multisets of lengths from `lengths` with 1..max_cycles cycles.
inline std::vector<std::vector<int>> cycle_length_multisets(const std::vector<int>& lengths, int max_cycles) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_cycles) return;
    for (std::size_t i = from; i < lengths.size(); ++i) {
      cur.push_back(lengths[i]);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// check_def_cover over every multiset from cycle_length_multisets.
inline CheckReport check_def_cover_all(const std::vector<int>& lengths, int max_cycles,
                                       std::array<int, 3> discards = {0, 1, 2}) {
  detail::Stopwatch clock;
  auto r = detail::start_report("def_cover",
                                Json{{"lengths", lengths},
                                     {"max_cycles", max_cycles},
                                     {"discards", std::vector<int>(discards.begin(), discards.end())}});
  auto all = cycle_length_multisets(lengths, max_cycles);
  for (const auto& lens : all) {
    auto one = check_def_cover(lens, discards);
    if (!one.passed()) {
      r.verdict = Verdict::fail;
      r.counterexample = Json{{"cycle_lengths", lens}, {"missing", one.counterexample}};
      break;
    }
  }
  r.details["multisets"] = all.size();
  r.ms = clock.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Commutator trick

enum class CommutatorMode { moving, identity_phi };

/// phi moves uw, f and g lie in Rst(uw); asserts [[phi, f], g] == [f, g].
/// identity_phi drops the hypothesis and fails once [f, g] is nontrivial.
inline CheckReport check_grigorchuk_commutator(int d, int n, Flavor flavor, int trials, std::uint64_t seed,
                                               CommutatorMode mode = CommutatorMode::moving) {
  detail::Stopwatch clock;
  if (n < 2) throw PreconditionViolated("need n >= 2 for a nontrivial rigid stabilizer below level 1");
  auto r = detail::start_report("grigorchuk_commutator",
                                Json{{"d", d},
                                     {"n", n},
                                     {"flavor", to_string(flavor)},
                                     {"trials", trials},
                                     {"mode", mode == CommutatorMode::moving ? "moving" : "identity_phi"}},
                                seed);
  Rng root(seed);
  std::uint64_t nontrivial = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = root.split(static_cast<std::uint64_t>(t));
    int L = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, n - 2))));
    auto uw = VertexAddress::from_index(d, L, rng.below(ipow(d, L)));
    auto u = uw.prefix(static_cast<int>(rng.below(static_cast<std::uint64_t>(L))));
    FinitaryAutomorphism phi = FinitaryAutomorphism::identity(d, n);
    if (mode == CommutatorMode::moving) {
      do {
        phi = haar_sample(d, n, flavor, rng);
      } while (apply(phi, uw) == uw);
    }
    auto f = place_at(haar_sample(d, n - L, flavor, rng), uw, n);
    auto g = place_at(haar_sample(d, n - L, flavor, rng), uw, n);
    auto lhs = commutator(commutator(phi, f), g);
    auto rhs = commutator(f, g);
    if (!rhs.is_identity()) ++nontrivial;
    if (!(lhs == rhs)) {
      r.verdict = Verdict::fail;
      r.counterexample = Json{{"trial", t},          {"u", u.str()},       {"uw", uw.str()},
                              {"phi", to_json(phi)}, {"f", to_json(f)},    {"g", to_json(g)},
                              {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}};
      break;
    }
  }
  r.details["nontrivial_commutators"] = nontrivial;
  r.ms = clock.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Fixed points of stabilizers

/// Pointwise stabilizer of the level-n shadow of C_N, its level-n fixed
/// vertices closed upward, compared with C level by level.
inline CheckReport check_fix_stab(const ClosedSetApprox& C, const TruncatedWreathGroup& G,
                                  std::size_t cap = kDefaultOrderCap) {
  detail::Stopwatch clock;
  if (C.arity() != G.d) throw ArityMismatch("closed set and group over different trees");
  if (C.depth() > G.n) throw DepthExceeded("closed set deeper than the group");
  auto r = detail::start_report("fix_stab", Json{{"set", to_json(C)}, {"group", to_json(G)}});
  auto all = enumerate_group(G, cap);
  auto stab = pointwise_stabilizer(all, shadow_at_level(C.bottom(), G.n, G.d));
  auto fix = ClosedSetApprox::from_deep_level(G.d, C.depth(), fixed_vertices(stab, G.n));
  r.details = Json{{"stabilizer_order", stab.order()}, {"fixed", to_json(fix)}};
  for (int k = 0; k <= C.depth(); ++k) {
    if (!(fix.level(k) == C.level(k))) {
      r.verdict = Verdict::fail;
      r.counterexample = Json{{"level", k}, {"fixed", to_json(fix.level(k))}, {"expected", to_json(C.level(k))}};
      break;
    }
  }
  r.ms = clock.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Infinitely many translates of a non-clopen coloring

/// gamma_i fixes u_(n_(i-1)) and maps the shallowest blue descendant w_(n_i)
/// of u_(n_(i-1)) onto the green spine; the colorings phi^gamma_i are then
/// separated by their colors at u_(n_j).
inline CheckReport check_infinite_translates(const ClosedSetApprox& C, int count, const TruncatedWreathGroup& G) {
  detail::Stopwatch clock;
  if (C.arity() != G.d) throw ArityMismatch("closed set and group over different trees");
  if (C.depth() > G.n) throw DepthExceeded("closed set deeper than the group");
  if (count < 1) throw InvalidArgument("count must be positive");
  auto spine = green_ray_path(C);
  if (spine.empty()) throw PreconditionViolated("closed set is clopen at its depth");
  auto r = detail::start_report("infinite_translates", Json{{"set", to_json(C)}, {"count", count}, {"group", to_json(G)}});
  auto phi = coloring_from_set(C);
  const int N = C.depth();

  std::vector<int> levels;  // n_1, n_2, ...
  std::vector<FinitaryAutomorphism> gammas;
  int cur = 0;
  for (int i = 1; i <= count; ++i) {
    const auto& u = spine[static_cast<std::size_t>(cur)];
    std::optional<VertexAddress> w;
    for (int l = cur + 1; l <= N && !w; ++l) {
      for (const auto& x : shadow_at_level(u, l, G.d)) {
        if (phi.color(x) == Color::blue && l < static_cast<int>(spine.size())) {
          w = x;
          break;
        }
      }
    }
    if (!w) throw BudgetExceeded("depth " + std::to_string(N) + " hosts only " + std::to_string(i - 1) + " witnesses");
    int nl = w->level();
    levels.push_back(nl);
    gammas.push_back(detail::path_mover(G, u, *w, spine[static_cast<std::size_t>(nl)]));
    cur = nl;
  }

  std::vector<Coloring> translates;
  for (const auto& g : gammas) translates.push_back(translate_coloring(phi, g));
  Json table = Json::array();
  for (std::size_t i = 0; i < translates.size() && r.verdict == Verdict::pass; ++i) {
    // Consistency: the translated coloring is the coloring of the translated set.
    if (!(translates[i] == coloring_from_set(translate_set(C, gammas[i])))) {
      r.verdict = Verdict::fail;
      r.counterexample = Json{{"translate", i}, {"reason", "coloring of translate differs"}};
      break;
    }
    Json row = Json::array();
    for (std::size_t j = 0; j <= i; ++j) {
      Color c = translates[i].color(spine[static_cast<std::size_t>(levels[j])]);
      Color want = j < i ? Color::green : Color::blue;
      row.push_back(to_string(c));
      if (c != want) {
        r.verdict = Verdict::fail;
        r.counterexample = Json{{"translate", i}, {"spine_level", levels[j]}, {"color", to_string(c)}};
      }
    }
    table.push_back(row);
  }
  for (std::size_t i = 0; i < translates.size() && r.verdict == Verdict::pass; ++i) {
    for (std::size_t j = i + 1; j < translates.size(); ++j) {
      if (translates[i] == translates[j]) {
        r.verdict = Verdict::fail;
        r.counterexample = Json{{"equal_translates", {i, j}}};
      }
    }
  }
  Json gj = Json::array();
  for (const auto& g : gammas) gj.push_back(to_json(g));
  r.details = Json{{"witness_levels", levels}, {"gammas", gj}, {"spine_colors", table}};
  r.ms = clock.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Measure lemmas

/// Uniform measure on {0..space_size-1}; every set has measure p and there
/// are ceil(2/p) of them; asserts some pair meets in measure >= p^3/6.
inline CheckReport check_intersection_probability(int space_size, const std::vector<std::vector<int>>& sets,
                                                  const Rational& p, bool require_count = true) {
  detail::Stopwatch clock;
  auto r = detail::start_report("intersection_probability",
                                Json{{"space_size", space_size}, {"sets", sets}, {"p", to_string(p)}});
  if (space_size < 1) throw PreconditionViolated("space must be nonempty");
  if (p <= 0 || p > 1) throw PreconditionViolated("p must lie in (0, 1]");
  BigInt r_needed = (2 * denominator(p) + numerator(p) - 1) / numerator(p);
  if (require_count && BigInt(sets.size()) != r_needed) {
    throw PreconditionViolated("need exactly ceil(2/p) sets");
  }
  std::vector<std::vector<bool>> member;
  for (const auto& s : sets) {
    std::vector<bool> m(static_cast<std::size_t>(space_size), false);
    for (int x : s) {
      if (x < 0 || x >= space_size) throw PreconditionViolated("point outside the space");
      m[static_cast<std::size_t>(x)] = true;
    }
    auto size = std::count(m.begin(), m.end(), true);
    if (Rational(BigInt(size), BigInt(space_size)) != p) throw PreconditionViolated("set measure differs from p");
    member.push_back(std::move(m));
  }
  Rational best = 0;
  std::pair<std::size_t, std::size_t> arg{0, 0};
  for (std::size_t i = 0; i < member.size(); ++i) {
    for (std::size_t j = i + 1; j < member.size(); ++j) {
      std::int64_t both = 0;
      for (std::size_t x = 0; x < member[i].size(); ++x) both += member[i][x] && member[j][x];
      Rational m{BigInt(both), BigInt(space_size)};
      if (m > best || (i == 0 && j == 1)) {
        best = m;
        arg = {i, j};
      }
    }
  }
  Rational bound = p * p * p / 6;
  r.details = Json{{"max_pair", to_string(best)}, {"pair", {arg.first, arg.second}}, {"bound", to_string(bound)}};
  if (best < bound) {
    r.verdict = Verdict::fail;
    r.counterexample = Json{{"max_pair", to_string(best)}, {"bound", to_string(bound)}};
  }
  r.ms = clock.ms();
  return r;
}

/// Random families at each p over spaces of size <= max_space; aggregates.
inline CheckReport check_intersection_probability_random(const std::vector<Rational>& ps, int families,
                                                         int max_space, std::uint64_t seed) {
  detail::Stopwatch clock;
  Json pj = Json::array();
  for (const auto& p : ps) pj.push_back(to_string(p));
  auto r = detail::start_report("intersection_probability_random",
                                Json{{"p", pj}, {"families", families}, {"max_space", max_space}}, seed);
  Rng root(seed);
  std::uint64_t checked = 0;
  Rational tightest = 1;
  for (std::size_t pi = 0; pi < ps.size() && r.verdict == Verdict::pass; ++pi) {
    const auto& p = ps[pi];
    auto q = static_cast<int>(denominator(p));
    auto a = static_cast<int>(numerator(p));
    int count = static_cast<int>((2 * q + a - 1) / a);
    for (int f = 0; f < families; ++f) {
      Rng rng = root.split(pi * 1000003ULL + static_cast<std::uint64_t>(f));
      int mult = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, max_space / q))));
      int size = q * mult;
      int k = a * mult;
      std::vector<std::vector<int>> sets;
      std::vector<int> pts(static_cast<std::size_t>(size));
      std::iota(pts.begin(), pts.end(), 0);
      for (int s = 0; s < count; ++s) {
        std::shuffle(pts.begin(), pts.end(), rng);
        std::vector<int> b(pts.begin(), pts.begin() + k);
        std::sort(b.begin(), b.end());
        sets.push_back(std::move(b));
      }
      auto one = check_intersection_probability(size, sets, p);
      ++checked;
      Rational ratio = parse_rational(one.details["max_pair"].get<std::string>()) / (p * p * p / 6);
      tightest = std::min(tightest, ratio);
      if (!one.passed()) {
        r.verdict = Verdict::fail;
        r.counterexample = Json{{"family", f}, {"report", to_json(one)}};
        break;
      }
    }
  }
  r.details = Json{{"families_checked", checked}, {"min_ratio_to_bound", to_string(tightest)}};
  r.ms = clock.ms();
  return r;
}

/// Ergodic components with weights w_i whose probabilities of containing S are
/// q_i, averaging to p; asserts the mass of {q_i >= p/2} is at least `bound`
/// (p/2 unless overridden).
inline CheckReport check_component_mass(const std::vector<Rational>& weights, const std::vector<Rational>& probs,
                                        const Rational& p, std::optional<Rational> bound = std::nullopt) {
  detail::Stopwatch clock;
  Json wj = Json::array(), qj = Json::array();
  for (const auto& w : weights) wj.push_back(to_string(w));
  for (const auto& q : probs) qj.push_back(to_string(q));
  Rational b = bound ? *bound : p / 2;
  auto r = detail::start_report("component_mass",
                                Json{{"weights", wj}, {"probs", qj}, {"p", to_string(p)}, {"bound", to_string(b)}});
  if (weights.size() != probs.size() || weights.empty()) throw PreconditionViolated("weights and probs must match");
  Rational wsum = 0, mean = 0, mass = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0 || probs[i] < 0 || probs[i] > 1) throw PreconditionViolated("weights/probs out of range");
    wsum += weights[i];
    mean += weights[i] * probs[i];
    if (probs[i] >= p / 2) mass += weights[i];
  }
  if (wsum != 1) throw PreconditionViolated("weights must sum to 1");
  if (mean != p) throw PreconditionViolated("weighted probabilities must average to p");
  r.details = Json{{"qualifying_mass", to_string(mass)}};
  if (mass < b) {
    r.verdict = Verdict::fail;
    r.counterexample = Json{{"qualifying_mass", to_string(mass)}, {"bound", to_string(b)}};
  }
  r.ms = clock.ms();
  return r;
}

/// Seeded three-component families with weights in 1/60 and probabilities in
/// 1/12 units. bound_factor scales p in the claimed bound (1/2 is the lemma).
inline CheckReport check_component_mass_grid(int families, std::uint64_t seed, const Rational& bound_factor = Rational(1, 2)) {
  detail::Stopwatch clock;
  auto r = detail::start_report("component_mass_grid",
                                Json{{"families", families}, {"bound_factor", to_string(bound_factor)}}, seed);
  Rng root(seed);
  Rational worst = 100;  // smallest qualifying_mass / p seen
  int checked = 0;
  for (int f = 0; checked < families; ++f) {
    Rng rng = root.split(static_cast<std::uint64_t>(f));
    std::uint64_t a = 1 + rng.below(58), b = 1 + rng.below(59 - a);
    std::vector<Rational> w{Rational(BigInt(a), 60), Rational(BigInt(b), 60), Rational(BigInt(60 - a - b), 60)};
    std::vector<Rational> q;
    for (int i = 0; i < 3; ++i) q.push_back(Rational(BigInt(rng.below(13)), 12));
    Rational p = w[0] * q[0] + w[1] * q[1] + w[2] * q[2];
    if (p == 0) continue;
    ++checked;
    auto one = check_component_mass(w, q, p, bound_factor * p);
    Rational mass = parse_rational(one.details["qualifying_mass"].get<std::string>());
    worst = std::min(worst, Rational(mass / p));
    if (!one.passed()) {
      r.verdict = Verdict::fail;
      r.counterexample = to_json(one);
      break;
    }
  }
  r.details = Json{{"families_checked", checked}, {"min_mass_over_p", to_string(worst)}};
  r.ms = clock.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Elements of order at least three

/// Looks for an order >= 3 generator of Rst(v); otherwise builds hg from an
/// involution g moving u1 to u2 and h in Rst(u1).
inline CheckReport check_order3_in_rst(const TruncatedWreathGroup& G, const VertexAddress& v) {
  detail::Stopwatch clock;
  if (!v.valid_for(G.d) || v.level() > G.n) throw InvalidArgument("vertex outside the truncated tree");
  auto r = detail::start_report("order3_in_rst", Json{{"group", to_json(G)}, {"v", v.str()}});
  std::vector<VertexAddress> below;
  for (int l = v.level(); l < G.n; ++l) {
    auto sh = shadow_at_level(v, l, G.d);
    below.insert(below.end(), sh.begin(), sh.end());
  }
  auto gens = G.elementary_at(below);
  if (gens.empty()) throw RigidTrivial("Rst('" + v.str() + "') is trivial at depth " + std::to_string(G.n));
  std::optional<FinitaryAutomorphism> found;
  std::string how;
  for (const auto& g : gens) {
    if (element_order(g, 64) >= 3) {
      found = g;
      how = "generator";
      break;
    }
  }
  if (!found) {
    // Every generator is an involution: hg with g moving u1 = v0 to u2 = v1.
    for (const auto& g : gens) {
      if (!(g.entries().size() == 1 && g.entries()[0].first == v)) continue;
      auto u1 = v.child(0);
      auto u2 = apply(g, u1);
      if (u2 == u1) continue;
      for (const auto& h : gens) {
        if (h.entries()[0].first != u1) continue;
        auto hg = compose(h, g);
        if (element_order(hg, 64) >= 3) {
          found = hg;
          how = "hg";
          r.details["g"] = to_json(g);
          r.details["h"] = to_json(h);
          break;
        }
      }
      if (found) break;
    }
  }
  if (found) {
    r.details["element"] = to_json(*found);
    r.details["order"] = element_order(*found, 1 << 16);
    r.details["construction"] = how;
    if (element_order(*found, 1 << 16) < 3) r.verdict = Verdict::fail;
  } else {
    // Confirm exhaustively that nothing of order >= 3 exists.
    auto rst = enumerate(GeneratedSubgroup(G, gens));
    int best = 1;
    for (const auto& g : rst.elements()) best = std::max(best, element_order(g, 64));
    r.verdict = Verdict::fail;
    r.counterexample = Json{{"rst_order", rst.order()}, {"max_element_order", best}};
  }
  r.ms = clock.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Long cycles

/// For every u in U an s in S with u, u^s, u^(s^2) distinct; searches the
/// enumerated elements, or generator words up to `budget` letters.
inline CheckReport check_long_cycles(const GeneratedSubgroup& S, const LevelSet& U, int budget = 6) {
  detail::Stopwatch clock;
  Json gens = Json::array();
  for (const auto& g : S.acting_set()) gens.push_back(to_json(g));
  auto r = detail::start_report("long_cycles", Json{{"group", to_json(S.ambient())}, {"acting", gens},
                                                    {"U", to_json(U)}, {"budget", budget}});
  std::vector<FinitaryAutomorphism> pool;
  if (S.is_enumerated()) {
    pool = S.elements();
  } else {
    std::unordered_set<FinitaryAutomorphism> seen{S.ambient().identity()};
    std::vector<FinitaryAutomorphism> frontier{S.ambient().identity()};
    for (int len = 1; len <= budget; ++len) {
      std::vector<FinitaryAutomorphism> next;
      for (const auto& h : frontier) {
        for (const auto& s : S.generators()) {
          auto x = compose(h, s);
          if (seen.insert(x).second) next.push_back(std::move(x));
        }
      }
      frontier = std::move(next);
      if (seen.size() > S.order_cap()) throw OrderCapExceeded(S.order_cap(), seen.size());
    }
    pool.assign(seen.begin(), seen.end());
    std::sort(pool.begin(), pool.end());
  }
  Json uncovered = Json::array();
  Json witnesses = Json::object();
  for (const auto& u : U) {
    bool ok = false;
    for (const auto& s : pool) {
      auto a = apply(s, u);
      auto b = apply(s, a);
      if (a != u && b != u && b != a) {
        witnesses[u.str()] = to_json(s);
        ok = true;
        break;
      }
    }
    if (!ok) uncovered.push_back(u.str());
  }
  r.details = Json{{"searched", pool.size()}, {"witnesses", witnesses}};
  if (!uncovered.empty()) {
    r.verdict = Verdict::fail;
    r.counterexample = Json{{"uncovered", uncovered}};
  }
  r.ms = clock.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Statistical evidence

/// Fraction of Haar translates C~ for which the setwise stabilizer of C~ cut
/// at depth k fixes the depth-k prefix of the translated green ray, k = 1..N.
/// Pass when non-decreasing with the last fraction >= floor over at least
/// min_trials trials; otherwise inconclusive.
inline CheckReport check_stabilizer_fixes_green_ray(const ClosedSetApprox& C, const GeneratedSubgroup& G, int trials,
                                                    std::uint64_t seed, double floor = 0.5, int min_trials = 1000) {
  detail::Stopwatch clock;
  const auto& A = G.ambient();
  if (C.arity() != A.d) throw ArityMismatch("closed set and group over different trees");
  if (C.depth() > A.n) throw DepthExceeded("closed set deeper than the group");
  auto r = detail::start_report(
      "stabilizer_fixes_green_ray",
      Json{{"set", to_json(C)}, {"group", to_json(A)}, {"trials", trials}, {"floor", floor}, {"min_trials", min_trials}},
      seed);
  auto end = find_green_ray(C);
  if (!end) {
    r.verdict = Verdict::inconclusive;
    r.details["skipped"] = "closed set is clopen at its depth";
    r.ms = clock.ms();
    return r;
  }
  auto E = enumerate(G);
  const int N = C.depth();
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(N) + 1, 0);
  std::map<std::pair<int, std::vector<VertexAddress>>, GeneratedSubgroup> cache;
  Rng root(seed);
  for (int t = 0; t < trials; ++t) {
    Rng rng = root.split(static_cast<std::uint64_t>(t));
    auto g = haar_sample(A.d, A.n, A.flavor, rng);
    auto Ct = translate_set(C, g);
    auto ray = apply(g, *end);
    for (int k = 1; k <= N; ++k) {
      auto key = std::make_pair(k, Ct.level(k).members());
      auto it = cache.find(key);
      if (it == cache.end()) {
        it = cache.emplace(key, setwise_stabilizer(E, shadow_at_level(Ct.level(k), A.n, A.d))).first;
      }
      auto target = ray.prefix(k);
      const auto& els = it->second.elements();
      bool fixes = std::all_of(els.begin(), els.end(), [&](const auto& h) { return apply(h, target) == target; });
      hits[static_cast<std::size_t>(k)] += fixes;
    }
  }
  Json fractions = Json::array();
  bool monotone = true;
  double prev = -1, last = 0;
  for (int k = 1; k <= N; ++k) {
    double f = static_cast<double>(hits[static_cast<std::size_t>(k)]) / std::max(1, trials);
    fractions.push_back(Json{{"depth", k}, {"fraction", to_string(Rational(BigInt(hits[static_cast<std::size_t>(k)]), BigInt(std::max(1, trials))))}});
    if (f < prev) monotone = false;
    prev = f;
    last = f;
  }
  r.details = Json{{"green_ray", end->str()}, {"fractions", fractions}, {"monotone", monotone}};
  r.verdict = monotone && last >= floor && trials >= min_trials ? Verdict::pass : Verdict::inconclusive;
  r.ms = clock.ms();
  return r;
}

/// Frequency with which two independent Haar translates of C's coloring cut
/// at depth k agree, for each k in `depths`; pass when non-increasing in k
/// with the last frequency below the first, inconclusive otherwise.
inline CheckReport check_sibling_collision(const ClosedSetApprox& C, const std::vector<int>& depths, Flavor flavor,
                                           int trials, std::uint64_t seed, int min_trials = 500) {
  detail::Stopwatch clock;
  auto r = detail::start_report(
      "sibling_collision",
      Json{{"set", to_json(C)}, {"depths", depths}, {"flavor", to_string(flavor)}, {"trials", trials}}, seed);
  Rng root(seed);
  Json freq = Json::array();
  std::vector<std::uint64_t> hits;
  for (int k : depths) {
    if (k < 0 || k > C.depth()) throw DepthExceeded("collision depth outside the stored depth");
    auto Ck = C.truncate(k);
    std::uint64_t same = 0;
    for (int t = 0; t < trials; ++t) {
      Rng rng = root.split(static_cast<std::uint64_t>(k) * 7919ULL * 1000003ULL + static_cast<std::uint64_t>(t));
      auto a = translate_set(Ck, haar_sample(C.arity(), k, flavor, rng));
      auto b = translate_set(Ck, haar_sample(C.arity(), k, flavor, rng));
      same += a == b;
    }
    hits.push_back(same);
    freq.push_back(Json{{"depth", k}, {"frequency", to_string(Rational(BigInt(same), BigInt(std::max(1, trials))))}});
  }
  bool monotone = std::is_sorted(hits.rbegin(), hits.rend());
  bool decreased = !hits.empty() && hits.back() < hits.front();
  r.details = Json{{"frequencies", freq}, {"non_increasing", monotone}};
  r.verdict = monotone && decreased && trials >= min_trials ? Verdict::pass : Verdict::inconclusive;
  r.ms = clock.ms();
  return r;
}

/// IRS invariance of a sampler under one conjugator, as a check.
inline CheckReport check_invariance(const IRSSampler& s, const FinitaryAutomorphism& g, std::uint64_t trials,
                                    std::uint64_t seed, double max_tv = 1.0) {
  detail::Stopwatch clock;
  auto r = detail::start_report(
      "invariance", Json{{"sampler", sampler_name(s)}, {"conjugator", to_json(g)}, {"trials", trials}, {"max_tv", max_tv}},
      seed);
  auto res = invariance_test(s, g, trials, seed);
  r.details = Json{{"tv", to_string(res.statistic)},
                   {"tv_decimal", to_decimal(res.statistic, 6)},
                   {"threshold", res.threshold},
                   {"support", res.support}};
  bool ok = res.pass && to_double(res.statistic) < max_tv;
  if (!ok) {
    r.verdict = res.statistic == 1 ? Verdict::fail : Verdict::inconclusive;
    if (r.verdict == Verdict::fail) r.counterexample = Json{{"tv", to_string(res.statistic)}};
  }
  r.ms = clock.ms();
  return r;
}

}  // namespace irs
