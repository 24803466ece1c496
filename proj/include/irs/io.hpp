#pragma once

// JSON encodings of the domain types and of experiment configs.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "irs/automorphism.hpp"
#include "irs/boundary.hpp"
#include "irs/error.hpp"
#include "irs/groups.hpp"
#include "irs/rational.hpp"
#include "irs/samplers.hpp"
#include "irs/tree.hpp"

namespace irs {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T field_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace detail

inline Json to_json(const VertexAddress& v) { return v.str(); }

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(const LevelSet& S) {
  Json out = Json::array();
  for (const auto& v : S) out.push_back(v.str());
  return out;
}

inline LevelSet level_set_from_json(const Json& j, int d, int level) {
  if (!j.is_array()) throw ParseError("level set must be an array of addresses");
  std::vector<VertexAddress> vs;
  for (const auto& x : j) vs.push_back(VertexAddress::parse(x.get<std::string>(), d));
  return LevelSet(level, std::move(vs));
}

/// {"d","depth","perms":{address: images}}; identity entries omitted.
inline Json to_json(const FinitaryAutomorphism& g) {
  Json perms = Json::object();
  for (const auto& [v, p] : g.entries()) perms[v.str()] = p.images();
  return Json{{"d", g.arity()}, {"depth", g.depth()}, {"perms", perms}};
}

/// Missing "d"/"depth" fall back to the given defaults (negative = required).
inline FinitaryAutomorphism portrait_from_json(const Json& j, int d_default = -1, int depth_default = -1) {
  try {
    int d = detail::field_or<int>(j, "d", d_default);
    int depth = detail::field_or<int>(j, "depth", depth_default);
    if (d < 0 || depth < 0) throw ParseError("portrait needs 'd' and 'depth'");
    check_arity(d);
    std::vector<FinitaryAutomorphism::Entry> entries;
    const auto& perms = detail::require(j, "perms");
    if (!perms.is_object()) throw ParseError("'perms' must be an object");
    for (const auto& [key, images] : perms.items()) {
      entries.emplace_back(VertexAddress::parse(key, d), Permutation::from_images(images.get<std::vector<int>>()));
    }
    return FinitaryAutomorphism::from_entries(d, depth, std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad portrait: ") + e.what());
  }
}

inline Json to_json(const LevelPartition& P) {
  Json blocks = Json::array();
  for (const auto& b : P.blocks) {
    Json block = Json::array();
    for (const auto& v : b) block.push_back(v.str());
    blocks.push_back(block);
  }
  return Json{{"level", P.level}, {"blocks", blocks}};
}

inline LevelPartition partition_from_json(const Json& j, int d) {
  try {
    int level = detail::require(j, "level").get<int>();
    std::vector<std::vector<VertexAddress>> blocks;
    for (const auto& b : detail::require(j, "blocks")) {
      std::vector<VertexAddress> block;
      for (const auto& x : b) block.push_back(VertexAddress::parse(x.get<std::string>(), d));
      blocks.push_back(std::move(block));
    }
    LevelPartition P(level, std::move(blocks));
    P.validate(d);
    return P;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad partition: ") + e.what());
  }
}

inline Json to_json(const ClosedSetApprox& C) {
  Json levels = Json::array();
  for (const auto& L : C.levels()) levels.push_back(to_json(L));
  return Json{{"d", C.arity()}, {"depth", C.depth()}, {"levels", levels}};
}

/// Either the full {"d","depth","levels"} form or {"depth","shadows":[...]},
/// the union of the shadows of the listed vertices.
inline ClosedSetApprox closed_set_from_json(const Json& j, int d_default = -1) {
  try {
    int d = detail::field_or<int>(j, "d", d_default);
    if (d < 0) throw ParseError("closed set needs 'd'");
    check_arity(d);
    int depth = detail::require(j, "depth").get<int>();
    if (j.contains("shadows")) {
      std::vector<VertexAddress> vs;
      for (const auto& x : j.at("shadows")) vs.push_back(VertexAddress::parse(x.get<std::string>(), d));
      return ClosedSetApprox::union_of_shadows(vs, d, depth);
    }
    const auto& levels = detail::require(j, "levels");
    if (!levels.is_array() || static_cast<int>(levels.size()) != depth + 1) {
      throw ParseError("'levels' must list depth + 1 level sets");
    }
    std::vector<LevelSet> ls;
    for (int k = 0; k <= depth; ++k) ls.push_back(level_set_from_json(levels[static_cast<std::size_t>(k)], d, k));
    return ClosedSetApprox(d, std::move(ls));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad closed set: ") + e.what());
  }
}

inline Json to_json(const TruncatedWreathGroup& G) {
  return Json{{"d", G.d}, {"n", G.n}, {"flavor", to_string(G.flavor)}};
}

inline Json to_json(const LevelDistance& r) {
  Json out{{"value", to_string(r.value)},
           {"decimal", to_decimal(r.value)},
           {"agreement_level", r.agreement_level},
           {"equal_at_truncation", r.equal_at_truncation}};
  if (r.no_agreement) out["no_agreement"] = true;
  return out;
}

inline Json to_json(const SubtreeDescriptor& s) {
  Json roots = Json::array();
  for (const auto& v : s.hanging_roots) roots.push_back(v.str());
  return Json{{"attach_level", s.attach_level}, {"root_set", to_json(s.root_set)}, {"hanging_roots", roots}};
}

// ---------------------------------------------------------------------------
// Experiment configs

namespace detail {

inline std::vector<FinitaryAutomorphism> portraits_from_json(const Json& j, int d, int depth) {
  if (!j.is_array()) throw ParseError("expected an array of portraits");
  std::vector<FinitaryAutomorphism> out;
  for (const auto& x : j) out.push_back(portrait_from_json(x, d, depth));
  return out;
}

inline ComponentSpec component_from_json(const Json& j, int d) {
  ComponentSpec c;
  c.m = field_or<int>(j, "m", 0);
  if (c.m < 0) throw ParseError("component level m must be nonnegative");
  const Json top = j.contains("top") ? j.at("top") : Json("full");
  if (top.is_string()) {
    auto t = top.get<std::string>();
    if (t == "full") {
      c.top = ComponentSpec::Top::full;
    } else if (t == "trivial") {
      c.top = ComponentSpec::Top::trivial;
    } else {
      throw ParseError("component top must be 'full', 'trivial' or a list of portraits");
    }
  } else {
    c.top = ComponentSpec::Top::generators;
    c.generators = portraits_from_json(top, d, c.m);
  }
  return c;
}

}  // namespace detail

inline TruncatedWreathGroup group_from_config(const Json& config) {
  try {
    int d = detail::require(config, "d").get<int>();
    int n = detail::require(config, "n").get<int>();
    check_arity(d);
    if (n < 0) throw ParseError("depth n must be nonnegative");
    auto flavor = parse_flavor(detail::field_or<std::string>(config, "flavor", "symmetric"));
    return TruncatedWreathGroup(d, n, flavor);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad group fields: ") + e.what());
  }
}

inline IRSSampler sampler_from_json(const Json& j, const TruncatedWreathGroup& G) {
  try {
    auto kind = detail::require(j, "kind").get<std::string>();
    if (kind == "UniformConjugate" || kind == "FixedSubgroup") {
      GeneratedSubgroup L(G, detail::portraits_from_json(detail::require(j, "generators"), G.d, G.n));
      if (kind == "FixedSubgroup") return FixedSubgroup{L};
      return UniformConjugate{L};
    }
    if (kind == "StabilizerOfRandomSet") {
      auto C = closed_set_from_json(detail::require(j, "set"), G.d);
      auto mode = detail::field_or<std::string>(j, "mode", "pointwise");
      if (mode != "pointwise" && mode != "setwise") throw ParseError("mode must be pointwise or setwise");
      return StabilizerOfRandomSet{C, G, mode == "pointwise" ? StabilizerMode::pointwise : StabilizerMode::setwise};
    }
    if (kind == "LevelIRS") {
      int level = detail::require(j, "level").get<int>();
      if (level < 0 || level > G.n) throw DepthExceeded("LevelIRS level outside the ambient depth");
      TruncatedWreathGroup top(G.d, level, G.flavor);
      const Json t = j.contains("top") ? j.at("top") : Json("full");
      GeneratedSubgroup L = GeneratedSubgroup::trivial(top);
      if (t.is_string()) {
        if (t == "full") {
          L = GeneratedSubgroup::full(top);
        } else if (t != "trivial") {
          throw ParseError("LevelIRS top must be 'full', 'trivial' or a list of portraits");
        }
      } else {
        L = GeneratedSubgroup(top, detail::portraits_from_json(t, G.d, level));
      }
      return LevelIRS{G, level, L};
    }
    if (kind == "FixedRayIRS" || kind == "CoupledIRS") {
      FixedRayIRS base{G, {}};
      if (j.contains("components")) {
        for (const auto& c : j.at("components")) base.components.push_back(detail::component_from_json(c, G.d));
      }
      if (kind == "FixedRayIRS") return base;
      CoupledIRS out{base, detail::field_or<int>(j, "m", 1), std::nullopt};
      if (j.contains("coupling")) out.coupling = portrait_from_json(j.at("coupling"), G.d, out.m);
      return out;
    }
    throw ParseError("unknown sampler kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad sampler spec: ") + e.what());
  }
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

/// {"sampler","trials","seed","support":[{"fingerprint_hash","count"}]}, plus
/// the fingerprint depth and the largest atom.
inline Json distribution_report(const std::string& sampler, const EmpiricalDistribution& dist, int depth) {
  Json support = Json::array();
  for (const auto& [fp, count] : dist.sorted()) {
    Json entry{{"fingerprint_hash", fp.hash}, {"count", count}};
    if (fp.exact) {
      entry["order"] = fp.size();
    } else {
      entry["coarse"] = true;
    }
    support.push_back(entry);
  }
  return Json{{"sampler", sampler},
              {"trials", dist.total()},
              {"seed", dist.seed()},
              {"depth", depth},
              {"support_size", dist.support_size()},
              {"max_frequency", to_string(dist.max_frequency())},
              {"support", support}};
}

}  // namespace irs
