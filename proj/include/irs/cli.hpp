#pragma once

// Command-line front end. run_cli returns the exit code and the text that
// would go to stdout/stderr, so tests can drive it in-process.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irs/boundary.hpp"
#include "irs/error.hpp"
#include "irs/groups.hpp"
#include "irs/io.hpp"
#include "irs/samplers.hpp"
#include "irs/verify.hpp"

namespace irs::cli {

enum ExitCode { kOk = 0, kUsage = 2, kCapExceeded = 3, kCheckFailed = 4 };

struct Result {
  int code = kOk;
  std::string out;
  std::string err;
};

struct GlobalOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<int> depth;
  std::string format = "json";
  bool strict = false;
  bool timing = false;
};

namespace detail {

using irs::detail::field_or;
using irs::detail::require;

inline Json read_config(const GlobalOptions& g, std::istream& in) {
  if (g.config.empty()) return Json::object();
  if (g.config == "-") {
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
  }
  return load_json_file(g.config);
}

/// Inline JSON, or @path for a file.
inline Json json_argument(const std::string& text) {
  if (!text.empty() && text[0] == '@') return load_json_file(text.substr(1));
  return parse_json_text(text);
}

inline std::uint64_t resolve_seed(const GlobalOptions& g, const Json& config) {
  if (g.seed) return *g.seed;
  if (config.contains("seed")) return config.at("seed").get<std::uint64_t>();
  throw ParseError("a seed is required (config field 'seed' or --seed)");
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// sample

inline Json sampler_metadata(const IRSSampler& s) {
  Json meta{{"kind", sampler_name(s)}, {"group", to_json(sampler_ambient(s))}};
  auto components = [](const FixedRayIRS& f) {
    Json out = Json::array();
    for (int i = 0; i < f.ambient.n; ++i) {
      auto c = f.component(i);
      Json top = c.top == ComponentSpec::Top::full      ? Json("full")
                 : c.top == ComponentSpec::Top::trivial ? Json("trivial")
                                                        : Json::array();
      if (c.top == ComponentSpec::Top::generators) {
        for (const auto& x : c.generators) top.push_back(to_json(x));
      }
      out.push_back(Json{{"component", i}, {"m", c.m}, {"top", top}});
    }
    return out;
  };
  if (auto* f = std::get_if<FixedRayIRS>(&s)) meta["components"] = components(*f);
  if (auto* c = std::get_if<CoupledIRS>(&s)) {
    meta["coupled_m"] = c->m;
    meta["components"] = components(c->base);
  }
  if (auto* l = std::get_if<LevelIRS>(&s)) {
    meta["level"] = l->n;
    meta["top_order"] = enumerate(l->L_top).order();
  }
  if (auto* r = std::get_if<StabilizerOfRandomSet>(&s)) {
    meta["set"] = to_json(r->C);
    meta["mode"] = to_string(r->mode);
  }
  return meta;
}

inline Result cmd_sample(const GlobalOptions& g, std::istream& in) {
  Json config = read_config(g, in);
  if (config.empty()) throw ParseError("sample needs --config");
  auto G = group_from_config(config);
  auto seed = resolve_seed(g, config);
  std::uint64_t trials = g.trials ? *g.trials : detail::field_or<std::uint64_t>(config, "trials", 0);
  if (trials < 1) throw ParseError("trials must be at least 1");
  int depth = g.depth ? *g.depth : detail::field_or<int>(config, "depth", G.n);
  if (depth < 0 || depth > G.n) throw ParseError("fingerprint depth must lie in [0, n]");
  auto spec = sampler_from_json(irs::detail::require(config, "sampler"), G);

  auto dist = sample_distribution(spec, trials, depth, seed);
  Result r;
  if (g.format == "csv") {
    std::ostringstream out;
    out << "fingerprint_hash,count,order\n";
    for (const auto& [fp, count] : dist.sorted()) {
      out << fp.hash << "," << count << ",";
      if (fp.exact) out << fp.size();
      out << "\n";
    }
    r.out = out.str();
    return r;
  }
  Json effective = config;
  effective["seed"] = seed;
  effective["trials"] = trials;
  effective["depth"] = depth;
  Json report = distribution_report(sampler_name(spec), dist, depth);
  r.out = dump(Json{{"config", effective}, {"sampler_meta", sampler_metadata(spec)}, {"report", report}});
  return r;
}

// ---------------------------------------------------------------------------
// verify

using CheckRunner = std::function<CheckReport(const Json& params, std::uint64_t seed,
                                              std::optional<std::uint64_t> trials)>;

inline std::array<int, 3> discards_from(const Json& p) {
  auto v = irs::detail::field_or<std::vector<int>>(p, "discards", {0, 1, 2});
  if (v.size() != 3) throw ParseError("'discards' must have three entries");
  return {v[0], v[1], v[2]};
}

inline int trials_of(const Json& p, std::optional<std::uint64_t> override_trials, int fallback) {
  if (override_trials) return static_cast<int>(*override_trials);
  return irs::detail::field_or<int>(p, "trials", fallback);
}

inline std::vector<Rational> rationals(const Json& j) {
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(parse_rational(x.get<std::string>()));
  return out;
}

inline const std::map<std::string, CheckRunner>& check_registry() {
  using irs::detail::field_or;
  using irs::detail::require;
  static const std::map<std::string, CheckRunner> registry{
      {"conjugate_sections",
       [](const Json& p, std::uint64_t seed, auto t) {
         auto conv = field_or<std::string>(p, "convention", "right");
         SectionConvention c = conv == "right"  ? SectionConvention::right
                               : conv == "left" ? SectionConvention::left
                               : conv == "mixed"
                                   ? SectionConvention::mixed
                                   : throw ParseError("convention must be right, left or mixed");
         return check_conjugate_sections(require(p, "d").get<int>(), require(p, "n").get<int>(),
                                         require(p, "k").get<int>(),
                                         parse_flavor(field_or<std::string>(p, "flavor", "symmetric")),
                                         trials_of(p, t, 1000), seed, c);
       }},
      {"sections_surjective",
       [](const Json& p, std::uint64_t, auto) {
         int d = require(p, "d").get<int>();
         std::vector<std::vector<VertexAddress>> cycles;
         for (const auto& c : require(p, "cycles")) {
           std::vector<VertexAddress> cyc;
           for (const auto& v : c) cyc.push_back(VertexAddress::parse(v.get<std::string>(), d));
           cycles.push_back(std::move(cyc));
         }
         return check_sections_surjective(d, require(p, "n").get<int>(), require(p, "k").get<int>(),
                                          parse_flavor(field_or<std::string>(p, "flavor", "alternating")), cycles,
                                          field_or<bool>(p, "discard", true));
       }},
      {"def_cover",
       [](const Json& p, std::uint64_t, auto) {
         return check_def_cover_all(field_or<std::vector<int>>(p, "lengths", {3, 4, 5}),
                                    field_or<int>(p, "max_cycles", 3), discards_from(p));
       }},
      {"grigorchuk_commutator",
       [](const Json& p, std::uint64_t seed, auto t) {
         auto mode = field_or<std::string>(p, "mode", "moving");
         if (mode != "moving" && mode != "identity_phi") throw ParseError("mode must be moving or identity_phi");
         return check_grigorchuk_commutator(require(p, "d").get<int>(), require(p, "n").get<int>(),
                                            parse_flavor(field_or<std::string>(p, "flavor", "symmetric")),
                                            trials_of(p, t, 500), seed,
                                            mode == "moving" ? CommutatorMode::moving : CommutatorMode::identity_phi);
       }},
      {"fix_stab",
       [](const Json& p, std::uint64_t, auto) {
         auto G = group_from_config(require(p, "group"));
         return check_fix_stab(closed_set_from_json(require(p, "set"), G.d), G);
       }},
      {"infinite_translates",
       [](const Json& p, std::uint64_t, auto) {
         auto G = group_from_config(require(p, "group"));
         return check_infinite_translates(closed_set_from_json(require(p, "set"), G.d), field_or<int>(p, "count", 4),
                                          G);
       }},
      {"intersection_probability",
       [](const Json& p, std::uint64_t, auto) {
         return check_intersection_probability(require(p, "space_size").get<int>(),
                                               require(p, "sets").get<std::vector<std::vector<int>>>(),
                                               parse_rational(require(p, "p").get<std::string>()),
                                               field_or<bool>(p, "require_count", true));
       }},
      {"intersection_probability_random",
       [](const Json& p, std::uint64_t seed, auto) {
         return check_intersection_probability_random(rationals(require(p, "p")), field_or<int>(p, "families", 1000),
                                                      field_or<int>(p, "max_space", 60), seed);
       }},
      {"component_mass",
       [](const Json& p, std::uint64_t, auto) {
         std::optional<Rational> bound;
         if (p.contains("bound")) bound = parse_rational(p.at("bound").get<std::string>());
         return check_component_mass(rationals(require(p, "weights")), rationals(require(p, "probs")),
                                     parse_rational(require(p, "p").get<std::string>()), bound);
       }},
      {"component_mass_grid",
       [](const Json& p, std::uint64_t seed, auto) {
         return check_component_mass_grid(field_or<int>(p, "families", 1000), seed,
                                          parse_rational(field_or<std::string>(p, "bound_factor", "1/2")));
       }},
      {"order3_in_rst",
       [](const Json& p, std::uint64_t, auto) {
         auto G = group_from_config(require(p, "group"));
         return check_order3_in_rst(G, VertexAddress::parse(field_or<std::string>(p, "v", ""), G.d));
       }},
      {"long_cycles",
       [](const Json& p, std::uint64_t, auto) {
         auto G = group_from_config(require(p, "group"));
         GeneratedSubgroup S = p.contains("generators")
                                   ? GeneratedSubgroup(G, irs::detail::portraits_from_json(p.at("generators"), G.d, G.n))
                                   : GeneratedSubgroup::full(G);
         if (field_or<bool>(p, "enumerate", false)) S = enumerate(S);
         int level = require(p, "level").get<int>();
         LevelSet U = p.contains("U") ? level_set_from_json(p.at("U"), G.d, level) : LevelSet::full(G.d, level);
         return check_long_cycles(S, U, field_or<int>(p, "budget", 6));
       }},
      {"stabilizer_fixes_green_ray",
       [](const Json& p, std::uint64_t seed, auto t) {
         auto G = group_from_config(require(p, "group"));
         return check_stabilizer_fixes_green_ray(closed_set_from_json(require(p, "set"), G.d), enumerate_group(G),
                                                 trials_of(p, t, 2000), seed, field_or<double>(p, "floor", 0.5),
                                                 field_or<int>(p, "min_trials", 1000));
       }},
      {"sibling_collision",
       [](const Json& p, std::uint64_t seed, auto t) {
         auto C = closed_set_from_json(require(p, "set"), field_or<int>(p, "d", 2));
         return check_sibling_collision(C, require(p, "depths").get<std::vector<int>>(),
                                        parse_flavor(field_or<std::string>(p, "flavor", "symmetric")),
                                        trials_of(p, t, 1000), seed, field_or<int>(p, "min_trials", 500));
       }},
      {"invariance",
       [](const Json& p, std::uint64_t seed, auto t) {
         auto G = group_from_config(require(p, "group"));
         auto s = sampler_from_json(require(p, "sampler"), G);
         auto g = portrait_from_json(require(p, "conjugator"), G.d, G.n);
         return check_invariance(s, g, static_cast<std::uint64_t>(trials_of(p, t, 10000)), seed,
                                 field_or<double>(p, "max_tv", 0.05));
       }},
  };
  return registry;
}

inline Json group_json(int d, int n, const char* flavor = "symmetric") {
  return Json{{"d", d}, {"n", n}, {"flavor", flavor}};
}

/// The committed default suite at d = 2, 3.
inline Json default_checks() {
  Json checks = Json::array();
  auto add = [&checks](const char* name, Json params) { checks.push_back(Json{{"check", name}, {"params", params}}); };
  add("conjugate_sections", {{"d", 3}, {"n", 2}, {"k", 1}, {"flavor", "symmetric"}, {"trials", 1000}});
  add("conjugate_sections", {{"d", 2}, {"n", 3}, {"k", 1}, {"flavor", "symmetric"}, {"trials", 1000}, {"convention", "left"}});
  add("sections_surjective", {{"d", 3}, {"n", 2}, {"k", 1}, {"flavor", "alternating"}, {"cycles", {{"0", "1", "2"}}}});
  add("sections_surjective", {{"d", 3}, {"n", 3}, {"k", 2}, {"flavor", "alternating"},
                              {"cycles", {{"00", "01", "02"}, {"10", "11", "12"}}}});
  add("def_cover", {{"lengths", {3, 4, 5}}, {"max_cycles", 3}});
  add("grigorchuk_commutator", {{"d", 2}, {"n", 3}, {"trials", 500}});
  add("grigorchuk_commutator", {{"d", 3}, {"n", 2}, {"trials", 500}});
  for (const auto& shadows : {Json::array(), Json::array({""}), Json::array({"11"}), Json::array({"00", "11"})}) {
    add("fix_stab", {{"group", group_json(2, 3)}, {"set", {{"depth", 2}, {"shadows", shadows}}}});
  }
  for (const auto& shadows : {Json::array(), Json::array({""}), Json::array({"1"}), Json::array({"0", "2"})}) {
    add("fix_stab", {{"group", group_json(3, 2)}, {"set", {{"depth", 1}, {"shadows", shadows}}}});
  }
  add("infinite_translates", {{"group", group_json(2, 5)}, {"set", {{"depth", 5}, {"shadows", {"11111"}}}}, {"count", 4}});
  add("intersection_probability", {{"space_size", 4}, {"sets", {{0, 1}, {2, 3}, {0, 2}, {1, 3}}}, {"p", "1/2"}});
  add("intersection_probability_random", {{"p", {"1/2", "1/3", "1/4"}}, {"families", 1000}, {"max_space", 60}});
  add("component_mass_grid", {{"families", 1000}});
  add("order3_in_rst", {{"group", group_json(2, 3)}, {"v", "0"}});
  add("order3_in_rst", {{"group", group_json(3, 2, "alternating")}, {"v", ""}});
  add("long_cycles", {{"group", group_json(3, 1, "alternating")}, {"level", 1}, {"enumerate", true}});
  add("stabilizer_fixes_green_ray",
      {{"group", group_json(2, 4)}, {"set", {{"depth", 4}, {"shadows", {"00", "1111"}}}}, {"trials", 2000}});
  add("sibling_collision", {{"d", 2}, {"set", {{"depth", 4}, {"shadows", {"1111"}}}}, {"depths", {1, 2, 3, 4}},
                            {"trials", 1000}});
  add("invariance", {{"group", group_json(2, 2)},
                     {"sampler", {{"kind", "UniformConjugate"}, {"generators", {{{"perms", {{"0", {1, 0}}}}}}}}},
                     {"conjugator", {{"perms", {{"", {1, 0}}}}}},
                     {"trials", 10000}});
  return checks;
}

inline Result cmd_verify(const GlobalOptions& g, const std::vector<std::string>& names, std::istream& in) {
  Json config = read_config(g, in);
  std::uint64_t seed = g.seed ? *g.seed : irs::detail::field_or<std::uint64_t>(config, "seed", 1);
  Json checks = config.contains("checks") ? config.at("checks") : default_checks();
  const auto& registry = check_registry();
  std::vector<std::string> wanted = names;
  if (wanted.empty()) wanted.push_back("all");
  for (const auto& w : wanted) {
    if (w != "all" && !registry.count(w)) throw ParseError("unknown check '" + w + "'");
  }
  bool all = std::find(wanted.begin(), wanted.end(), "all") != wanted.end();

  struct Entry {
    std::string name;
    std::size_t index;
    CheckReport report;
  };
  std::vector<Entry> done;
  Json selected = Json::array();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    auto name = irs::detail::require(checks[i], "check").get<std::string>();
    auto it = registry.find(name);
    if (it == registry.end()) throw ParseError("unknown check '" + name + "'");
    if (!all && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    Json params = checks[i].contains("params") ? checks[i].at("params") : Json::object();
    selected.push_back(checks[i]);
    std::uint64_t derived = Rng(seed).split(i).seed();
    try {
      done.push_back({name, i, it->second(params, derived, g.trials)});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("bad parameters for '" + name + "': " + e.what());
    }
  }
  std::stable_sort(done.begin(), done.end(), [](const Entry& a, const Entry& b) { return a.name < b.name; });
  Json reports = Json::array();
  int pass = 0, fail = 0, inconclusive = 0;
  for (const auto& e : done) {
    reports.push_back(to_json(e.report, g.timing));
    pass += e.report.verdict == Verdict::pass;
    fail += e.report.verdict == Verdict::fail;
    inconclusive += e.report.verdict == Verdict::inconclusive;
  }
  Result r;
  Json effective{{"seed", seed}, {"checks", selected}};
  if (g.trials) effective["trials"] = *g.trials;
  r.out = dump(Json{{"config", effective},
                    {"reports", reports},
                    {"summary", {{"pass", pass}, {"fail", fail}, {"inconclusive", inconclusive}}}});
  if (fail > 0 || (g.strict && inconclusive > 0)) r.code = kCheckFailed;
  return r;
}

// ---------------------------------------------------------------------------
// distance, orbits, decompose

inline Result cmd_distance(const GlobalOptions& g, const std::string& kind, const std::string& a_text,
                           const std::string& b_text, std::istream& in) {
  Json config = read_config(g, in);
  Json out{{"config", config}, {"kind", kind}, {"inputs", {a_text, b_text}}};
  auto rational_out = [&out](const Rational& v) {
    out["value"] = to_string(v);
    out["decimal"] = to_decimal(v);
  };
  if (kind == "ray") {
    int d = irs::detail::field_or<int>(config, "d", 2);
    auto a = VertexAddress::parse(a_text, d);
    auto b = VertexAddress::parse(b_text, d);
    rational_out(ray_distance(a, b));
  } else if (kind == "aut") {
    rational_out(aut_distance(portrait_from_json(json_argument(a_text)), portrait_from_json(json_argument(b_text))));
  } else if (kind == "partition") {
    int d = irs::detail::field_or<int>(config, "d", 2);
    auto seq = [d](const Json& j) {
      std::vector<LevelPartition> out;
      if (j.is_array()) {
        for (const auto& x : j) out.push_back(partition_from_json(x, d));
      } else {
        out.push_back(partition_from_json(j, d));
      }
      return out;
    };
    out.update(to_json(partition_distance(seq(json_argument(a_text)), seq(json_argument(b_text)))));
  } else if (kind == "set") {
    out.update(to_json(hausdorff_distance_approx(closed_set_from_json(json_argument(a_text)),
                                                 closed_set_from_json(json_argument(b_text)))));
  } else if (kind == "class") {
    if (config.empty()) throw ParseError("class distance needs a --config with the group");
    auto G = group_from_config(config);
    out.update(to_json(class_distance_at_depth(closed_set_from_json(json_argument(a_text), G.d),
                                               closed_set_from_json(json_argument(b_text), G.d), enumerate_group(G))));
  } else {
    throw ParseError("distance kind must be ray, aut, partition, set or class");
  }
  Result r;
  r.out = dump(out);
  return r;
}

inline Result cmd_orbits(const GlobalOptions& g, std::istream& in) {
  Json config = read_config(g, in);
  if (config.empty()) throw ParseError("orbits needs --config");
  auto G = group_from_config(config);
  int depth = g.depth ? *g.depth : irs::detail::field_or<int>(config, "depth", G.n);
  if (depth < 0 || depth > G.n) throw ParseError("depth must lie in [0, n]");
  GeneratedSubgroup S = config.contains("generators")
                            ? GeneratedSubgroup(G, irs::detail::portraits_from_json(config.at("generators"), G.d, G.n))
                            : GeneratedSubgroup::full(G);
  Json levels = Json::array();
  for (const auto& P : orbit_sequence(S, depth)) levels.push_back(to_json(P));
  Json fixed = Json::array();
  for (int k = 0; k <= depth; ++k) fixed.push_back(to_json(fixed_vertices(S, k)));
  Result r;
  config["depth"] = depth;
  r.out = dump(Json{{"config", config}, {"orbits", levels}, {"fixed", fixed}});
  return r;
}

inline Result cmd_decompose(const GlobalOptions& g, const std::string& set_text, std::istream& in) {
  Json config = read_config(g, in);
  Json source = set_text.empty() ? irs::detail::require(config, "set") : json_argument(set_text);
  auto C = closed_set_from_json(source, irs::detail::field_or<int>(config, "d", -1));
  Json pieces = Json::array();
  for (const auto& s : decompose(C)) pieces.push_back(to_json(s));
  Json hanging = Json::array();
  for (const auto& h : hanging_subtrees(C)) hanging.push_back(Json{{"attach_level", h.attach_level}, {"root", h.root.str()}});
  Json out{{"config", config},
           {"set", to_json(C)},
           {"measure", to_string(C.measure())},
           {"clopen_at_depth", is_clopen_at_depth(C, C.depth())},
           {"decomposition", pieces},
           {"hanging_subtrees", hanging}};
  if (auto ray = find_green_ray(C)) out["green_ray"] = ray->str();
  Result r;
  r.out = dump(out);
  return r;
}

}  // namespace detail

inline Result run_cli(std::vector<std::string> args, std::istream& in = std::cin) {
  CLI::App app{"Invariant random subgroups of finitary tree automorphism groups"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  std::uint64_t seed = 0, trials = 0;
  int depth = 0;
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
  auto* trials_opt = app.add_option("--trials", trials, "Number of trials");
  auto* depth_opt = app.add_option("--depth", depth, "Truncation depth for fingerprints/orbits");
  app.add_option("--config", g.config, "Experiment config (JSON path, '-' for stdin)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--strict", g.strict, "Treat inconclusive statistical checks as failures");
  app.add_flag("--timing", g.timing, "Include runtimes in check reports");

  auto* sample = app.add_subcommand("sample", "Sample an IRS and report the fingerprint histogram");
  auto* verify = app.add_subcommand("verify", "Run verification checks");
  std::vector<std::string> check_names;
  verify->add_option("checks", check_names, "Check names (default: all)");
  auto* distance = app.add_subcommand("distance", "Exact distances");
  std::string kind, a_text, b_text;
  distance->add_option("kind", kind, "ray|aut|partition|set|class")->required();
  distance->add_option("a", a_text, "First input (JSON or @file; address for ray)")->required();
  distance->add_option("b", b_text, "Second input")->required();
  auto* orbits_cmd = app.add_subcommand("orbits", "Orbit partitions of a generated subgroup");
  auto* decompose_cmd = app.add_subcommand("decompose", "Decompose a closed set into hanging subtrees");
  std::string set_text;
  decompose_cmd->add_option("set", set_text, "Closed set JSON or @file");

  Result result;
  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (*seed_opt) g.seed = seed;
    if (*trials_opt) g.trials = trials;
    if (*depth_opt) g.depth = depth;
    if (g.format == "csv" && !sample->parsed()) throw ParseError("CSV output is only offered by 'sample'");
    if (sample->parsed()) result = detail::cmd_sample(g, in);
    if (verify->parsed()) result = detail::cmd_verify(g, check_names, in);
    if (distance->parsed()) result = detail::cmd_distance(g, kind, a_text, b_text, in);
    if (orbits_cmd->parsed()) result = detail::cmd_orbits(g, in);
    if (decompose_cmd->parsed()) result = detail::cmd_decompose(g, set_text, in);
  } catch (const CLI::CallForHelp&) {
    result = {kOk, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    result = {kUsage, "", std::string(e.what()) + "\n"};
  } catch (const OrderCapExceeded& e) {
    result = {kCapExceeded, "", std::string("error: ") + e.what() + "\n"};
  } catch (const BudgetExceeded& e) {
    result = {kCapExceeded, "", std::string("error: ") + e.what() + "\n"};
  } catch (const Error& e) {
    result = {kUsage, "", std::string("error: ") + e.what() + "\n"};
  } catch (const nlohmann::json::exception& e) {
    result = {kUsage, "", std::string("error: ") + e.what() + "\n"};
  }
  return result;
}

}  // namespace irs::cli
