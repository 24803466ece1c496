#include <gtest/gtest.h>

#include "irs/all.hpp"

using namespace irs;

namespace {

VertexAddress V(const char* s, int d = 2) { return VertexAddress::parse(s, d); }

}  // namespace

TEST(Io, PortraitRoundTrip) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    auto g = haar_sample(3, 3, Flavor::symmetric, rng);
    auto back = portrait_from_json(parse_json_text(to_json(g).dump()));
    EXPECT_EQ(back, g);
    EXPECT_EQ(back.depth(), 3);
  }
}

TEST(Io, PortraitDefaultsAndErrors) {
  auto g = portrait_from_json(parse_json_text(R"({"perms":{"1":[1,0]}})"), 2, 3);
  EXPECT_EQ(g.depth(), 3);
  EXPECT_FALSE(g.at(V("1")).is_identity());
  EXPECT_THROW(portrait_from_json(parse_json_text(R"({"perms":{}})")), ParseError);
  EXPECT_THROW(portrait_from_json(parse_json_text(R"({"d":2,"depth":1,"perms":{"0":[1,1]}})")), Error);
  EXPECT_THROW(portrait_from_json(parse_json_text(R"({"d":2,"depth":1,"perms":{"0":"x"}})")), ParseError);
  EXPECT_THROW(portrait_from_json(parse_json_text(R"({"d":2,"depth":1,"perms":{"5":[1,0]}})")), Error);
}

TEST(Io, PartitionRoundTripAndValidation) {
  LevelPartition P(2, {{V("00"), V("11")}, {V("01")}, {V("10")}});
  auto back = partition_from_json(parse_json_text(to_json(P).dump()), 2);
  EXPECT_EQ(back.level, 2);
  EXPECT_EQ(back.blocks.size(), 3u);
  // Missing vertex and a wrong-level vertex.
  EXPECT_THROW(partition_from_json(parse_json_text(R"({"level":1,"blocks":[["0"]]})"), 2), Error);
  EXPECT_THROW(partition_from_json(parse_json_text(R"({"level":1,"blocks":[["0"],["10"]]})"), 2), Error);
  EXPECT_THROW(partition_from_json(parse_json_text(R"({"blocks":[]})"), 2), ParseError);
}

TEST(Io, ClosedSetFormsAgree) {
  auto a = closed_set_from_json(parse_json_text(R"({"d":2,"depth":3,"shadows":["00","111"]})"));
  auto b = closed_set_from_json(parse_json_text(to_json(a).dump()));
  EXPECT_EQ(a.levels(), b.levels());
  EXPECT_EQ(a.measure(), Rational(3, 8));
  EXPECT_THROW(closed_set_from_json(parse_json_text(R"({"d":2,"depth":2,"levels":[[""]]})")), ParseError);
  EXPECT_THROW(closed_set_from_json(parse_json_text(R"({"depth":2,"shadows":[]})")), ParseError);
}

TEST(Io, ClosedSetRejectsNonClosedLevels) {
  // "01" has no parent in level 1.
  EXPECT_THROW(closed_set_from_json(parse_json_text(R"({"d":2,"depth":2,"levels":[[""],["0"],["01","10"]]})")),
               Error);
}

TEST(Io, GroupConfig) {
  auto G = group_from_config(parse_json_text(R"({"d":3,"n":2,"flavor":"alternating"})"));
  EXPECT_EQ(G.d, 3);
  EXPECT_EQ(G.n, 2);
  EXPECT_EQ(G.flavor, Flavor::alternating);
  EXPECT_EQ(to_json(G)["flavor"], "alternating");
  EXPECT_EQ(group_from_config(parse_json_text(R"({"d":2,"n":1})")).flavor, Flavor::symmetric);
  EXPECT_THROW(group_from_config(parse_json_text(R"({"d":2})")), ParseError);
  EXPECT_THROW(group_from_config(parse_json_text(R"({"d":2,"n":1,"flavor":"cyclic"})")), Error);
  EXPECT_THROW(group_from_config(parse_json_text(R"({"d":11,"n":1})")), Error);
}

TEST(Io, SamplerSpecs) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  auto s = sampler_from_json(parse_json_text(R"({"kind":"LevelIRS","level":2,"top":"full"})"), G);
  ASSERT_TRUE(std::holds_alternative<LevelIRS>(s));
  EXPECT_EQ(std::get<LevelIRS>(s).n, 2);
  EXPECT_EQ(enumerate(std::get<LevelIRS>(s).L_top).order(), 8u);

  auto r = sampler_from_json(
      parse_json_text(R"({"kind":"StabilizerOfRandomSet","mode":"setwise","set":{"depth":2,"shadows":["0"]}})"), G);
  ASSERT_TRUE(std::holds_alternative<StabilizerOfRandomSet>(r));
  EXPECT_EQ(std::get<StabilizerOfRandomSet>(r).mode, StabilizerMode::setwise);

  auto f = sampler_from_json(
      parse_json_text(R"({"kind":"FixedRayIRS","components":[{"m":1,"top":"trivial"},{"m":0}]})"), G);
  const auto& fr = std::get<FixedRayIRS>(f);
  EXPECT_EQ(fr.component(0).top, ComponentSpec::Top::trivial);
  EXPECT_EQ(fr.component(1).m, 0);
  EXPECT_EQ(fr.component(2).top, ComponentSpec::Top::full);

  auto c = sampler_from_json(parse_json_text(R"({"kind":"CoupledIRS","m":1,"coupling":{"perms":{"":[1,0]}}})"), G);
  ASSERT_TRUE(std::get<CoupledIRS>(c).coupling.has_value());
  EXPECT_EQ(std::get<CoupledIRS>(c).coupling->depth(), 1);

  EXPECT_THROW(sampler_from_json(parse_json_text(R"({"kind":"LevelIRS","level":4})"), G), DepthExceeded);
  EXPECT_THROW(sampler_from_json(parse_json_text(R"({"kind":"LevelIRS","level":1,"top":"some"})"), G), ParseError);
  EXPECT_THROW(sampler_from_json(parse_json_text(R"({"kind":"StabilizerOfRandomSet","mode":"x","set":{"depth":1,"shadows":[]}})"), G),
               ParseError);
  EXPECT_THROW(sampler_from_json(parse_json_text(R"({"generators":[]})"), G), ParseError);
}

TEST(Io, DistanceAndReportSchemas) {
  LevelDistance r{Rational(1, 4), 2, false, false};
  auto j = to_json(r);
  EXPECT_EQ(j["value"], "1/4");
  EXPECT_EQ(j["decimal"], "0.25");
  EXPECT_EQ(j["agreement_level"], 2);
  EXPECT_FALSE(j.contains("no_agreement"));

  EmpiricalDistribution dist(5);
  TruncatedWreathGroup G(2, 2, Flavor::symmetric);
  dist.add(fingerprint(GeneratedSubgroup::trivial(G), 2));
  dist.add(fingerprint(GeneratedSubgroup::trivial(G), 2));
  dist.add(fingerprint(GeneratedSubgroup::full(G), 2));
  auto rep = distribution_report("FixedSubgroup", dist, 2);
  EXPECT_EQ(rep["trials"], 3);
  EXPECT_EQ(rep["seed"], 5);
  EXPECT_EQ(rep["support_size"], 2);
  EXPECT_EQ(rep["max_frequency"], "2/3");
  ASSERT_EQ(rep["support"].size(), 2u);
  EXPECT_TRUE(rep["support"][0].contains("fingerprint_hash"));
}

TEST(Io, MalformedText) {
  EXPECT_THROW(parse_json_text("{\"a\":"), ParseError);
  EXPECT_THROW(load_json_file("/no/such/file.json"), ParseError);
}
