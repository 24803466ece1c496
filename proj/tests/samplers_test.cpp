#include <gtest/gtest.h>

#include <set>

#include "irs/samplers.hpp"
#include "oracles.hpp"

using namespace irs;

namespace {

VertexAddress V(const char* s, int d = 2) { return VertexAddress::parse(s, d); }

FinitaryAutomorphism swap_at(const char* v, int d, int depth) {
  return FinitaryAutomorphism::elementary(d, depth, V(v, d), Permutation::transposition(d, 0, 1));
}

bool is_subgroup_of(const GeneratedSubgroup& A, const GeneratedSubgroup& B) {
  auto b = enumerate(B);
  auto a = enumerate(A);
  for (const auto& g : a.elements()) {
    if (!b.contains(g)) return false;
  }
  return true;
}

}  // namespace

TEST(Samplers, UniformConjugateGivesConjugates) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  GeneratedSubgroup L(G, {swap_at("0", 2, 3)});
  Sampler s(UniformConjugate{L});
  Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    auto H = enumerate(s.sample(rng));
    ASSERT_EQ(H.order(), 2u);
    // The non-trivial element fixes level 1 and moves level 2.
    for (const auto& g : H.elements()) {
      if (g.is_identity()) continue;
      EXPECT_TRUE(g.at(VertexAddress()).is_identity());
      EXPECT_EQ(fixed_vertices(H, 2).members().size(), 2u);
    }
  }
}

TEST(Samplers, NormalSubgroupIsAnAtom) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  auto dist = sample_distribution(UniformConjugate{level_stabilizer_gens(G, 1)}, 50, 3, 3);
  EXPECT_EQ(dist.support_size(), 1u);
  EXPECT_EQ(dist.max_frequency(), Rational(1));
}

TEST(Samplers, StabilizerCacheMatchesLiteralFiltering) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  auto C = ClosedSetApprox::from_deep_level(2, 2, LevelSet(2, {V("00"), V("01"), V("10")}));
  auto ambient = enumerate_group(G);
  for (auto mode : {StabilizerMode::pointwise, StabilizerMode::setwise}) {
    Sampler s(StabilizerOfRandomSet{C, G, mode});
    Rng rng(11), mirror(11);
    for (int t = 0; t < 40; ++t) {
      auto H = s.sample(rng);
      // Replay the Haar draw to recover the translate.
      auto g = haar_sample(2, 3, Flavor::symmetric, mirror);
      auto shadow = shadow_at_level(translate_level_set(C.bottom(), g), 3, 2);
      auto literal = mode == StabilizerMode::pointwise ? pointwise_stabilizer(ambient, shadow)
                                                       : setwise_stabilizer(ambient, shadow);
      ASSERT_EQ(enumerate(H).elements(), literal.elements());
    }
  }
}

TEST(Samplers, LevelIrsContainsLevelStabilizer) {
  TruncatedWreathGroup G(2, 4, Flavor::symmetric);
  TruncatedWreathGroup top(2, 2, Flavor::symmetric);
  GeneratedSubgroup L(top, {swap_at("1", 2, 2)});
  Sampler s(LevelIRS{G, 2, L});
  auto stab = level_stabilizer_gens(G, 2);
  auto stab_order = enumerate(stab).order();
  Rng rng(5);
  std::set<std::uint64_t> seen;
  for (int t = 0; t < 6; ++t) {
    auto H = s.sample(rng);
    EXPECT_TRUE(is_subgroup_of(stab, H));
    EXPECT_EQ(enumerate(H).order(), 2 * stab_order);
    seen.insert(fingerprint(H, 2).hash);
  }
  // Two conjugates of a level-1 swap in S_2 wr S_2.
  EXPECT_EQ(seen.size(), 2u);
}

TEST(Samplers, LevelIrsRejectsWrongTopGroup) {
  TruncatedWreathGroup G(2, 4, Flavor::symmetric);
  GeneratedSubgroup L(TruncatedWreathGroup(2, 3, Flavor::symmetric), {});
  EXPECT_THROW(Sampler(LevelIRS{G, 2, L}), InvalidArgument);
  EXPECT_THROW(Sampler(LevelIRS{G, 5, L}), DepthExceeded);
}

TEST(Samplers, DefaultFixedRayIsRayStabilizer) {
  TruncatedWreathGroup G(2, 4, Flavor::symmetric);
  Sampler s(FixedRayIRS{G, {}});
  auto ambient = enumerate_group(G);
  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    auto H = enumerate(s.sample(rng));
    // In the binary tree a fixed vertex fixes its sibling too.
    auto fixed = fixed_vertices(H, 4);
    ASSERT_EQ(fixed.members().size(), 2u);
    auto end = fixed.members()[0];
    auto literal = pointwise_stabilizer(ambient, LevelSet(4, {end}));
    EXPECT_EQ(H.elements(), literal.elements());
    EXPECT_EQ(H.order(), 2048u);
    EXPECT_EQ(fix_set_of_sample(H, 3), ClosedSetApprox::ray(*end.parent(), 2));
  }
}

TEST(Samplers, FixedRayComponentsAreFixedPointFree) {
  // Level-1 tops leave only the ray fixed.
  TruncatedWreathGroup G(3, 3, Flavor::symmetric);
  std::vector<ComponentSpec> spec(3, ComponentSpec{1, ComponentSpec::Top::trivial, {}});
  Sampler s(FixedRayIRS{G, spec});
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    auto H = s.sample(rng);
    // Level-3 survivors are the children of the last ray vertex.
    auto fixed = fixed_vertices(H, 3).members();
    ASSERT_EQ(fixed.size(), 3u);
    EXPECT_EQ(*fixed[0].parent(), *fixed[2].parent());
    EXPECT_EQ(fix_set_of_sample(H, 2), ClosedSetApprox::ray(*fixed[0].parent(), 3));
    // Off-ray children of the root are fixed (trivial top).
    EXPECT_EQ(fixed_vertices(H, 1).members().size(), 3u);
  }
}

TEST(Samplers, ComponentTopGeneratorsAreTransported) {
  TruncatedWreathGroup G(3, 2, Flavor::symmetric);
  auto x = FinitaryAutomorphism::elementary(3, 1, VertexAddress(), Permutation::transposition(3, 1, 2));
  ComponentSpec c0{1, ComponentSpec::Top::generators, {x}};
  Sampler s(FixedRayIRS{G, {c0}});
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    auto H = enumerate(s.sample(rng));
    auto ray = fixed_vertices(H, 2).members();
    ASSERT_EQ(ray.size(), 1u);
    // The root permutation swaps the two off-ray children.
    bool found = false;
    for (const auto& g : H.elements()) {
      auto p = g.at(VertexAddress());
      if (!p.is_identity()) {
        EXPECT_EQ(p(ray[0].digit(0)), ray[0].digit(0));
        found = true;
      }
    }
    EXPECT_TRUE(found);
  }
}

TEST(Samplers, ComponentTopRejectsRayMoves) {
  TruncatedWreathGroup G(3, 2, Flavor::symmetric);
  auto bad = FinitaryAutomorphism::elementary(3, 1, VertexAddress(), Permutation::transposition(3, 0, 1));
  Sampler s(FixedRayIRS{G, {ComponentSpec{1, ComponentSpec::Top::generators, {bad}}}});
  Rng rng(1);
  EXPECT_THROW(s.sample(rng), InvalidArgument);
}

TEST(Samplers, CouplingHalvesTheTop) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  Sampler coupled(CoupledIRS{FixedRayIRS{G, {}}, 2, std::nullopt});
  std::vector<ComponentSpec> loose{{2, ComponentSpec::Top::full, {}}, {2, ComponentSpec::Top::full, {}}};
  Sampler independent(FixedRayIRS{G, loose});
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    auto H = enumerate(coupled.sample(rng));
    auto K = enumerate(independent.sample(rng));
    EXPECT_EQ(H.order(), 8u);
    EXPECT_EQ(K.order(), 16u);
    EXPECT_EQ(fixed_vertices(H, 3).members().size(), 2u);
  }
}

TEST(Samplers, CoupledDepthIsValidated) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  EXPECT_THROW(Sampler(CoupledIRS{FixedRayIRS{G, {}}, 3, std::nullopt}), DepthExceeded);
}

TEST(Fingerprint, EquivariantUnderConjugation) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  GeneratedSubgroup H(G, {swap_at("0", 2, 3), swap_at("10", 2, 3)});
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    auto g = haar_sample(2, 3, Flavor::symmetric, rng);
    for (int k = 0; k <= 3; ++k) {
      EXPECT_EQ(fingerprint(conjugate_subgroup(H, g), k), conjugate_fingerprint(fingerprint(H, k), g));
    }
  }
}

TEST(Fingerprint, RestrictsToQuotient) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  auto fp = fingerprint(level_stabilizer_gens(G, 1), 1);
  EXPECT_EQ(fp.size(), 1u);
  EXPECT_EQ(fingerprint(GeneratedSubgroup::full(G), 2).size(), 8u);
  EXPECT_THROW(fingerprint(GeneratedSubgroup::full(G), 4), DepthExceeded);
}

TEST(Fingerprint, CoarseFallbackPastCap) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  auto full = GeneratedSubgroup::full(G);
  auto fp = fingerprint(full, 3, 10);
  EXPECT_FALSE(fp.exact);
  EXPECT_EQ(fp, fingerprint(GeneratedSubgroup::full(G), 3, 10));
  EXPECT_FALSE(fp == fingerprint(level_stabilizer_gens(G, 1), 3, 10));
  EXPECT_TRUE(fingerprint(full, 3).exact);
}

TEST(Fingerprint, QuotientImageMatchesEnumeration) {
  TruncatedWreathGroup G(2, 4, Flavor::symmetric);
  GeneratedSubgroup H(G, {FinitaryAutomorphism::from_entries(2, 4, {{VertexAddress::parse("0", 2), Permutation::from_images({1, 0})}}),
                          FinitaryAutomorphism::from_entries(2, 4, {{VertexAddress::parse("101", 2), Permutation::from_images({1, 0})}})});
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(fingerprint(H, k), fingerprint(enumerate(H), k)) << k;
}

TEST(Distribution, ExactTotalVariation) {
  TruncatedWreathGroup G(2, 2, Flavor::symmetric);
  auto a = fingerprint(GeneratedSubgroup::trivial(G), 2);
  auto b = fingerprint(GeneratedSubgroup::full(G), 2);
  EmpiricalDistribution p, q;
  p.add(a, 3);
  p.add(b, 1);
  q.add(b, 2);
  EXPECT_EQ(total_variation(p, q), Rational(3, 4));
  EXPECT_EQ(total_variation(p, p), Rational(0));
  EXPECT_EQ(joint_support(p, q), 2u);
  EXPECT_EQ(p.max_frequency(), Rational(3, 4));
}

TEST(Distribution, SeedDeterminesResult) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  IRSSampler s = UniformConjugate{GeneratedSubgroup(G, {swap_at("00", 2, 3)})};
  auto a = sample_distribution(s, 200, 3, 99).sorted();
  auto b = sample_distribution(s, 200, 3, 99).sorted();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].first, b[i].first);
    EXPECT_EQ(a[i].second, b[i].second);
  }
  EXPECT_EQ(a.size(), 4u);
}

TEST(Invariance, UniformConjugatePasses) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  IRSSampler s = UniformConjugate{GeneratedSubgroup(G, {swap_at("00", 2, 3)})};
  auto r = invariance_test(s, swap_at("", 2, 3), 2000, 4);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(to_double(r.statistic), 0.05);
}

TEST(Invariance, FixedSubgroupFails) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  IRSSampler s = FixedSubgroup{GeneratedSubgroup(G, {swap_at("00", 2, 3)})};
  auto r = invariance_test(s, swap_at("", 2, 3), 500, 4);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.statistic, Rational(1));
}

TEST(Invariance, RandomSetStabilizerPasses) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  auto C = ClosedSetApprox::from_deep_level(2, 3, LevelSet(3, {V("000"), V("011")}));
  IRSSampler s = StabilizerOfRandomSet{C, G, StabilizerMode::pointwise};
  EXPECT_TRUE(invariance_test(s, swap_at("1", 2, 3), 2000, 8).pass);
}

TEST(Projection, SectionsOfVertexStabilizer) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  auto H = enumerate_group(G);
  auto P = project_to_subtree(H, V("0"));
  EXPECT_EQ(P.size(), 8u);
  for (const auto& x : P) EXPECT_LE(x.support_depth(), 2);
}
