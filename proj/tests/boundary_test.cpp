#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "irs/boundary.hpp"
#include "oracles.hpp"

using namespace irs;

namespace {

VertexAddress V(const char* s, int d = 2) { return VertexAddress::parse(s, d); }

/// Random closed set: upward closure of a random subset of L_depth.
ClosedSetApprox random_set(int d, int depth, Rng& rng) {
  std::vector<VertexAddress> pick;
  for (const auto& v : LevelSet::full(d, depth)) {
    if (rng.below(3) == 0) pick.push_back(v);
  }
  return ClosedSetApprox::from_deep_level(d, depth, LevelSet(depth, pick));
}

/// Hausdorff distance between the clopen sets through A_N and B_N, from ray distances.
Rational true_hausdorff(const ClosedSetApprox& A, const ClosedSetApprox& B) {
  auto one_sided = [](const LevelSet& X, const LevelSet& Y) {
    Rational worst = 0;
    for (const auto& x : X) {
      Rational best = 2;
      for (const auto& y : Y) best = std::min(best, x == y ? Rational(0) : ray_distance(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(A.bottom(), B.bottom()), one_sided(B.bottom(), A.bottom()));
}

}  // namespace

TEST(ClosedSet, RejectsInconsistentLevels) {
  EXPECT_THROW(ClosedSetApprox(2, {LevelSet(0, {VertexAddress()}), LevelSet(1)}), InvalidArgument);
  EXPECT_THROW(ClosedSetApprox(2, {LevelSet(0), LevelSet(1, {V("1")})}), InvalidArgument);
  auto ok = ClosedSetApprox(2, {LevelSet(0, {VertexAddress()}), LevelSet(1, {V("1")}), LevelSet(2, {V("10"), V("11")})});
  EXPECT_EQ(ok, ClosedSetApprox::shadow(V("1"), 2, 2));
  EXPECT_TRUE(ClosedSetApprox::empty(3, 4).is_empty());
  EXPECT_TRUE(ClosedSetApprox::full(3, 2).is_full());
}

TEST(Coloring, Examples) {
  auto all_red = coloring_from_set(ClosedSetApprox::full(2, 3));
  auto all_blue = coloring_from_set(ClosedSetApprox::empty(2, 3));
  for (int k = 0; k <= 3; ++k) {
    for (const auto& v : LevelSet::full(2, k)) {
      EXPECT_EQ(all_red.color(v), Color::red);
      EXPECT_EQ(all_blue.color(v), Color::blue);
    }
  }
  auto phi = coloring_from_set(ClosedSetApprox::shadow(V("0"), 2, 3));
  EXPECT_EQ(phi.color(VertexAddress()), Color::green);
  EXPECT_EQ(phi.color(V("0")), Color::red);
  EXPECT_EQ(phi.color(V("1")), Color::blue);
  EXPECT_EQ(phi.color(V("010")), Color::red);
  EXPECT_EQ(phi.color(V("101")), Color::blue);
}

TEST(Coloring, HeredityAndRoundTrip) {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    int d = 2 + static_cast<int>(rng.below(2));
    auto C = random_set(d, 4, rng);
    auto phi = coloring_from_set(C);
    EXPECT_TRUE(phi.satisfies_heredity());
    for (int k = 0; k <= 4; ++k) {
      std::vector<VertexAddress> nonblue;
      for (const auto& v : LevelSet::full(d, k)) {
        if (phi.color(v) != Color::blue) nonblue.push_back(v);
        // Red iff the whole level-N shadow lies in C_N.
        auto sh = shadow_at_level(v, 4, d);
        bool all_in = std::all_of(sh.begin(), sh.end(), [&](const auto& w) { return C.bottom().contains(w); });
        EXPECT_EQ(phi.color(v) == Color::red, all_in);
      }
      EXPECT_EQ(LevelSet(k, nonblue), C.level(k));
    }
  }
}

TEST(Clopen, Examples) {
  auto sh = ClosedSetApprox::shadow(V("01"), 2, 5);
  EXPECT_FALSE(is_clopen_at_depth(sh, 1));
  for (int k = 2; k <= 5; ++k) EXPECT_TRUE(is_clopen_at_depth(sh, k));
  auto ray = ClosedSetApprox::ray(V("11111"), 2);
  for (int k = 0; k < 5; ++k) EXPECT_FALSE(is_clopen_at_depth(ray, k));
  auto two = ClosedSetApprox::union_of_shadows({V("00"), V("11")}, 2, 4);
  EXPECT_FALSE(is_clopen_at_depth(two, 1));
  EXPECT_TRUE(is_clopen_at_depth(two, 2));
}

TEST(Hausdorff, Examples) {
  auto a = ClosedSetApprox::shadow(V("0"), 2, 3);
  auto b = ClosedSetApprox::shadow(V("1"), 2, 3);
  EXPECT_EQ(hausdorff_distance_approx(a, b).value, Rational(1));
  EXPECT_EQ(true_hausdorff(a, b), Rational(1));
  EXPECT_TRUE(hausdorff_distance_approx(a, a).equal_at_truncation);
  auto c1 = ClosedSetApprox::shadow(V("00"), 2, 3);
  auto c2 = ClosedSetApprox::union_of_shadows({V("00"), V("111")}, 2, 3);
  // C2 already contains "1" on level 1, so the sets agree only at the root.
  EXPECT_EQ(hausdorff_distance_approx(c1, c2).value, Rational(1));
  EXPECT_EQ(true_hausdorff(c1, c2), Rational(1));
  auto c3 = ClosedSetApprox::union_of_shadows({V("00"), V("011")}, 2, 3);
  EXPECT_EQ(hausdorff_distance_approx(c1, c3).value, make_rational(1, 2));
  EXPECT_THROW(hausdorff_distance_approx(a, ClosedSetApprox::empty(2, 3)), InvalidArgument);
}

TEST(Hausdorff, MatchesRayDistanceOracle) {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    auto A = random_set(2, 4, rng);
    auto B = random_set(2, 4, rng);
    if (A.is_empty() || B.is_empty() || A == B) continue;
    EXPECT_EQ(hausdorff_distance_approx(A, B).value, true_hausdorff(A, B));
  }
}

TEST(Translate, Examples) {
  auto C = ClosedSetApprox::shadow(V("0"), 2, 3);
  EXPECT_EQ(translate_set(C, FinitaryAutomorphism::identity(2)), C);
  auto swap = FinitaryAutomorphism::elementary(2, 1, VertexAddress(), Permutation::transposition(2, 0, 1));
  EXPECT_EQ(translate_set(C, swap), ClosedSetApprox::shadow(V("1"), 2, 3));
}

TEST(Translate, CommutesWithColoring) {
  Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    auto C = random_set(3, 3, rng);
    auto g = haar_sample(3, 3, Flavor::symmetric, rng);
    EXPECT_EQ(coloring_from_set(translate_set(C, g)), translate_coloring(coloring_from_set(C), g));
  }
}

TEST(Decompose, EmptySet) {
  auto parts = decompose(ClosedSetApprox::empty(2, 3));
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].attach_level, 0);
  EXPECT_EQ(parts[0].hanging_roots, std::vector<VertexAddress>{VertexAddress()});
  for (const auto& v : LevelSet::full(2, 3)) EXPECT_TRUE(parts[0].member(v, ClosedSetApprox::empty(2, 3)));
}

TEST(Decompose, FullBoundary) {
  auto C = ClosedSetApprox::full(2, 3);
  auto parts = decompose(C);
  ASSERT_EQ(parts.size(), 4u);
  for (const auto& p : parts) {
    EXPECT_TRUE(p.hanging_roots.empty());
    EXPECT_TRUE(p.boundary_piece(3, 2).empty());
  }
}

TEST(Decompose, RayHangsOneSiblingPerLevel) {
  auto C = ClosedSetApprox::ray(V("11111"), 2);
  auto parts = decompose(C);
  ASSERT_EQ(parts.size(), 6u);
  for (int i = 0; i < 5; ++i) {
    std::string sib(static_cast<std::size_t>(i), '1');
    sib += '0';
    EXPECT_EQ(parts[static_cast<std::size_t>(i)].hanging_roots, std::vector<VertexAddress>{V(sib.c_str())});
  }
  EXPECT_TRUE(parts[5].hanging_roots.empty());
}

TEST(Decompose, DisjointCover) {
  Rng rng(15);
  for (int t = 0; t < 60; ++t) {
    int d = 2 + static_cast<int>(rng.below(2));
    auto C = random_set(d, 3, rng);
    if (C.is_empty()) continue;
    auto parts = decompose(C);
    for (int k = 0; k <= 3; ++k) {
      for (const auto& v : LevelSet::full(d, k)) {
        int owners = C.level(k).contains(v) ? 1 : 0;
        for (const auto& p : parts) owners += p.in_hanging_part(v) ? 1 : 0;
        EXPECT_EQ(owners, 1) << v.str();
      }
    }
    std::vector<VertexAddress> pieces(C.bottom().begin(), C.bottom().end());
    for (const auto& p : parts) {
      auto b = p.boundary_piece(3, d);
      for (const auto& v : b) EXPECT_FALSE(C.bottom().contains(v));
      pieces.insert(pieces.end(), b.begin(), b.end());
    }
    std::sort(pieces.begin(), pieces.end());
    EXPECT_EQ(pieces, LevelSet::full(d, 3).members());
  }
}

TEST(Decompose, TranslateEquivariance) {
  Rng rng(16);
  for (int t = 0; t < 50; ++t) {
    auto C = random_set(2, 4, rng);
    auto g = haar_sample(2, 4, Flavor::symmetric, rng);
    auto lhs = decompose(translate_set(C, g));
    auto rhs = decompose(C);
    ASSERT_EQ(lhs.size(), rhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      EXPECT_EQ(lhs[i].root_set, translate_level_set(rhs[i].root_set, g));
      std::vector<VertexAddress> moved;
      for (const auto& r : rhs[i].hanging_roots) moved.push_back(apply(g, r));
      std::sort(moved.begin(), moved.end());
      EXPECT_EQ(lhs[i].hanging_roots, moved);
    }
  }
}

TEST(Congruence, EmptySetGivesLevelStabilizer) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  for (int m = 0; m <= 3; ++m) {
    auto L = generalized_congruence_gens(ClosedSetApprox::empty(2, 2), {{m}}, G);
    EXPECT_EQ(enumerate(L.group).elements(), enumerate(level_stabilizer_gens(G, m)).elements());
  }
}

TEST(Congruence, FullSetGivesTrivial) {
  TruncatedWreathGroup G(3, 2, Flavor::alternating);
  auto L = generalized_congruence_gens(ClosedSetApprox::full(3, 2), {}, G);
  EXPECT_EQ(enumerate(L.group).order(), 1u);
}

TEST(Congruence, FixedSetOfRay) {
  // Read at the ambient level n > N and closed upward, the fixed set is C.
  TruncatedWreathGroup G(2, 4, Flavor::symmetric);
  auto C = ClosedSetApprox::ray(V("111"), 2);
  auto L = generalized_congruence_gens(C, {}, G);
  auto fixed = fixed_vertices(L.group, 4);
  EXPECT_EQ(fixed, shadow_at_level(C.bottom(), 4, 2));
  EXPECT_EQ(ClosedSetApprox::from_deep_level(2, 3, fixed), C);
  // At n = N the hanging root "110" sits on the bottom level and is fixed by everything.
  TruncatedWreathGroup G3(2, 3, Flavor::symmetric);
  auto fixed3 = fixed_vertices(generalized_congruence_gens(C, {}, G3).group, 3);
  EXPECT_EQ(fixed3, LevelSet(3, {V("110"), V("111")}));
}

TEST(Congruence, ContainsCAndRigidInside) {
  Rng rng(17);
  for (auto G : {TruncatedWreathGroup(2, 4, Flavor::symmetric), TruncatedWreathGroup(3, 3, Flavor::alternating)}) {
    for (int t = 0; t < 8; ++t) {
      auto C = random_set(G.d, 2, rng);
      CongruenceSpec spec{{static_cast<int>(rng.below(2)), static_cast<int>(rng.below(3)), 0}};
      auto L = generalized_congruence_gens(C, spec, G);
      auto R = generalized_rigid_gens(C, spec, G);
      auto fixed = fixed_vertices(L.group, G.n);
      for (const auto& v : shadow_at_level(C.bottom(), G.n, G.d)) EXPECT_TRUE(fixed.contains(v));
      if (G.d == 2) {
        auto EL = enumerate(L.group);
        auto ER = enumerate(R.group);
        for (const auto& r : ER.elements()) EXPECT_TRUE(EL.contains(r));
        // In the full wreath group the rigid and congruence versions coincide.
        EXPECT_EQ(ER.elements(), EL.elements());
      } else {
        for (const auto& r : R.group.generators()) {
          for (const auto& v : shadow_at_level(C.bottom(), G.n, G.d)) EXPECT_EQ(apply(r, v), v);
        }
      }
    }
  }
}

TEST(Congruence, FixEqualsCWhenDepthsVanish) {
  Rng rng(18);
  TruncatedWreathGroup G(2, 4, Flavor::symmetric);
  for (int t = 0; t < 20; ++t) {
    auto C = random_set(2, 3, rng);
    auto L = generalized_congruence_gens(C, {}, G);
    EXPECT_EQ(fixed_vertices(L.group, 4), shadow_at_level(C.bottom(), 4, 2));
  }
}

TEST(Rigid, RayOrderMatchesProductPrediction) {
  TruncatedWreathGroup G(3, 2, Flavor::alternating);
  auto C = ClosedSetApprox::ray(VertexAddress::parse("0", 3), 3);
  auto R = enumerate(generalized_rigid_gens(C, {}, G).group);
  // Hanging subtrees at "1" and "2", each with one vertex above depth 2: 3 * 3.
  EXPECT_EQ(R.order(), 9u);
  auto deeper = ClosedSetApprox::ray(VertexAddress::parse("01", 3), 3);
  TruncatedWreathGroup G3(3, 3, Flavor::alternating);
  auto R3 = enumerate(generalized_rigid_gens(deeper, {}, G3).group);
  // "1", "2": 4 vertices each above depth 3; "00", "02": one vertex each.
  EXPECT_EQ(R3.order(), static_cast<std::size_t>(std::pow(3, 4 + 4 + 1 + 1)));
}

TEST(Congruence, TruncatedSubtreesAreFlagged) {
  TruncatedWreathGroup G(2, 3, Flavor::symmetric);
  auto C = ClosedSetApprox::ray(V("11"), 2);
  auto L = generalized_congruence_gens(C, {{0, 2}}, G);
  EXPECT_EQ(L.truncated_roots, std::vector<VertexAddress>{V("10")});
  EXPECT_THROW(generalized_congruence_gens(ClosedSetApprox::ray(V("1111"), 2), {}, G), DepthExceeded);
}

TEST(Congruence, SpineStyleMovesHangingRoots) {
  TruncatedWreathGroup G(3, 2, Flavor::symmetric);
  auto C = ClosedSetApprox::ray(VertexAddress::parse("0", 3), 3);
  CongruenceSpec spec{{0}, 0, DecompositionStyle::spine};
  auto L = enumerate(generalized_congruence_gens(C, spec, G).group);
  // S_3 at "1" and "2" plus the swap of "1" and "2" at the root: (6*6)*2.
  EXPECT_EQ(L.order(), 72u);
  for (const auto& g : L.elements()) EXPECT_EQ(apply(g, VertexAddress::parse("00", 3)), VertexAddress::parse("00", 3));
}

TEST(GreenRay, Examples) {
  EXPECT_FALSE(find_green_ray(ClosedSetApprox::shadow(V("01"), 2, 4)).has_value());
  EXPECT_FALSE(find_green_ray(ClosedSetApprox::empty(2, 4)).has_value());
  EXPECT_FALSE(find_green_ray(ClosedSetApprox::full(2, 4)).has_value());
  auto ray = find_green_ray(ClosedSetApprox::ray(V("1111"), 2));
  ASSERT_TRUE(ray.has_value());
  EXPECT_EQ(ray->str(), "1111");
}

TEST(GreenRay, PathIsGreenWithBlueDescendants) {
  Rng rng(19);
  for (int t = 0; t < 100; ++t) {
    auto C = greedy_measure_set(2, 4, make_rational(static_cast<std::int64_t>(rng.below(17)) + 1, 19));
    auto phi = coloring_from_set(C);
    auto path = green_ray_path(C);
    if (path.empty()) {
      EXPECT_TRUE(is_clopen_at_depth(C, 3));
      continue;
    }
    EXPECT_TRUE(C.bottom().contains(path.back()));
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      EXPECT_EQ(phi.color(path[i]), Color::green);
      auto sh = shadow_at_level(path[i], 4, 2);
      EXPECT_TRUE(std::any_of(sh.begin(), sh.end(), [&](const auto& w) { return phi.color(w) == Color::blue; }));
    }
  }
}

TEST(GreedyMeasure, TruncatedMeasureBracketsTarget) {
  for (int d : {2, 3}) {
    for (auto r : {make_rational(1, 10), make_rational(1, 3), make_rational(2, 7), make_rational(1, 2)}) {
      for (int N = 1; N <= 7; ++N) {
        auto C = greedy_measure_set(d, N, r);
        EXPECT_GE(C.measure(), r);
        EXPECT_LE(C.measure(), r + reciprocal_power(static_cast<unsigned>(d), static_cast<unsigned>(N)));
      }
    }
  }
  auto C = greedy_measure_set(2, 6, make_rational(1, 10));
  for (int k = 0; k < 6; ++k) EXPECT_FALSE(is_clopen_at_depth(C, k));
  EXPECT_TRUE(greedy_measure_set(2, 3, Rational(1)).is_full());
}

TEST(ClassDistance, Examples) {
  auto G = enumerate_group({2, 2, Flavor::symmetric});
  auto a = ClosedSetApprox::shadow(V("0"), 2, 2);
  auto b = ClosedSetApprox::shadow(V("1"), 2, 2);
  EXPECT_TRUE(class_distance_at_depth(a, b, G).equal_at_truncation);
  Rng rng(20);
  auto g = haar_sample(2, 2, Flavor::symmetric, rng);
  auto c = ClosedSetApprox::union_of_shadows({V("00"), V("11")}, 2, 2);
  EXPECT_TRUE(class_distance_at_depth(c, translate_set(c, g), G).equal_at_truncation);
  auto small = ClosedSetApprox::shadow(V("00"), 2, 2);
  auto r = class_distance_at_depth(small, a, G);
  EXPECT_FALSE(r.equal_at_truncation);
  Rational best = 2;
  for (const auto& h : G.elements()) best = std::min(best, hausdorff_distance_approx(translate_set(small, h), a).value);
  EXPECT_EQ(r.value, best);
  EXPECT_GT(r.value, 0);
}
