#include <gtest/gtest.h>

#include "oracles.hpp"
#include "treepack/solver.hpp"

using namespace treepack;

namespace {

bool verified(const AugTreeFamily& f, const Labeling& l, bool loops = true) {
  oracle::Rows rows, s;
  for (std::size_t k = 0; k < f.n(); ++k) {
    auto p = f.parents(k);
    rows.emplace_back(p.begin(), p.end());
    s.emplace_back(l.sigma(k).values().begin(), l.sigma(k).values().end());
  }
  return oracle::complete(rows, s, loops);
}

}  // namespace

TEST(Pack, StarFamilies) {
  for (std::size_t n : {1, 2, 3, 7, 20, 50, 100}) {
    const auto f = star_family(n);
    const auto r = pack(f);
    ASSERT_EQ(r.status, SolveStatus::Packed) << n;
    EXPECT_TRUE(is_complete(f, *r.labeling));
  }
}

TEST(Pack, SingletonIsIdentity) {
  const auto r = pack(star_family(1));
  ASSERT_EQ(r.status, SolveStatus::Packed);
  EXPECT_EQ(*r.labeling, Labeling::identity(1));
}

TEST(Pack, EveryOrderAndPruningSettingAgreesWithPhiUpToFive) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& f : FamilyEnumerator(n)) {
      const bool feasible =
          n > 3 || phi_enumerate(f, PhiMode::Essential, LoopMode::Functional, {}, false).essential_count > 0;
      for (auto order : {TreeOrder::LargestFirst, TreeOrder::SmallestFirst, TreeOrder::CompositionGuided}) {
        for (bool pruning : {true, false}) {
          SolveConfig c;
          c.order = order;
          c.symmetry_pruning = pruning;
          c.check_invariants = true;
          const auto r = pack(f, c);
          ASSERT_EQ(r.status == SolveStatus::Packed, feasible);
          if (r.labeling) ASSERT_TRUE(verified(f, *r.labeling));
        }
      }
    }
  }
}

TEST(Pack, ClassicalModeAgreesWithClassicalPhiAtThree) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& f : FamilyEnumerator(n)) {
      SolveConfig c;
      c.classical_mode = true;
      const auto r = pack(f, c);
      const bool feasible =
          phi_enumerate(f, PhiMode::Essential, LoopMode::Classical, {}, false).essential_count > 0;
      ASSERT_EQ(r.status == SolveStatus::Packed, feasible);
      if (r.labeling) EXPECT_TRUE(verified(f, *r.labeling, false));
    }
  }
}

TEST(Pack, DeterministicNodeCounts) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = generate_family(TreeKind::RandomUniform, 10, seed);
    SolveConfig c;
    c.seed = seed;
    const auto a = pack(f, c);
    const auto b = pack(f, c);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.nodes_expanded, b.nodes_expanded);
    EXPECT_EQ(a.labeling, b.labeling);
  }
}

TEST(Pack, TimeLimitMustBePositive) {
  SolveConfig c;
  c.time_limit_ms = 0;
  EXPECT_THROW(pack(star_family(3), c), Error);
}

TEST(Pack, SymmetryFactor) {
  // Largest star on 4 vertices: 4! for the fixed embedding; the star on Z_3
  // has 2 sibling leaves, on Z_2 a single one.
  const auto r = pack(star_family(4));
  EXPECT_EQ(r.symmetry_factor, 24 * 2);
  SolveConfig off;
  off.symmetry_pruning = false;
  EXPECT_EQ(pack(star_family(4), off).symmetry_factor, 1);
}

TEST(CompositionGuidedOrder, Examples) {
  EXPECT_TRUE(composition_guided_order(star_family(1)).empty());
  EXPECT_EQ(composition_guided_order(star_family(4)).size(), 3u);
  // Path in the largest slot, stars elsewhere.
  const auto f = AugTreeFamily::from_parents({{0}, {0, 0}, {0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 2, 3}});
  EXPECT_EQ(composition_guided_order(f).front(), 4u);
  // A path in a middle slot beats larger stars.
  const auto g = AugTreeFamily::from_parents({{0}, {0, 0}, {0, 0, 1}, {0, 0, 1, 2}, {0, 0, 0, 0, 0}});
  EXPECT_EQ(composition_guided_order(g).front(), 3u);
}

TEST(Sweep, SmallN) {
  const auto r3 = sweep(3, {});
  EXPECT_EQ(r3.packed, 2u);
  const auto r4 = sweep(4, {});
  EXPECT_EQ(r4.packed, 12u);
  EXPECT_TRUE(r4.falsification_candidates.empty());
  for (std::size_t i = 0; i < r4.entries.size(); ++i) EXPECT_EQ(r4.entries[i].index, i);
}

TEST(Sweep, ParallelMatchesSerial) {
  SweepOptions opt;
  opt.workers = 3;
  const auto a = sweep(5, {});
  const auto b = sweep(5, {}, opt);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].status, b.entries[i].status);
    EXPECT_EQ(a.entries[i].nodes, b.entries[i].nodes);
  }
  EXPECT_EQ(a.packed, 288u);
}

TEST(Sweep, Bound) {
  try {
    sweep(9, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BoundExceeded);
  }
}

TEST(StarIdentity, CompleteAtAllSizes) {
  for (std::size_t n : {1, 4, 50}) EXPECT_TRUE(is_complete(star_family(n), star_identity_labeling(n)));
}
