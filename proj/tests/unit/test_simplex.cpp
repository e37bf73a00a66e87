#include <cmath>
#include <thread>

#include <gtest/gtest.h>

#include "builders.hpp"
#include "lp_oracle.hpp"
#include "mipdoor/lp.hpp"

namespace mipdoor {
namespace {

using testing::InstanceBuilder;

MipInstance two_row_lp() {
  // min -x - y  s.t.  x + 2y <= 4,  3x + y <= 6,  x, y >= 0.
  InstanceBuilder b("lp");
  const int x = b.add_var(-1.0, 0.0, kInfinity);
  const int y = b.add_var(-1.0, 0.0, kInfinity);
  b.add_row({{x, 1.0}, {y, 2.0}}, RowSense::kLessEqual, 4.0);
  b.add_row({{x, 3.0}, {y, 1.0}}, RowSense::kLessEqual, 6.0);
  return b.build();
}

TEST(Simplex, SolvesTwoRowLp) {
  const LpSolution s = solve_lp(two_row_lp());
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], 1.6, 1e-9);
  EXPECT_NEAR(s.x[1], 1.2, 1e-9);
  EXPECT_NEAR(s.objective, -2.8, 1e-9);
}

TEST(Simplex, KnapsackRootIsFractional) {
  const LpSolution s = solve_lp(testing::two_binary_knapsack());
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.x[0], 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(s.x[1], 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(s.objective, -4.0 / 3.0, 1e-9);
}

TEST(Simplex, DetectsInfeasibility) {
  InstanceBuilder b("inf");
  const int x = b.add_var(1.0, 0.0, 1.0);
  b.add_row({{x, 1.0}}, RowSense::kGreaterEqual, 2.0);
  EXPECT_EQ(solve_lp(b.build()).status, LpStatus::kInfeasible);
}

TEST(Simplex, DetectsUnboundedness) {
  InstanceBuilder b("unb");
  const int x = b.add_var(-1.0, 0.0, kInfinity);
  const int y = b.add_var(0.0, 0.0, 1.0);
  b.add_row({{x, 1.0}, {y, -1.0}}, RowSense::kGreaterEqual, 0.0);
  const LpSolution s = solve_lp(b.build());
  EXPECT_EQ(s.status, LpStatus::kUnbounded);
  EXPECT_TRUE(s.x.empty());
}

TEST(Simplex, EqualityRowsAndFreeVariables) {
  // min x + y  s.t.  x - y = 3,  x free,  y >= -1.
  InstanceBuilder b("eq");
  const int x = b.add_var(1.0, -kInfinity, kInfinity);
  const int y = b.add_var(1.0, -1.0, kInfinity);
  b.add_row({{x, 1.0}, {y, -1.0}}, RowSense::kEqual, 3.0);
  const LpSolution s = solve_lp(b.build());
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.x[0], 2.0, 1e-9);
  EXPECT_NEAR(s.x[1], -1.0, 1e-9);
  EXPECT_NEAR(s.objective, 1.0, 1e-9);
}

TEST(Simplex, ObjectiveIncludesOffset) {
  MipInstance inst = two_row_lp();
  inst.objective_offset = 10.0;
  EXPECT_NEAR(solve_lp(inst).objective, 7.2, 1e-9);
}

TEST(Simplex, BoundDeltaLaterEntriesWin) {
  const MipInstance inst = two_row_lp();
  const LpSolution s = solve_lp(inst, {{0, 0.0, 0.5}, {0, 0.0, 1.0}});
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.x[0], 1.0, 1e-9);
  EXPECT_NEAR(s.x[1], 1.5, 1e-9);
}

TEST(Simplex, BadDeltaIsRejected) {
  EXPECT_THROW(solve_lp(two_row_lp(), {{7, 0.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(solve_lp(two_row_lp(), {{0, 2.0, 1.0}}), std::invalid_argument);
}

TEST(Simplex, WarmStartAgreesWithColdStart) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const MipInstance inst = testing::random_lp(seed);
    const LpSolution root = solve_lp(inst);
    if (!root.optimal()) continue;
    const BoundDelta delta{{0, inst.lower[0], std::isfinite(inst.lower[0])
                                                  ? inst.lower[0] + 0.5 * (root.x[0] - inst.lower[0])
                                                  : root.x[0] - 1.0}};
    const LpSolution cold = solve_lp(inst, delta);
    const LpSolution warm = solve_lp(inst, delta, &root.basis);
    ASSERT_EQ(cold.status, warm.status) << "seed " << seed;
    if (cold.optimal()) {
      EXPECT_NEAR(cold.objective, warm.objective, 1e-7 * (1.0 + std::abs(cold.objective)))
          << "seed " << seed;
    }
  }
}

TEST(Simplex, MatchesVertexEnumerationOnRandomLps) {
  int optimal = 0;
  for (std::uint64_t seed = 1000; seed < 1200; ++seed) {
    const MipInstance inst = testing::random_lp(seed);
    const testing::VertexLpResult expected = testing::solve_by_vertex_enumeration(inst);
    const LpSolution got = solve_lp(inst);
    ASSERT_EQ(got.status, expected.status) << "seed " << seed;
    if (got.optimal()) {
      ++optimal;
      EXPECT_NEAR(got.objective, expected.objective, 1e-6 * (1.0 + std::abs(expected.objective)))
          << "seed " << seed;
      EXPECT_LE(max_violation(inst, got.x), 1e-6) << "seed " << seed;
    }
  }
  EXPECT_GT(optimal, 50);
}

TEST(Simplex, RootCacheSolvesOnce) {
  const MipInstance inst = testing::two_binary_knapsack();
  RootLpCache cache(inst);
  EXPECT_EQ(cache.solves(), 0);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) threads.emplace_back([&] { (void)cache.get(); });
  for (auto& t : threads) t.join();
  EXPECT_EQ(cache.solves(), 1);
  EXPECT_EQ(cache.get(), solve_lp(inst));
}

}  // namespace
}  // namespace mipdoor
