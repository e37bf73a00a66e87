#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "mipdoor/errors.hpp"
#include "mipdoor/metrics.hpp"

namespace mipdoor {
namespace {

TEST(ShiftedGeomMean, Examples) {
  EXPECT_NEAR(shifted_geom_mean(std::vector<double>{5.0}, 10.0), 5.0, 1e-12);
  EXPECT_NEAR(shifted_geom_mean(std::vector<double>{0.0, 0.0}, 10.0), 0.0, 1e-12);
  EXPECT_NEAR(shifted_geom_mean(std::vector<double>{100.0, 400.0}, 100.0), 216.227766, 1e-6);
  EXPECT_NEAR(shifted_geom_mean(std::vector<double>{2.0, 8.0}, 0.0), 4.0, 1e-12);
}

TEST(ShiftedGeomMean, Errors) {
  EXPECT_THROW(shifted_geom_mean(std::vector<double>{}, 10.0), EmptyInput);
  EXPECT_THROW(shifted_geom_mean(std::vector<double>{-1.0}, 10.0), std::invalid_argument);
  EXPECT_THROW(shifted_geom_mean(std::vector<double>{1.0}, -1.0), std::invalid_argument);
}

TEST(MetricsRow, SolvedStatuses) {
  SolveReport r;
  r.status = SolveStatus::kInfeasible;
  EXPECT_TRUE(metrics_row("a", r).solved);
  r.status = SolveStatus::kLimitReached;
  EXPECT_FALSE(metrics_row("a", r).solved);
}

std::vector<MetricsRow> rows() {
  return {{"a", 10, 1.0, 0.0, true},
          {"b", 300, 20.0, 0.0, true},
          {"c", 5000, 300.0, 0.2, false},
          {"d", 4000, 300.0, std::numeric_limits<double>::infinity(), false}};
}

TEST(CompareRuns, SelfComparison) {
  const std::vector<MetricsRow> a = rows();
  const Comparison c = compare_runs(a, a);
  EXPECT_EQ(c.instances.size(), 4u);
  EXPECT_EQ(c.solved_by_both, 2);
  EXPECT_EQ(c.solved_by_neither, 2);
  EXPECT_EQ(c.gap_wins_a, 0);
  EXPECT_EQ(c.gap_wins_b, 0);
  EXPECT_EQ(c.nodes_sgm_a, c.nodes_sgm_b);
  EXPECT_NEAR(c.nodes_sgm_a, std::sqrt(110.0 * 400.0) - 100.0, 1e-9);
}

TEST(CompareRuns, CountsWinsAndExclusiveSolves) {
  std::vector<MetricsRow> a = rows();
  std::vector<MetricsRow> b = rows();
  b[0].solved = false;
  b[0].gap = 0.1;
  b[2].gap = 0.1;
  b[3].gap = 0.5;
  const Comparison c = compare_runs(a, b);
  EXPECT_EQ(c.solved_only_a, 1);
  EXPECT_EQ(c.solved_by_both, 1);
  EXPECT_EQ(c.gap_wins_b, 2);
  EXPECT_EQ(c.gap_wins_a, 0);
}

TEST(CompareRuns, MismatchNamesBothSides) {
  std::vector<MetricsRow> a = rows();
  std::vector<MetricsRow> b = rows();
  a[0].instance = "only_a";
  b[1].instance = "only_b";
  try {
    compare_runs(a, b);
    FAIL() << "expected MismatchedInstances";
  } catch (const MismatchedInstances& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("only_a"), std::string::npos);
    EXPECT_NE(msg.find("only_b"), std::string::npos);
  }
}

TEST(CompareRuns, EmptyInput) {
  EXPECT_THROW(compare_runs(std::vector<MetricsRow>{}, std::vector<MetricsRow>{}), EmptyInput);
}

TEST(ComparisonCsv, HeaderAndRow) {
  const std::vector<MetricsRow> a = rows();
  const std::string csv = comparison_csv(compare_runs(a, a));
  EXPECT_EQ(csv.rfind("instances,solved_by_both,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

}  // namespace
}  // namespace mipdoor
