#include <gtest/gtest.h>

#include "builders.hpp"
#include "generators.hpp"
#include "mipdoor/errors.hpp"
#include "mipdoor/oracle.hpp"

namespace mipdoor {
namespace {

ActionSpace actions_over(int n) {
  ActionSpace a;
  for (int j = 0; j < n; ++j) a.frac_vars.push_back(j);
  return a;
}

std::vector<std::vector<int>> enumerate(const ActionSpace& a, int k) {
  CandidateEnumerator e(a, k);
  std::vector<std::vector<int>> out;
  while (auto c = e.next()) out.push_back(c->vars);
  return out;
}

TEST(NumOrderedCandidates, Counts) {
  EXPECT_EQ(num_ordered_candidates(3, 2), 9);
  EXPECT_EQ(num_ordered_candidates(6, 2), 36);
  EXPECT_EQ(num_ordered_candidates(4, 9), 64);
  EXPECT_EQ(num_ordered_candidates(0, 3), 0);
}

TEST(CandidateEnumerator, LexicographicPreOrder) {
  const std::vector<std::vector<int>> expected{{0}, {0, 1}, {0, 2}, {1}, {1, 0},
                                               {1, 2}, {2}, {2, 0}, {2, 1}};
  EXPECT_EQ(enumerate(actions_over(3), 2), expected);
}

TEST(CandidateEnumerator, UsesVariableIndices) {
  ActionSpace a;
  a.frac_vars = {4, 9};
  EXPECT_EQ(enumerate(a, 2), (std::vector<std::vector<int>>{{4}, {4, 9}, {9}, {9, 4}}));
}

TEST(CandidateEnumerator, CountMatchesFormula) {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 1; k <= 4; ++k) {
      EXPECT_EQ(static_cast<std::int64_t>(enumerate(actions_over(n), k).size()),
                num_ordered_candidates(n, k));
    }
  }
}

TEST(CandidateEnumerator, Guardrail) {
  EXPECT_THROW(CandidateEnumerator(actions_over(13), 1), TooLarge);
  EXPECT_THROW(CandidateEnumerator(actions_over(5), 5), TooLarge);
  EXPECT_NO_THROW(CandidateEnumerator(actions_over(12), 4));
  EXPECT_NO_THROW(CandidateEnumerator(actions_over(13), 1, OracleGuardrail{20, 4}));
}

TEST(Certify, KnapsackBothSingletons) {
  const OracleReport r = certify(testing::two_binary_knapsack(), 1);
  EXPECT_EQ(r.num_candidates, 2);
  EXPECT_EQ(r.best_tree_weight, 1.0);
  EXPECT_EQ(r.best_candidates.size(), 2u);
  EXPECT_EQ(r.is_backdoor, (std::vector<bool>{true, true}));
}

TEST(Certify, RootSolvedInstance) {
  testing::InstanceBuilder b("integral");
  const int x = b.add_binary(-1.0);
  b.add_row({{x, 1.0}}, RowSense::kLessEqual, 1.0);
  const OracleReport r = certify(b.build(), 2);
  EXPECT_EQ(r.num_candidates, 0);
  EXPECT_EQ(r.best_tree_weight, 1.0);
}

TEST(Certify, NoSmallBackdoor) {
  const OracleReport r = certify(testing::random_block_instance(4, 3), 2);
  EXPECT_EQ(r.num_candidates, num_ordered_candidates(9, 2));
  EXPECT_LT(r.best_tree_weight, 1.0);
  for (bool b : r.is_backdoor) EXPECT_FALSE(b);
}

TEST(Certify, WorkersAgree) {
  const MipInstance inst = testing::random_block_instance(9, 2);
  const OracleReport a = certify(inst, 2);
  const OracleReport b = certify(inst, 2, {1'000'000, 600.0}, {}, 3);
  EXPECT_EQ(a.candidates, b.candidates);
  EXPECT_EQ(a.tree_weights, b.tree_weights);
  EXPECT_EQ(a.best_candidates, b.best_candidates);
}

TEST(Certify, CraftedInstanceHasOneBackdoorSet) {
  const testing::CraftedInstance c = testing::crafted_unique_backdoor(2);
  const OracleReport r = certify(c.inst, 2);
  EXPECT_EQ(r.num_candidates, 36);
  EXPECT_EQ(r.best_tree_weight, 1.0);
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    if (r.candidates[i].size() == 1) EXPECT_FALSE(r.is_backdoor[i]);
  }
}

}  // namespace
}  // namespace mipdoor
