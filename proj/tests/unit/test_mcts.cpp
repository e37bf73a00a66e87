#include <cmath>
#include <map>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "mipdoor/errors.hpp"
#include "mipdoor/mcts.hpp"

namespace mipdoor {
namespace {

MctsNode visited(std::int64_t visits, double mean) {
  MctsNode n;
  n.visits = visits;
  n.reward_sum = mean * static_cast<double>(visits);
  n.reward_sq_sum = mean * mean * static_cast<double>(visits);
  n.reward_max = mean;
  return n;
}

double chi_square_p(const std::vector<double>& observed, const std::vector<double>& expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  }
  boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

TEST(ScoreChild, PlainUctValue) {
  const MctsNode parent = visited(3, 0.5);
  const MctsNode child = visited(1, 0.5);
  SelectionParams p;
  p.alpha_pc = 0.0;
  p.use_variance = false;
  p.backup = Backup::kSum;
  EXPECT_DOUBLE_EQ(score_child(parent, child, 0.9, p), 0.5 + std::sqrt(std::log(3.0)));
  p.c = 2.0;
  EXPECT_DOUBLE_EQ(score_child(parent, child, 0.9, p), 0.5 + 2.0 * std::sqrt(std::log(3.0)));
}

TEST(ScoreChild, AlphaZeroIgnoresPseudocost) {
  const MctsNode parent = visited(10, 0.3);
  const MctsNode child = visited(4, 0.3);
  SelectionParams p;
  p.alpha_pc = 0.0;
  EXPECT_EQ(score_child(parent, child, 0.0, p), score_child(parent, child, 1.0, p));
  p.alpha_pc = 0.5;
  EXPECT_LT(score_child(parent, child, 0.0, p), score_child(parent, child, 1.0, p));
}

TEST(ScoreChild, VarianceCapBinds) {
  const MctsNode parent = visited(2, 0.5);
  MctsNode child;
  child.visits = 2;
  child.reward_sum = 1.0;
  child.reward_sq_sum = 1.0;  // rewards {0, 1}: variance 1/4
  child.reward_max = 1.0;
  SelectionParams p;
  p.alpha_pc = 0.0;
  p.backup = Backup::kSum;
  const double exp_term = std::sqrt(std::log(2.0) / 2.0);
  EXPECT_DOUBLE_EQ(score_child(parent, child, 0.0, p), 0.5 + exp_term * 0.5);
}

TEST(ScoreChild, VarianceCapSlackWhenWellVisited) {
  const MctsNode parent = visited(2, 0.5);
  const MctsNode child = visited(100, 0.5);
  SelectionParams p;
  p.alpha_pc = 0.0;
  p.backup = Backup::kSum;
  const double exp_term = std::sqrt(std::log(2.0) / 100.0);
  ASSERT_LT(exp_term, 0.25);
  EXPECT_DOUBLE_EQ(score_child(parent, child, 0.0, p), 0.5 + exp_term * std::sqrt(exp_term));
}

TEST(ScoreChild, UnvisitedChildIsInfinite) {
  EXPECT_TRUE(std::isinf(score_child(visited(5, 0.2), MctsNode{}, 0.0, SelectionParams{})));
}

TEST(SelectionParams, Validation) {
  SelectionParams p;
  EXPECT_NO_THROW(p.validate());
  p.alpha_pc = 1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.alpha_pc = 0.0;
  p.c = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(GlobalPcScores, NormalisationWithMedianFill) {
  GlobalPcScores s;
  const std::vector<int> vars{2, 5, 7, 9};
  EXPECT_EQ(s.normalized(vars), (std::vector<double>{0.5, 0.5, 0.5, 0.5}));
  s.record(2, 1.0);
  s.record(2, 3.0);  // mean 2
  s.record(5, 10.0);
  s.record(9, 4.0);
  EXPECT_EQ(s.mean(2), 2.0);
  EXPECT_EQ(s.count(2), 2);
  // Observed {2, 10, 4}: median 4 for variable 7, range [2, 10].
  EXPECT_EQ(s.normalized(vars), (std::vector<double>{0.0, 1.0, 0.25, 0.25}));
}

std::vector<double> flat(int n, double v = 0.0) { return std::vector<double>(n, v); }

TEST(MctsTree, FreshTreeSelectsRoot) {
  MctsTree tree(3, 2);
  EXPECT_EQ(tree.select(SelectionParams{}, flat(3)), std::vector<int>{0});
}

TEST(MctsTree, LessVisitedChildWinsOnEqualRewards) {
  MctsTree tree(2, 1);
  std::mt19937_64 rng(0);
  SelectionParams p;
  p.expansion = Expansion::kBestScore;
  const int a = tree.expand(0, p, flat(2), rng);
  const int b = tree.expand(0, p, flat(2), rng);
  tree.backpropagate(std::vector<int>{0, a}, 0.5);
  for (int i = 0; i < 100; ++i) tree.backpropagate(std::vector<int>{0, b}, 0.5);
  const std::vector<int> path = tree.select(p, flat(2));
  EXPECT_EQ(path, (std::vector<int>{0, a}));
  EXPECT_TRUE(tree.consistent());
}

TEST(MctsTree, TerminalRootStaysPut) {
  MctsTree tree(3, 0);
  EXPECT_TRUE(tree.terminal(0));
  EXPECT_EQ(tree.select(SelectionParams{}, flat(3)), std::vector<int>{0});
}

TEST(MctsTree, BestScoreExpansionAndExhaustion) {
  MctsTree tree(2, 1);
  std::mt19937_64 rng(0);
  SelectionParams p;
  const std::vector<double> pc{0.9, 0.1};
  EXPECT_EQ(tree.node(tree.expand(0, p, pc, rng)).action, 0);
  EXPECT_EQ(tree.node(tree.expand(0, p, pc, rng)).action, 1);
  EXPECT_THROW(tree.expand(0, p, pc, rng), NoActionsLeft);
  EXPECT_THROW(tree.expand(1, p, pc, rng), std::invalid_argument);
}

TEST(MctsTree, UniformExpansionIsReproducible) {
  SelectionParams p;
  p.expansion = Expansion::kUniform;
  std::vector<int> first;
  for (int run = 0; run < 2; ++run) {
    MctsTree tree(6, 2);
    std::mt19937_64 rng(99);
    std::vector<int> actions;
    for (int i = 0; i < 6; ++i) actions.push_back(tree.node(tree.expand(0, p, flat(6), rng)).action);
    if (run == 0) first = actions;
    EXPECT_EQ(actions, first);
  }
}

TEST(MctsTree, FullTreeHasAllOrderedStates) {
  MctsTree tree(3, 2);
  std::mt19937_64 rng(0);
  SelectionParams p;
  for (int id = 0; id < tree.size(); ++id) {
    while (!tree.terminal(id) && !tree.fully_expanded(id)) tree.expand(id, p, flat(3), rng);
  }
  EXPECT_EQ(tree.size(), 10);
  EXPECT_EQ(count_states(3, 2), 10);
}

TEST(Backpropagate, SumAndMaxStatistics) {
  MctsTree tree(1, 1);
  tree.backpropagate(std::vector<int>{0}, 1.0);
  EXPECT_EQ(tree.node(0).mean(Backup::kSum), 1.0);
  EXPECT_EQ(tree.node(0).mean(Backup::kMax), 1.0);
  EXPECT_EQ(tree.node(0).variance(), 0.0);

  MctsTree two(1, 1);
  two.backpropagate(std::vector<int>{0}, 0.0);
  two.backpropagate(std::vector<int>{0}, 1.0);
  EXPECT_EQ(two.node(0).mean(Backup::kSum), 0.5);
  EXPECT_EQ(two.node(0).mean(Backup::kMax), 1.0);

  MctsTree three(1, 1);
  for (double r : {0.2, 0.4, 0.6}) three.backpropagate(std::vector<int>{0}, r);
  EXPECT_NEAR(three.node(0).variance(), 0.0266667, 1e-4);
  EXPECT_TRUE(three.consistent());
  EXPECT_THROW(three.backpropagate(std::vector<int>{0}, 1.5), std::invalid_argument);
}

TEST(Simulate, ExtendsToTerminalWithDistinctActions) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::vector<int> s = simulate({4}, 6, 3, rng);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[0], 4);
    EXPECT_NE(s[1], 4);
    EXPECT_NE(s[2], 4);
    EXPECT_NE(s[1], s[2]);
  }
  EXPECT_EQ(simulate({0}, 2, 2, rng).size(), 2u);
}

TEST(Simulate, TwoActionOrdersAreEquallyLikely) {
  std::map<std::vector<int>, double> counts;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    std::mt19937_64 rng(seed);
    ++counts[simulate({}, 2, 2, rng)];
  }
  ASSERT_EQ(counts.size(), 2u);
  const double p = chi_square_p({counts[{0, 1}], counts[{1, 0}]}, {5000.0, 5000.0});
  EXPECT_GT(p, 0.01);
}

}  // namespace
}  // namespace mipdoor
