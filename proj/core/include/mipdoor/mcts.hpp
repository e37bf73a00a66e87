#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

namespace mipdoor {

enum class Backup { kSum, kMax };
enum class Expansion { kUniform, kBestScore };

const char* to_string(Backup backup);
const char* to_string(Expansion expansion);

struct SelectionParams {
  double alpha_pc = 0.01;
  double c = 1.0;
  bool use_variance = true;
  Backup backup = Backup::kMax;
  Expansion expansion = Expansion::kBestScore;

  /// Throws std::invalid_argument unless alpha_pc in [0, 1) and c > 0.
  void validate() const;
};

/// Running mean, per variable, of the pseudocost scores produced by
/// candidate evaluations.
class GlobalPcScores {
 public:
  void record(int var, double score);
  std::int64_t count(int var) const;
  /// 0 when the variable has no observations.
  double mean(int var) const;
  /// Means for `vars`, min-max scaled to [0, 1]. Unobserved variables take the
  /// median of the observed means; if all values coincide every entry is 0.5.
  std::vector<double> normalized(std::span<const int> vars) const;

 private:
  std::vector<double> sum_;
  std::vector<std::int64_t> count_;
};

/// Tree node over action positions: action p stands for the p-th variable of
/// the action space.
struct MctsNode {
  int parent = -1;
  int action = -1;
  int depth = 0;
  std::int64_t visits = 0;
  /// Simulations launched from this node.
  std::int64_t rollouts = 0;
  double reward_sum = 0.0;
  double reward_sq_sum = 0.0;
  double reward_max = 0.0;
  /// Action position -> node id.
  std::map<int, int> children;

  /// reward_sum / visits under sum backup, reward_max under max backup.
  double mean(Backup backup) const;
  /// E[r^2] - E[r]^2 over the rewards seen, clamped at 0.
  double variance() const;
};

/// Selection score of `child` under `parent`. `pc_hat` is the child's
/// normalized global pseudocost score. Unvisited children score +infinity.
double score_child(const MctsNode& parent, const MctsNode& child, double pc_hat,
                   const SelectionParams& params);

/// Search tree over ordered sequences of at most `k_effective` distinct
/// actions drawn from `num_actions`.
class MctsTree {
 public:
  MctsTree(int num_actions, int k_effective);

  int num_actions() const { return num_actions_; }
  int k_effective() const { return k_effective_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const MctsNode& node(int id) const { return nodes_.at(id); }
  bool terminal(int id) const { return node(id).depth >= k_effective_; }
  bool fully_expanded(int id) const;
  /// Action positions from the root to `id`.
  std::vector<int> state(int id) const;

  /// Descends from the root while the node is fully expanded and not
  /// terminal, taking the best-scoring child (ties to the lowest action).
  /// `pc_hat` is indexed by action position.
  std::vector<int> select(const SelectionParams& params, std::span<const double> pc_hat) const;

  /// Adds one unexpanded child of `id` and returns its id. Throws
  /// NoActionsLeft if every action is already expanded and
  /// std::invalid_argument if `id` is terminal.
  int expand(int id, const SelectionParams& params, std::span<const double> pc_hat,
             std::mt19937_64& rng);

  /// Adds `reward` to every node on `path`; the last node is the one the
  /// simulation started from. Throws std::invalid_argument if reward is
  /// outside [0, 1].
  void backpropagate(std::span<const int> path, double reward);

  /// Visits equal child visits plus rollouts at every node and all reward
  /// statistics lie in [0, 1].
  bool consistent() const;

 private:
  int num_actions_;
  int k_effective_;
  std::vector<MctsNode> nodes_;
};

/// Extends `state` with uniformly random distinct actions until it holds
/// `k_effective` of them.
std::vector<int> simulate(std::vector<int> state, int num_actions, int k_effective,
                          std::mt19937_64& rng);

/// Number of ordered sequences of length 0..k over n items.
std::int64_t count_states(int n, int k);

}  // namespace mipdoor
