#include "mipdoor/mcts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mipdoor/errors.hpp"

namespace mipdoor {

const char* to_string(Backup backup) { return backup == Backup::kSum ? "sum" : "max"; }

const char* to_string(Expansion expansion) {
  return expansion == Expansion::kUniform ? "uniform" : "best_score";
}

void SelectionParams::validate() const {
  if (!(alpha_pc >= 0.0 && alpha_pc < 1.0)) {
    throw std::invalid_argument("alpha_pc must lie in [0, 1)");
  }
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("C must be positive");
}

void GlobalPcScores::record(int var, double score) {
  if (var < 0) throw std::invalid_argument("negative variable index");
  if (static_cast<std::size_t>(var) >= sum_.size()) {
    sum_.resize(var + 1, 0.0);
    count_.resize(var + 1, 0);
  }
  sum_[var] += score;
  ++count_[var];
}

std::int64_t GlobalPcScores::count(int var) const {
  return var >= 0 && static_cast<std::size_t>(var) < count_.size() ? count_[var] : 0;
}

double GlobalPcScores::mean(int var) const {
  const std::int64_t n = count(var);
  return n == 0 ? 0.0 : sum_[var] / static_cast<double>(n);
}

std::vector<double> GlobalPcScores::normalized(std::span<const int> vars) const {
  std::vector<double> observed;
  for (int v : vars) {
    if (count(v) > 0) observed.push_back(mean(v));
  }
  std::vector<double> out(vars.size(), 0.5);
  if (observed.empty()) return out;
  std::sort(observed.begin(), observed.end());
  const std::size_t h = observed.size() / 2;
  const double median =
      observed.size() % 2 == 1 ? observed[h] : 0.5 * (observed[h - 1] + observed[h]);
  const double lo = observed.front();
  const double hi = observed.back();
  if (!(hi > lo)) return out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const double raw = count(vars[i]) > 0 ? mean(vars[i]) : median;
    out[i] = (raw - lo) / (hi - lo);
  }
  return out;
}

double MctsNode::mean(Backup backup) const {
  if (visits == 0) return 0.0;
  return backup == Backup::kSum ? reward_sum / static_cast<double>(visits) : reward_max;
}

double MctsNode::variance() const {
  if (visits == 0) return 0.0;
  const double n = static_cast<double>(visits);
  const double m = reward_sum / n;
  return std::max(0.0, reward_sq_sum / n - m * m);
}

double score_child(const MctsNode& parent, const MctsNode& child, double pc_hat,
                   const SelectionParams& params) {
  if (child.visits == 0) return std::numeric_limits<double>::infinity();
  const double parent_visits = static_cast<double>(std::max<std::int64_t>(parent.visits, 1));
  const double exp_term = std::sqrt(std::log(parent_visits) / static_cast<double>(child.visits));
  const double mu = child.mean(params.backup);
  double uct;
  if (params.use_variance) {
    const double var_term = std::sqrt(std::min(0.25, child.variance() + exp_term));
    uct = mu + params.c * exp_term * var_term;
  } else {
    uct = mu + params.c * exp_term;
  }
  return (1.0 - params.alpha_pc) * uct + params.alpha_pc * pc_hat;
}

MctsTree::MctsTree(int num_actions, int k_effective)
    : num_actions_(num_actions), k_effective_(k_effective) {
  if (num_actions < 0 || k_effective < 0 || k_effective > num_actions) {
    throw std::invalid_argument("k_effective must lie in [0, num_actions]");
  }
  nodes_.emplace_back();
}

bool MctsTree::fully_expanded(int id) const {
  const MctsNode& n = node(id);
  return static_cast<int>(n.children.size()) >= num_actions_ - n.depth;
}

std::vector<int> MctsTree::state(int id) const {
  std::vector<int> s;
  for (int cur = id; cur > 0; cur = nodes_[cur].parent) s.push_back(nodes_[cur].action);
  std::reverse(s.begin(), s.end());
  return s;
}

std::vector<int> MctsTree::select(const SelectionParams& params,
                                  std::span<const double> pc_hat) const {
  std::vector<int> path{0};
  int cur = 0;
  while (!terminal(cur) && fully_expanded(cur)) {
    const MctsNode& parent = nodes_[cur];
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    // std::map iterates actions in ascending order; strict > keeps the lowest.
    for (const auto& [action, child_id] : parent.children) {
      const double s = score_child(parent, nodes_[child_id], pc_hat[action], params);
      if (best < 0 || s > best_score) {
        best = child_id;
        best_score = s;
      }
    }
    cur = best;
    path.push_back(cur);
  }
  return path;
}

int MctsTree::expand(int id, const SelectionParams& params, std::span<const double> pc_hat,
                     std::mt19937_64& rng) {
  if (terminal(id)) throw std::invalid_argument("cannot expand a terminal node");
  const std::vector<int> taken = state(id);
  std::vector<int> open;
  for (int a = 0; a < num_actions_; ++a) {
    if (std::find(taken.begin(), taken.end(), a) == taken.end() &&
        !nodes_[id].children.contains(a)) {
      open.push_back(a);
    }
  }
  if (open.empty()) throw NoActionsLeft("all actions of the node are expanded");
  int action;
  if (params.expansion == Expansion::kUniform) {
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    action = open[pick(rng)];
  } else {
    action = open.front();
    for (int a : open) {
      if (pc_hat[a] > pc_hat[action]) action = a;
    }
  }
  MctsNode child;
  child.parent = id;
  child.action = action;
  child.depth = nodes_[id].depth + 1;
  const int child_id = size();
  nodes_.push_back(std::move(child));
  nodes_[id].children.emplace(action, child_id);
  return child_id;
}

void MctsTree::backpropagate(std::span<const int> path, double reward) {
  if (!(reward >= 0.0 && reward <= 1.0)) throw std::invalid_argument("reward outside [0, 1]");
  if (path.empty()) return;
  for (int id : path) {
    MctsNode& n = nodes_.at(id);
    ++n.visits;
    n.reward_sum += reward;
    n.reward_sq_sum += reward * reward;
    n.reward_max = std::max(n.reward_max, reward);
  }
  ++nodes_.at(path.back()).rollouts;
}

bool MctsTree::consistent() const {
  for (const MctsNode& n : nodes_) {
    std::int64_t child_visits = 0;
    for (const auto& [action, child_id] : n.children) child_visits += nodes_[child_id].visits;
    if (n.visits != child_visits + n.rollouts) return false;
    if (n.reward_max < 0.0 || n.reward_max > 1.0) return false;
    if (n.visits > 0) {
      const double m = n.reward_sum / static_cast<double>(n.visits);
      if (m < 0.0 || m > 1.0 + 1e-12) return false;
    }
  }
  return true;
}

std::vector<int> simulate(std::vector<int> state, int num_actions, int k_effective,
                          std::mt19937_64& rng) {
  std::vector<int> remaining;
  for (int a = 0; a < num_actions; ++a) {
    if (std::find(state.begin(), state.end(), a) == state.end()) remaining.push_back(a);
  }
  while (static_cast<int>(state.size()) < k_effective && !remaining.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, remaining.size() - 1);
    const std::size_t i = pick(rng);
    state.push_back(remaining[i]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return state;
}

std::int64_t count_states(int n, int k) {
  std::int64_t total = 1;
  std::int64_t level = 1;
  for (int i = 0; i < k && i < n; ++i) {
    level *= n - i;
    total += level;
  }
  return total;
}

}  // namespace mipdoor
