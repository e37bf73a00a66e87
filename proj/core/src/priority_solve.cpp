#include "mipdoor/priority_solve.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include <spdlog/spdlog.h>

#include "mipdoor/pseudocost.hpp"

namespace mipdoor {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kLimitReached: return "limit_reached";
  }
  return "unknown";
}

namespace {

struct PendingNode {
  double bound;
  int depth;
  BoundDelta delta;
  Basis warm;
  int var;
  BranchDirection direction;
  double parent_objective;
  double distance;
};

// Open nodes addressable both by insertion order (for the depth-first plunge)
// and by bound (for best-bound search once an incumbent exists).
class NodeQueue {
 public:
  void push(PendingNode node) {
    by_bound_.emplace(node.bound, next_seq_);
    nodes_.emplace(next_seq_++, std::move(node));
  }
  bool empty() const { return nodes_.empty(); }
  PendingNode pop(bool depth_first) {
    std::int64_t seq;
    if (depth_first) {
      seq = nodes_.rbegin()->first;
    } else {
      seq = by_bound_.begin()->second;
    }
    auto it = nodes_.find(seq);
    PendingNode node = std::move(it->second);
    by_bound_.erase({node.bound, seq});
    nodes_.erase(it);
    return node;
  }
  double best_bound() const { return by_bound_.begin()->first; }

 private:
  std::int64_t next_seq_ = 0;
  std::map<std::int64_t, PendingNode> nodes_;
  std::set<std::pair<double, std::int64_t>> by_bound_;
};

}  // namespace

SolveReport solve_with_priorities(const MipInstance& inst, const std::optional<Backdoor>& priority,
                                  const SolveLimits& limits, const LpOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const Tolerances& tol = options.tol;
  const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  if (priority) validate(inst, *priority);

  SolveReport report;
  PseudocostTable pseudocosts(inst.num_vars());
  std::vector<char> strong_branched(inst.num_vars(), 0);
  std::optional<double> incumbent;
  NodeQueue queue;

  auto finish = [&](SolveStatus status) {
    report.status = status;
    report.time_s = elapsed();
    if (incumbent) report.incumbent = inst.reported_objective(*incumbent);
    std::optional<double> bound;
    if (status == SolveStatus::kOptimal) {
      bound = incumbent;
    } else if (status == SolveStatus::kLimitReached && !queue.empty()) {
      bound = queue.best_bound();
      if (incumbent) bound = std::min(*bound, *incumbent);
    }
    if (bound) report.best_bound = inst.reported_objective(*bound);
    if (status == SolveStatus::kOptimal) {
      report.gap = 0.0;
    } else if (incumbent && bound) {
      report.gap = std::abs(*bound - *incumbent) / std::max(std::abs(*incumbent), 1e-10);
    } else {
      report.gap = kInfinity;
    }
    return report;
  };

  BnbNode node;
  node.lp = solve_lp(inst, {}, nullptr, options);
  report.nodes = 1;
  if (node.lp.status == LpStatus::kInfeasible) return finish(SolveStatus::kInfeasible);
  if (node.lp.status == LpStatus::kUnbounded) return finish(SolveStatus::kUnbounded);

  while (true) {
    // Classify the current node; branch if needed.
    bool branch = node.lp.optimal() &&
                  !(incumbent && node.lp.objective >= *incumbent - tol.bound_slack);
    std::vector<int> fractional;
    if (branch) {
      for (int j : inst.integer_vars) {
        if (is_fractional(node.lp.x[j], tol.integrality)) fractional.push_back(j);
      }
      if (fractional.empty()) {
        if (!incumbent || node.lp.objective < *incumbent) {
          incumbent = node.lp.objective;
          report.solution = node.lp.x;
          spdlog::debug("new incumbent {} at node {}", inst.reported_objective(*incumbent),
                        report.nodes);
        }
        branch = false;
      }
    }
    if (branch) {
      int var = -1;
      if (priority) {
        for (int j : priority->vars) {
          if (is_fractional(node.lp.x[j], tol.integrality)) {
            var = j;
            break;
          }
        }
      }
      if (var >= 0) {
        ++report.priority_branchings;
      } else {
        ++report.pseudocost_branchings;
        double best = -1.0;
        for (int j : fractional) {
          if (!strong_branched[j]) {
            const StrongBranchResult sb = strong_branching_init(inst, node, j, options);
            report.strong_branching_lps += 2;
            pseudocosts.record(PseudocostObservation{j, BranchDirection::kDown, sb.gain_down});
            pseudocosts.record(PseudocostObservation{j, BranchDirection::kUp, sb.gain_up});
            strong_branched[j] = 1;
          }
          const double score = pseudocost_score(pseudocosts, j, node.lp.x[j]);
          if (score > best) {
            best = score;
            var = j;
          }
        }
      }
      const double value = node.lp.x[var];
      const double down = std::floor(value);
      const double frac = value - down;
      // Pushed last = popped first during the plunge: follow the rounding.
      const bool up_first = frac >= 0.5;
      for (int k = 0; k < 2; ++k) {
        const bool up = (k == 1) == up_first;
        PendingNode child{node.lp.objective,
                          node.depth + 1,
                          node.bound_delta,
                          node.lp.basis,
                          var,
                          up ? BranchDirection::kUp : BranchDirection::kDown,
                          node.lp.objective,
                          up ? 1.0 - frac : frac};
        double lo = inst.lower[var];
        double hi = inst.upper[var];
        for (const BoundChange& c : node.bound_delta) {
          if (c.var == var) {
            lo = c.lower;
            hi = c.upper;
          }
        }
        child.delta.push_back(up ? BoundChange{var, std::max(lo, down + 1.0), hi}
                                 : BoundChange{var, lo, std::min(hi, down)});
        queue.push(std::move(child));
      }
    }

    // Next node.
    bool have_node = false;
    while (!queue.empty()) {
      if (report.nodes >= limits.max_nodes || elapsed() >= limits.time_limit_s) {
        return finish(SolveStatus::kLimitReached);
      }
      PendingNode next = queue.pop(/*depth_first=*/!incumbent.has_value());
      if (incumbent && next.bound >= *incumbent - tol.bound_slack) continue;
      node = BnbNode{};
      node.depth = next.depth;
      node.bound_delta = std::move(next.delta);
      node.lp = solve_lp(inst, node.bound_delta, &next.warm, options);
      ++report.nodes;
      if (node.lp.optimal()) {
        const double gain = std::max(0.0, node.lp.objective - next.parent_objective);
        pseudocosts.record(PseudocostObservation{next.var, next.direction, gain / next.distance});
      }
      have_node = true;
      break;
    }
    if (!have_node) break;
  }
  return finish(incumbent ? SolveStatus::kOptimal : SolveStatus::kInfeasible);
}

}  // namespace mipdoor
