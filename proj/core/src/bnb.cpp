#include "mipdoor/bnb.hpp"

#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "mipdoor/errors.hpp"

namespace mipdoor {

void validate(const MipInstance& inst, const Backdoor& candidate) {
  std::vector<char> seen(inst.num_vars(), 0);
  for (int j : candidate.vars) {
    if (j < 0 || j >= inst.num_vars() || !inst.is_integer(j)) {
      throw std::invalid_argument("candidate variable " + std::to_string(j) +
                                  " is not an integer variable");
    }
    if (seen[j]) throw std::invalid_argument("candidate repeats variable " + std::to_string(j));
    seen[j] = 1;
  }
}

double tree_weight_update(double current, const BnbNode& node) {
  switch (node.status) {
    case NodeStatus::kFathomedInfeasible:
    case NodeStatus::kFathomedIntegral:
    case NodeStatus::kFathomedByBound:
      return current + std::ldexp(1.0, -node.depth);
    case NodeStatus::kStuck:
      return current;
    case NodeStatus::kOpen:
      break;
  }
  throw std::invalid_argument("tree weight is undefined for an open node");
}

namespace {

struct OpenNode {
  double bound;
  std::int64_t seq;
  int depth;
  BoundDelta delta;
  Basis warm;
  // Branching that produced this node, for pseudocost bookkeeping.
  int var;
  BranchDirection direction;
  double parent_objective;
  double distance;
};

struct WorseBound {
  bool operator()(const OpenNode& a, const OpenNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

// First fractional integer variable, or -1.
int first_fractional(const MipInstance& inst, const std::vector<double>& x, double tol) {
  for (int j : inst.integer_vars) {
    if (is_fractional(x[j], tol)) return j;
  }
  return -1;
}

}  // namespace

EvalResult evaluate_candidate(const MipInstance& inst, const RootLpCache& root,
                              const Backdoor& candidate, const EvalLimits& limits) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const LpOptions& lp_options = root.options();
  const Tolerances& tol = lp_options.tol;
  const LpSolution& root_lp = root.get();
  if (root_lp.status == LpStatus::kUnbounded) throw Error("root relaxation is unbounded");

  EvalResult result;
  std::optional<double> incumbent;  // internal (minimisation) value
  std::int64_t seq = 0;
  std::priority_queue<OpenNode, std::vector<OpenNode>, WorseBound> open;

  BnbNode node;
  auto close = [&](NodeStatus status) {
    node.status = status;
    result.tree_weight = tree_weight_update(result.tree_weight, node);
  };

  // Processes `node` (LP already solved); returns after classifying it and
  // pushing children if it branches.
  auto process = [&]() {
    ++result.nodes_expanded;
    if (!node.lp.optimal()) {
      close(NodeStatus::kFathomedInfeasible);
      return;
    }
    if (incumbent && node.lp.objective >= *incumbent - tol.bound_slack) {
      close(NodeStatus::kFathomedByBound);
      return;
    }
    if (first_fractional(inst, node.lp.x, tol.integrality) < 0) {
      if (!incumbent || node.lp.objective < *incumbent) incumbent = node.lp.objective;
      close(NodeStatus::kFathomedIntegral);
      return;
    }
    int rank = -1;
    for (int r = 0; r < static_cast<int>(candidate.vars.size()); ++r) {
      if (is_fractional(node.lp.x[candidate.vars[r]], tol.integrality)) {
        rank = r;
        break;
      }
    }
    if (rank < 0) {
      close(NodeStatus::kStuck);
      ++result.stuck_nodes;
      result.frontier_vertices.push_back(node.lp.x);
      return;
    }
    node.next_rank = rank;
    const int var = candidate.vars[rank];
    const double value = node.lp.x[var];
    const double down_value = std::floor(value);
    const double frac = value - down_value;
    for (BranchDirection dir : {BranchDirection::kDown, BranchDirection::kUp}) {
      OpenNode child{node.lp.objective, seq++, node.depth + 1, node.bound_delta, node.lp.basis,
                     var, dir, node.lp.objective,
                     dir == BranchDirection::kDown ? frac : 1.0 - frac};
      const double fixed = dir == BranchDirection::kDown ? down_value : down_value + 1.0;
      child.delta.push_back(BoundChange{var, fixed, fixed});
      open.push(std::move(child));
    }
  };

  validate(inst, candidate);
  node.lp = root_lp;
  process();

  while (!open.empty()) {
    if (result.nodes_expanded >= limits.max_nodes ||
        std::chrono::duration<double>(Clock::now() - start).count() >= limits.time_limit_s) {
      result.truncated = true;
      break;
    }
    OpenNode next = open.top();
    open.pop();
    node = BnbNode{};
    node.depth = next.depth;
    node.bound_delta = std::move(next.delta);
    if (incumbent && next.bound >= *incumbent - tol.bound_slack) {
      // The parent bound already prunes this child; skip the LP solve.
      ++result.nodes_expanded;
      close(NodeStatus::kFathomedByBound);
      continue;
    }
    node.lp = solve_lp(inst, node.bound_delta, &next.warm, lp_options);
    if (node.lp.optimal()) {
      const double gain = std::max(0.0, node.lp.objective - next.parent_objective);
      result.pseudocost_obs.push_back(
          PseudocostObservation{next.var, next.direction, gain / next.distance});
    }
    process();
  }

  result.solved = !result.truncated && result.stuck_nodes == 0;
  if (incumbent) result.incumbent_value = inst.reported_objective(*incumbent);
  result.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace mipdoor
