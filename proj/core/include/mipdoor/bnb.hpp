#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "mipdoor/instance.hpp"
#include "mipdoor/lp.hpp"

namespace mipdoor {

/// Ordered candidate backdoor: rank i is branched on before rank j > i.
struct Backdoor {
  std::vector<int> vars;

  std::size_t size() const { return vars.size(); }
  bool empty() const { return vars.empty(); }
  auto operator<=>(const Backdoor&) const = default;
};

/// Throws std::invalid_argument on duplicates or variables outside I.
void validate(const MipInstance& inst, const Backdoor& candidate);

enum class BranchDirection { kDown, kUp };

struct PseudocostObservation {
  int var = -1;
  BranchDirection direction = BranchDirection::kDown;
  /// Objective increase per unit of fractional distance.
  double unit_gain = 0.0;

  bool operator==(const PseudocostObservation&) const = default;
};

enum class NodeStatus { kOpen, kFathomedInfeasible, kFathomedIntegral, kFathomedByBound, kStuck };

struct BnbNode {
  int depth = 0;
  BoundDelta bound_delta;
  LpSolution lp;
  NodeStatus status = NodeStatus::kOpen;
  /// Rank of the candidate variable branched on here (restricted mode).
  int next_rank = 0;
};

struct EvalLimits {
  std::int64_t max_nodes = 50'000;
  double time_limit_s = 60.0;
};

struct EvalResult {
  /// Sum of 2^-depth over fathomed nodes, in [0, 1].
  double tree_weight = 0.0;
  /// Every leaf closed without hitting a limit.
  bool solved = false;
  /// Stopped on the node or time limit; the tree is partial.
  bool truncated = false;
  std::int64_t nodes_expanded = 0;
  std::int64_t stuck_nodes = 0;
  /// Best integral value found, in the model's own objective sense.
  std::optional<double> incumbent_value;
  std::vector<PseudocostObservation> pseudocost_obs;
  /// LP vertices of stuck nodes (full primal vectors).
  std::vector<std::vector<double>> frontier_vertices;
  double wall_time_s = 0.0;
};

/// Adds 2^-depth for a fathomed node; stuck nodes add nothing.
/// Throws std::invalid_argument for an open node.
double tree_weight_update(double current, const BnbNode& node);

/// Branch-and-bound that may branch only on the candidate's variables. At
/// each node it branches on the lowest-rank candidate variable that is
/// fractional in the node LP. A node whose LP is fractional but has no
/// fractional candidate variable is stuck: it contributes no tree weight and
/// its LP vertex is exported. Node selection is best-bound with FIFO ties;
/// there are no primal heuristics.
///
/// The empty candidate is allowed and evaluates the root node only.
EvalResult evaluate_candidate(const MipInstance& inst, const RootLpCache& root,
                              const Backdoor& candidate, const EvalLimits& limits = {});

}  // namespace mipdoor
