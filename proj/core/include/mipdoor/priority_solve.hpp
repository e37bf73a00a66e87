#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mipdoor/bnb.hpp"

namespace mipdoor {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kLimitReached };

const char* to_string(SolveStatus status);

struct SolveLimits {
  std::int64_t max_nodes = 1'000'000;
  double time_limit_s = 3600.0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::kLimitReached;
  std::int64_t nodes = 0;
  double time_s = 0.0;
  /// |best bound - incumbent| / max(|incumbent|, 1e-10); infinite without an
  /// incumbent.
  double gap = 0.0;
  /// Objective values in the model's own sense.
  std::optional<double> incumbent;
  std::optional<double> best_bound;
  std::vector<double> solution;
  std::int64_t priority_branchings = 0;
  std::int64_t pseudocost_branchings = 0;
  std::int64_t strong_branching_lps = 0;
};

/// Full branch-and-bound. At each node the lowest-rank fractional variable of
/// `priority` is branched on; when none is fractional the rule falls back to
/// pseudocost branching over all integer variables, initialised by strong
/// branching the first time a variable is fractional. Nodes are taken
/// depth-first until the first incumbent and best-bound afterwards.
SolveReport solve_with_priorities(const MipInstance& inst, const std::optional<Backdoor>& priority,
                                  const SolveLimits& limits = {},
                                  const LpOptions& options = {});

}  // namespace mipdoor
