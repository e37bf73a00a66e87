#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mipdoor/action_space.hpp"
#include "mipdoor/bnb.hpp"
#include "mipdoor/mcts.hpp"

namespace mipdoor {

/// Both limits are enforced; whichever runs out first ends the search.
struct SearchBudget {
  std::int64_t iterations = 5000;
  double time_s = std::numeric_limits<double>::infinity();
};

struct TraceRecord {
  /// 1-based ordinal of the evaluation that produced this record.
  std::int64_t evaluation = 0;
  double t_s = 0.0;
  Backdoor candidate;
  double tree_weight = 0.0;
  std::int64_t nodes = 0;
  bool solved = false;
};

struct SearchTrace {
  std::string method;
  /// Improving candidates only; tree weights strictly increase.
  std::vector<TraceRecord> records;
  Backdoor best_candidate;
  double best_tree_weight = 0.0;
  /// Last candidate produced (set cover may grow it past K).
  Backdoor final_candidate;
  std::int64_t iterations = 0;
  std::int64_t evaluations = 0;
  double wall_time_s = 0.0;
  bool goal_reached = false;
  bool budget_exhausted = false;
  /// The root LP is integral or infeasible; the empty candidate closes it.
  bool vacuous = false;
  bool oversize = false;
  int k = 0;
  int k_effective = 0;
  int num_frac = 0;
};

using Evaluator = std::function<EvalResult(const Backdoor&)>;

/// SplitMix64 step applied to seed ^ stream: independent per-component
/// streams from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

inline constexpr std::uint64_t kMctsStream = 1;
inline constexpr std::uint64_t kBiasedStream = 2;

/// Per-variable pseudocost scores of one evaluation: for each candidate
/// variable with at least one observation, the product score of its
/// evaluation-local pseudocosts at the root LP value.
std::vector<std::pair<int, double>> evaluation_pc_scores(const EvalResult& result,
                                                         const Backdoor& candidate,
                                                         const ActionSpace& actions);

/// Generic propose/evaluate/apply loop. `propose(ticket)` returns the next
/// candidate or nullopt to stop; `apply(ticket, candidate, result)` consumes a
/// finished evaluation. With workers > 1 up to `workers` evaluations run
/// concurrently and are applied in completion order. Repeated candidates are
/// answered from a memo. Stops after the first tree weight of 1.
SearchTrace drive_search(const SearchBudget& budget, int workers, const Evaluator& evaluate,
                         const std::function<std::optional<Backdoor>(std::int64_t)>& propose,
                         const std::function<void(std::int64_t, const Backdoor&,
                                                  const EvalResult&)>& apply);

/// MCTS over ordered candidates of size min(K, |actions|) using `evaluate`
/// for rewards.
SearchTrace run_mcts(const ActionSpace& actions, int k, const SelectionParams& params,
                     const SearchBudget& budget, int workers, std::uint64_t seed,
                     const Evaluator& evaluate);

/// Trace for an instance whose root LP is infeasible or has no fractional
/// integer variable, or nullopt when a search is meaningful. Throws
/// RootNotOptimal for an unbounded root.
std::optional<SearchTrace> vacuous_trace(const MipInstance& inst, const RootLpCache& root,
                                         int k, const std::string& method,
                                         const EvalLimits& limits);

/// Backdoor search on `inst` with restricted branch-and-bound as evaluator.
SearchTrace run_search(const MipInstance& inst, int k, const SelectionParams& params = {},
                       const SearchBudget& budget = {}, int workers = 1,
                       std::uint64_t seed = 0, const EvalLimits& limits = {});

}  // namespace mipdoor
