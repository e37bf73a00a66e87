#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mipdoor/action_space.hpp"
#include "mipdoor/bnb.hpp"
#include "mipdoor/search.hpp"

namespace mipdoor {

inline constexpr double kBiasedWeightEpsilon = 1e-9;

/// Sampling weight 0.5 - |frac(value) - 0.5| + 1e-9.
double fractionality_weight(double value);

/// Draws min(K, |actions|) distinct variables one at a time, each draw
/// proportional to fractionality_weight of the root value over the variables
/// not drawn yet. Draw order is candidate order. Requires a nonempty action
/// space.
Backdoor biased_sample(const ActionSpace& actions, int k, std::mt19937_64& rng);

/// Repeated biased_sample + evaluate with the same trace and stopping rule as
/// run_mcts.
SearchTrace run_biased(const ActionSpace& actions, int k, const SearchBudget& budget,
                       int workers, std::uint64_t seed, const Evaluator& evaluate);

SearchTrace run_biased_search(const MipInstance& inst, int k, const SearchBudget& budget = {},
                              int workers = 1, std::uint64_t seed = 0,
                              const EvalLimits& limits = {});

/// LP vertices from stuck nodes, deduplicated by their set of fractional
/// integer variables.
class FractionalVertexPool {
 public:
  /// Adds `x` unless it has no fractional integer variable or its fractional
  /// set is already present. Returns whether it was added.
  bool add(const MipInstance& inst, const std::vector<double>& x, double tol = 1e-6);

  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const std::vector<std::vector<double>>& vertices() const { return vertices_; }
  /// Ascending fractional integer variables of each vertex.
  const std::vector<std::vector<int>>& fractional_sets() const { return sets_; }

 private:
  std::vector<std::vector<double>> vertices_;
  std::vector<std::vector<int>> sets_;
};

/// Adds the stuck-node vertices of `result` to `pool`; returns how many were new.
std::size_t collect_fractional_vertices(const MipInstance& inst, const EvalResult& result,
                                        FractionalVertexPool& pool);

/// Greedy set cover: starting from `prefix`, repeatedly appends the variable
/// fractional in the most uncovered vertices (ties to the lowest index) until
/// every vertex is covered. Throws std::invalid_argument for an empty pool.
Backdoor solve_scp_greedy(const FractionalVertexPool& pool, const Backdoor& prefix = {});

/// Evaluate, collect stuck vertices, re-cover, repeat; starts from the empty
/// candidate. Stops when an evaluation is solved, the cover stops changing, or
/// the budget runs out. The final candidate may exceed K (flagged oversize).
SearchTrace run_setcover(const MipInstance& inst, int k, const SearchBudget& budget = {},
                         const EvalLimits& limits = {});

}  // namespace mipdoor
