#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mipdoor/bnb.hpp"

namespace mipdoor {

inline constexpr double kPseudocostEpsilon = 1e-6;
/// Unit gain assigned to a strong-branching child whose LP is infeasible.
inline constexpr double kInfeasibleGain = 1e6;

/// Per-variable averages of unit objective gains, kept separately for down
/// and up branchings.
class PseudocostTable {
 public:
  explicit PseudocostTable(int num_vars = 0);

  void record(const PseudocostObservation& obs);
  void record(std::span<const PseudocostObservation> obs);

  int num_vars() const { return static_cast<int>(count_[0].size()); }
  bool initialized(int var, BranchDirection dir) const { return count(var, dir) > 0; }
  std::int64_t count(int var, BranchDirection dir) const;
  /// Arithmetic mean of the recorded gains; 0 when uninitialized.
  double mean(int var, BranchDirection dir) const;
  /// Mean over initialized variables of their per-variable means; 1 if none.
  double neutral(BranchDirection dir) const;

 private:
  static int slot(BranchDirection dir) { return dir == BranchDirection::kDown ? 0 : 1; }

  std::vector<double> sum_[2];
  std::vector<std::int64_t> count_[2];
};

/// Product score max(f * psi_down, eps) * max((1 - f) * psi_up, eps), where f
/// is the fractional part of `value`. Uninitialized directions use
/// table.neutral().
double pseudocost_score(const PseudocostTable& table, int var, double value,
                        double epsilon = kPseudocostEpsilon);

struct StrongBranchResult {
  double gain_down = 0.0;
  double gain_up = 0.0;
  bool down_infeasible = false;
  bool up_infeasible = false;
};

/// Solves both children of `node` on `var` and returns the unit objective
/// gains. An infeasible child yields kInfeasibleGain for its direction.
/// Throws std::invalid_argument if `var` is not fractional at the node.
StrongBranchResult strong_branching_init(const MipInstance& inst, const BnbNode& node, int var,
                                         const LpOptions& options = {});

}  // namespace mipdoor
