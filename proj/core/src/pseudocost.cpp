#include "mipdoor/pseudocost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mipdoor {

PseudocostTable::PseudocostTable(int num_vars) {
  for (int s = 0; s < 2; ++s) {
    sum_[s].assign(num_vars, 0.0);
    count_[s].assign(num_vars, 0);
  }
}

void PseudocostTable::record(const PseudocostObservation& obs) {
  if (obs.var < 0) throw std::invalid_argument("pseudocost observation without a variable");
  if (obs.var >= num_vars()) {
    for (int s = 0; s < 2; ++s) {
      sum_[s].resize(obs.var + 1, 0.0);
      count_[s].resize(obs.var + 1, 0);
    }
  }
  sum_[slot(obs.direction)][obs.var] += obs.unit_gain;
  ++count_[slot(obs.direction)][obs.var];
}

void PseudocostTable::record(std::span<const PseudocostObservation> obs) {
  for (const auto& o : obs) record(o);
}

std::int64_t PseudocostTable::count(int var, BranchDirection dir) const {
  if (var < 0 || var >= num_vars()) return 0;
  return count_[slot(dir)][var];
}

double PseudocostTable::mean(int var, BranchDirection dir) const {
  const std::int64_t n = count(var, dir);
  return n == 0 ? 0.0 : sum_[slot(dir)][var] / static_cast<double>(n);
}

double PseudocostTable::neutral(BranchDirection dir) const {
  double total = 0.0;
  int initialized = 0;
  for (int j = 0; j < num_vars(); ++j) {
    if (count_[slot(dir)][j] > 0) {
      total += mean(j, dir);
      ++initialized;
    }
  }
  return initialized == 0 ? 1.0 : total / initialized;
}

double pseudocost_score(const PseudocostTable& table, int var, double value, double epsilon) {
  const double down_psi = table.initialized(var, BranchDirection::kDown)
                              ? table.mean(var, BranchDirection::kDown)
                              : table.neutral(BranchDirection::kDown);
  const double up_psi = table.initialized(var, BranchDirection::kUp)
                            ? table.mean(var, BranchDirection::kUp)
                            : table.neutral(BranchDirection::kUp);
  const double down_dist = value - std::floor(value);
  const double up_dist = std::ceil(value) - value;
  return std::max(down_dist * down_psi, epsilon) * std::max(up_dist * up_psi, epsilon);
}

StrongBranchResult strong_branching_init(const MipInstance& inst, const BnbNode& node, int var,
                                         const LpOptions& options) {
  if (!node.lp.optimal() || var < 0 || var >= inst.num_vars() ||
      !is_fractional(node.lp.x[var], options.tol.integrality)) {
    throw std::invalid_argument("strong branching needs a variable fractional at the node");
  }
  const double value = node.lp.x[var];
  const double down = std::floor(value);
  StrongBranchResult result;
  for (BranchDirection dir : {BranchDirection::kDown, BranchDirection::kUp}) {
    const bool is_down = dir == BranchDirection::kDown;
    double lo = inst.lower[var];
    double hi = inst.upper[var];
    for (const BoundChange& c : node.bound_delta) {
      if (c.var == var) {
        lo = c.lower;
        hi = c.upper;
      }
    }
    BoundDelta delta = node.bound_delta;
    if (is_down) {
      delta.push_back(BoundChange{var, lo, std::min(hi, down)});
    } else {
      delta.push_back(BoundChange{var, std::max(lo, down + 1.0), hi});
    }
    const LpSolution child = solve_lp(inst, delta, &node.lp.basis, options);
    const double distance = is_down ? value - down : down + 1.0 - value;
    double gain;
    if (child.optimal()) {
      gain = std::max(0.0, child.objective - node.lp.objective) / distance;
    } else {
      gain = kInfeasibleGain;
      (is_down ? result.down_infeasible : result.up_infeasible) = true;
    }
    (is_down ? result.gain_down : result.gain_up) = gain;
  }
  return result;
}

}  // namespace mipdoor
