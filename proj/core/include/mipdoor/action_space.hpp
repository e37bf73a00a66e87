#pragma once

#include <vector>

#include "mipdoor/instance.hpp"
#include "mipdoor/lp.hpp"

namespace mipdoor {

/// Integer variables that are fractional in the root relaxation, ascending,
/// together with the root solution they were read from.
struct ActionSpace {
  std::vector<int> frac_vars;
  LpSolution root_solution;

  int size() const { return static_cast<int>(frac_vars.size()); }
  bool empty() const { return frac_vars.empty(); }
  /// Root LP value of variable `var`.
  double root_value(int var) const { return root_solution.x.at(var); }
};

/// Throws RootNotOptimal unless `root` is an optimal solution.
ActionSpace fractional_set(const MipInstance& inst, const LpSolution& root, double tol = 1e-6);

}  // namespace mipdoor
