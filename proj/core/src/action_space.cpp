#include "mipdoor/action_space.hpp"

#include "mipdoor/errors.hpp"

namespace mipdoor {

ActionSpace fractional_set(const MipInstance& inst, const LpSolution& root, double tol) {
  if (!root.optimal()) {
    throw RootNotOptimal(std::string("root relaxation is ") + to_string(root.status));
  }
  ActionSpace space;
  space.root_solution = root;
  for (int j : inst.integer_vars) {
    if (is_fractional(root.x[j], tol)) space.frac_vars.push_back(j);
  }
  return space;
}

}  // namespace mipdoor
