#pragma once

namespace mipdoor {

// Every numeric tolerance used by the LP and B&B engines lives here.
struct Tolerances {
  double feasibility = 1e-7;
  double reduced_cost = 1e-7;
  double integrality = 1e-6;
  double pivot = 1e-9;
  // Fathom-by-bound fires when lp_value >= incumbent - bound_slack.
  double bound_slack = 1e-9;
};

}  // namespace mipdoor
