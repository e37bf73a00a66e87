#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace mipdoor {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense : char { kLessEqual = 'L', kEqual = 'E', kGreaterEqual = 'G' };

/// One linear constraint `sum_k value[k] * x[index[k]]  <sense>  rhs`.
struct Constraint {
  std::string name;
  std::vector<int> index;
  std::vector<double> value;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;

  bool operator==(const Constraint&) const = default;
};

/// Mixed-binary program in minimisation form.
///
/// Maximisation models are negated on load; `objective_negated` remembers the
/// flip so that values can be reported in the user's original sense via
/// `reported_objective`.
struct MipInstance {
  std::string name;
  std::string objective_name = "OBJ";
  std::vector<std::string> var_names;
  std::vector<double> objective;
  double objective_offset = 0.0;
  bool objective_negated = false;
  std::vector<Constraint> constraints;
  std::vector<double> lower;
  std::vector<double> upper;
  /// Indices of the binary variables, ascending.
  std::vector<int> integer_vars;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_cons() const { return static_cast<int>(constraints.size()); }
  bool is_integer(int var) const;

  /// Internal (minimisation) objective value -> value in the model's own sense.
  double reported_objective(double internal) const {
    return objective_negated ? -internal : internal;
  }

  bool operator==(const MipInstance&) const = default;
};

/// Checks every structural invariant and throws the matching error:
/// EmptyInstance, NotMixedBinary, or std::invalid_argument for anything else
/// (bad indices, duplicate columns in a row, non-finite coefficients,
/// crossed bounds).
void validate(const MipInstance& inst);

/// Copy of `inst` with the integrality set cleared.
MipInstance lp_relaxation(const MipInstance& inst);

/// Objective value c^T x + offset in internal (minimisation) form.
double objective_value(const MipInstance& inst, const std::vector<double>& x);

/// Largest violation of any row or bound by `x`; 0 when feasible.
double max_violation(const MipInstance& inst, const std::vector<double>& x);

double fractional_part(double value);

/// Distance of `value` to the nearest integer is above `tol`.
bool is_fractional(double value, double tol);

}  // namespace mipdoor
