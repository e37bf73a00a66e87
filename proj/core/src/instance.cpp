#include "mipdoor/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mipdoor/errors.hpp"

namespace mipdoor {

bool MipInstance::is_integer(int var) const {
  return std::binary_search(integer_vars.begin(), integer_vars.end(), var);
}

void validate(const MipInstance& inst) {
  const int n = inst.num_vars();
  if (n == 0) throw EmptyInstance("instance '" + inst.name + "' has no variables");
  if (static_cast<int>(inst.lower.size()) != n ||
      static_cast<int>(inst.upper.size()) != n ||
      static_cast<int>(inst.var_names.size()) != n) {
    throw std::invalid_argument("variable arrays have inconsistent lengths");
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(inst.objective[j])) {
      throw std::invalid_argument("non-finite objective coefficient for " + inst.var_names[j]);
    }
    if (std::isnan(inst.lower[j]) || std::isnan(inst.upper[j]) || inst.lower[j] > inst.upper[j] ||
        inst.lower[j] == kInfinity || inst.upper[j] == -kInfinity) {
      throw std::invalid_argument("inconsistent bounds for " + inst.var_names[j]);
    }
  }
  if (!std::is_sorted(inst.integer_vars.begin(), inst.integer_vars.end()) ||
      std::adjacent_find(inst.integer_vars.begin(), inst.integer_vars.end()) !=
          inst.integer_vars.end()) {
    throw std::invalid_argument("integer set must be strictly ascending");
  }
  for (int j : inst.integer_vars) {
    if (j < 0 || j >= n) throw std::invalid_argument("integer index out of range");
    if (inst.lower[j] != 0.0 || inst.upper[j] != 1.0) {
      throw NotMixedBinary("integer variable " + inst.var_names[j] + " has bounds [" +
                           std::to_string(inst.lower[j]) + ", " +
                           std::to_string(inst.upper[j]) + "], expected [0, 1]");
    }
  }
  std::vector<char> seen(n, 0);
  for (const Constraint& row : inst.constraints) {
    if (row.index.size() != row.value.size()) {
      throw std::invalid_argument("row " + row.name + " has mismatched index/value arrays");
    }
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("non-finite rhs in row " + row.name);
    for (std::size_t k = 0; k < row.index.size(); ++k) {
      const int j = row.index[k];
      if (j < 0 || j >= n) throw std::invalid_argument("column index out of range in " + row.name);
      if (!std::isfinite(row.value[k])) {
        throw std::invalid_argument("non-finite coefficient in row " + row.name);
      }
      if (seen[j]) throw std::invalid_argument("duplicate column in row " + row.name);
      seen[j] = 1;
    }
    for (int j : row.index) seen[j] = 0;
  }
}

MipInstance lp_relaxation(const MipInstance& inst) {
  MipInstance relaxed = inst;
  relaxed.integer_vars.clear();
  return relaxed;
}

double objective_value(const MipInstance& inst, const std::vector<double>& x) {
  double value = inst.objective_offset;
  for (int j = 0; j < inst.num_vars(); ++j) value += inst.objective[j] * x[j];
  return value;
}

double max_violation(const MipInstance& inst, const std::vector<double>& x) {
  double worst = 0.0;
  for (int j = 0; j < inst.num_vars(); ++j) {
    worst = std::max({worst, inst.lower[j] - x[j], x[j] - inst.upper[j]});
  }
  for (const Constraint& row : inst.constraints) {
    double activity = 0.0;
    for (std::size_t k = 0; k < row.index.size(); ++k) activity += row.value[k] * x[row.index[k]];
    switch (row.sense) {
      case RowSense::kLessEqual: worst = std::max(worst, activity - row.rhs); break;
      case RowSense::kGreaterEqual: worst = std::max(worst, row.rhs - activity); break;
      case RowSense::kEqual: worst = std::max(worst, std::abs(activity - row.rhs)); break;
    }
  }
  return worst;
}

double fractional_part(double value) { return value - std::floor(value); }

bool is_fractional(double value, double tol) {
  const double f = fractional_part(value);
  return std::min(f, 1.0 - f) > tol;
}

}  // namespace mipdoor
