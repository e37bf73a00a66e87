#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mipdoor/priority_solve.hpp"

namespace mipdoor {

inline constexpr double kTimeShift = 10.0;
inline constexpr double kNodeShift = 100.0;

/// (prod (x_i + tau))^(1/q) - tau. Throws EmptyInput for no values and
/// std::invalid_argument for a negative value or shift.
double shifted_geom_mean(std::span<const double> values, double tau);

/// One solve of one instance.
struct MetricsRow {
  std::string instance;
  std::int64_t nodes = 0;
  double time_s = 0.0;
  /// Infinite when no incumbent was found.
  double gap = 0.0;
  bool solved = false;

  bool operator==(const MetricsRow&) const = default;
};

MetricsRow metrics_row(const std::string& instance, const SolveReport& report);

/// Paired comparison of two runs over the same instance set.
struct Comparison {
  std::vector<std::string> instances;
  std::int64_t solved_by_both = 0;
  double nodes_sgm_a = 0.0;
  double nodes_sgm_b = 0.0;
  double time_sgm_a = 0.0;
  double time_sgm_b = 0.0;
  std::int64_t solved_by_neither = 0;
  /// Strictly smaller final gap among instances neither run solved.
  std::int64_t gap_wins_a = 0;
  std::int64_t gap_wins_b = 0;
  std::int64_t solved_only_a = 0;
  std::int64_t solved_only_b = 0;

  bool operator==(const Comparison&) const = default;
};

/// Throws MismatchedInstances if the instance sets differ (the message lists
/// the difference) and EmptyInput if they are empty.
Comparison compare_runs(std::span<const MetricsRow> a, std::span<const MetricsRow> b);

/// Header line plus one data line.
std::string comparison_csv(const Comparison& c);

}  // namespace mipdoor
