#include "mipdoor/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "mipdoor/errors.hpp"

namespace mipdoor {

double shifted_geom_mean(std::span<const double> values, double tau) {
  if (values.empty()) throw EmptyInput("shifted geometric mean of no values");
  if (!(tau >= 0.0)) throw std::invalid_argument("shift must be nonnegative");
  double log_sum = 0.0;
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("shifted geometric mean needs values >= 0");
    log_sum += std::log(v + tau);
  }
  return std::exp(log_sum / static_cast<double>(values.size())) - tau;
}

MetricsRow metrics_row(const std::string& instance, const SolveReport& report) {
  return MetricsRow{instance, report.nodes, report.time_s, report.gap,
                    report.status == SolveStatus::kOptimal ||
                        report.status == SolveStatus::kInfeasible};
}

Comparison compare_runs(std::span<const MetricsRow> a, std::span<const MetricsRow> b) {
  std::map<std::string, const MetricsRow*> by_a;
  std::map<std::string, const MetricsRow*> by_b;
  for (const MetricsRow& r : a) by_a[r.instance] = &r;
  for (const MetricsRow& r : b) by_b[r.instance] = &r;
  std::string only_a;
  std::string only_b;
  for (const auto& [name, row] : by_a) {
    if (!by_b.contains(name)) only_a += " " + name;
  }
  for (const auto& [name, row] : by_b) {
    if (!by_a.contains(name)) only_b += " " + name;
  }
  if (!only_a.empty() || !only_b.empty()) {
    throw MismatchedInstances("instance sets differ; only in first:" +
                              (only_a.empty() ? std::string(" (none)") : only_a) +
                              "; only in second:" +
                              (only_b.empty() ? std::string(" (none)") : only_b));
  }
  if (by_a.empty()) throw EmptyInput("no instances to compare");

  Comparison c;
  std::vector<double> nodes_a, nodes_b, time_a, time_b;
  for (const auto& [name, ra] : by_a) {
    const MetricsRow* rb = by_b.at(name);
    c.instances.push_back(name);
    if (ra->solved && rb->solved) {
      ++c.solved_by_both;
      nodes_a.push_back(static_cast<double>(ra->nodes));
      nodes_b.push_back(static_cast<double>(rb->nodes));
      time_a.push_back(ra->time_s);
      time_b.push_back(rb->time_s);
    } else if (!ra->solved && !rb->solved) {
      ++c.solved_by_neither;
      if (ra->gap < rb->gap) ++c.gap_wins_a;
      if (rb->gap < ra->gap) ++c.gap_wins_b;
    } else if (ra->solved) {
      ++c.solved_only_a;
    } else {
      ++c.solved_only_b;
    }
  }
  if (c.solved_by_both > 0) {
    c.nodes_sgm_a = shifted_geom_mean(nodes_a, kNodeShift);
    c.nodes_sgm_b = shifted_geom_mean(nodes_b, kNodeShift);
    c.time_sgm_a = shifted_geom_mean(time_a, kTimeShift);
    c.time_sgm_b = shifted_geom_mean(time_b, kTimeShift);
  }
  return c;
}

std::string comparison_csv(const Comparison& c) {
  char line[512];
  std::snprintf(line, sizeof line, "%zu,%lld,%.10g,%.10g,%.10g,%.10g,%lld,%lld,%lld,%lld,%lld\n",
                c.instances.size(), static_cast<long long>(c.solved_by_both), c.nodes_sgm_a,
                c.nodes_sgm_b, c.time_sgm_a, c.time_sgm_b,
                static_cast<long long>(c.solved_by_neither), static_cast<long long>(c.gap_wins_a),
                static_cast<long long>(c.gap_wins_b), static_cast<long long>(c.solved_only_a),
                static_cast<long long>(c.solved_only_b));
  return "instances,solved_by_both,nodes_sgm_a,nodes_sgm_b,time_sgm_a,time_sgm_b,"
         "solved_by_neither,gap_wins_a,gap_wins_b,solved_only_a,solved_only_b\n" +
         std::string(line);
}

}  // namespace mipdoor
