#include "mipdoor/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mipdoor/errors.hpp"

namespace mipdoor {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_inf(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

SolveStatus parse_status(const std::string& s) {
  for (SolveStatus st : {SolveStatus::kOptimal, SolveStatus::kInfeasible, SolveStatus::kUnbounded,
                         SolveStatus::kLimitReached}) {
    if (s == to_string(st)) return st;
  }
  throw std::invalid_argument("unknown solve status '" + s + "'");
}

}  // namespace

void to_json(json& j, const Backdoor& b) { j = b.vars; }

void from_json(const json& j, Backdoor& b) { b.vars = j.get<std::vector<int>>(); }

void to_json(json& j, const PseudocostObservation& obs) {
  j = json{{"var", obs.var},
           {"direction", obs.direction == BranchDirection::kDown ? "down" : "up"},
           {"unit_gain", obs.unit_gain}};
}

void to_json(json& j, const EvalResult& r) {
  j = json{{"tree_weight", r.tree_weight},
           {"solved", r.solved},
           {"truncated", r.truncated},
           {"nodes", r.nodes_expanded},
           {"stuck_nodes", r.stuck_nodes},
           {"incumbent", optional_number(r.incumbent_value)},
           {"time_s", r.wall_time_s},
           {"pseudocost_obs", r.pseudocost_obs},
           {"frontier_vertices", r.frontier_vertices}};
}

void to_json(json& j, const SolveReport& r) {
  j = json{{"status", to_string(r.status)},
           {"nodes", r.nodes},
           {"time_s", r.time_s},
           {"gap", number_or_null(r.gap)},
           {"incumbent", optional_number(r.incumbent)},
           {"best_bound", optional_number(r.best_bound)},
           {"solution", r.solution},
           {"priority_branchings", r.priority_branchings},
           {"pseudocost_branchings", r.pseudocost_branchings},
           {"strong_branching_lps", r.strong_branching_lps}};
}

void from_json(const json& j, SolveReport& r) {
  r.status = parse_status(j.at("status").get<std::string>());
  r.nodes = j.at("nodes").get<std::int64_t>();
  r.time_s = j.at("time_s").get<double>();
  r.gap = number_or_inf(j.at("gap"));
  r.incumbent = read_optional(j, "incumbent");
  r.best_bound = read_optional(j, "best_bound");
  r.solution = j.value("solution", std::vector<double>{});
  r.priority_branchings = j.value("priority_branchings", std::int64_t{0});
  r.pseudocost_branchings = j.value("pseudocost_branchings", std::int64_t{0});
  r.strong_branching_lps = j.value("strong_branching_lps", std::int64_t{0});
}

void to_json(json& j, const OracleReport& r) {
  json entries = json::array();
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    entries.push_back(json{{"candidate", r.candidates[i]},
                           {"tree_weight", r.tree_weights[i]},
                           {"is_backdoor", static_cast<bool>(r.is_backdoor[i])}});
  }
  j = json{{"k", r.k},
           {"num_candidates", r.num_candidates},
           {"best_tree_weight", r.best_tree_weight},
           {"best_candidates", r.best_candidates},
           {"candidates", entries}};
}

void to_json(json& j, const MetricsRow& r) {
  j = json{{"instance", r.instance},
           {"nodes", r.nodes},
           {"time_s", r.time_s},
           {"gap", number_or_null(r.gap)},
           {"solved", r.solved}};
}

void from_json(const json& j, MetricsRow& r) {
  r.instance = j.at("instance").get<std::string>();
  r.nodes = j.at("nodes").get<std::int64_t>();
  r.time_s = j.at("time_s").get<double>();
  r.gap = number_or_inf(j.at("gap"));
  r.solved = j.at("solved").get<bool>();
}

void to_json(json& j, const Comparison& c) {
  j = json{{"instances", c.instances},
           {"solved_by_both", c.solved_by_both},
           {"nodes_sgm_a", c.nodes_sgm_a},
           {"nodes_sgm_b", c.nodes_sgm_b},
           {"time_sgm_a", c.time_sgm_a},
           {"time_sgm_b", c.time_sgm_b},
           {"solved_by_neither", c.solved_by_neither},
           {"gap_wins_a", c.gap_wins_a},
           {"gap_wins_b", c.gap_wins_b},
           {"solved_only_a", c.solved_only_a},
           {"solved_only_b", c.solved_only_b}};
}

json record_json(const TraceRecord& r, const std::string& method) {
  return json{{"method", method},
              {"evaluation", r.evaluation},
              {"candidate", r.candidate},
              {"tree_weight", r.tree_weight},
              {"nodes", r.nodes},
              {"solved", r.solved}};
}

std::string trace_jsonl(const SearchTrace& trace) {
  std::string out;
  for (const TraceRecord& r : trace.records) {
    out += record_json(r, trace.method).dump();
    out += '\n';
  }
  return out;
}

json summary_json(const SearchTrace& trace) {
  return json{{"method", trace.method},
              {"k", trace.k},
              {"k_effective", trace.k_effective},
              {"num_frac", trace.num_frac},
              {"best_candidate", trace.best_candidate},
              {"best_tree_weight", trace.best_tree_weight},
              {"final_candidate", trace.final_candidate},
              {"iterations", trace.iterations},
              {"evaluations", trace.evaluations},
              {"goal_reached", trace.goal_reached},
              {"budget_exhausted", trace.budget_exhausted},
              {"vacuous", trace.vacuous},
              {"oversize", trace.oversize}};
}

json timing_json(const SearchTrace& trace) {
  json records = json::array();
  for (const TraceRecord& r : trace.records) {
    records.push_back(json{{"evaluation", r.evaluation}, {"t_s", r.t_s}});
  }
  return json{{"wall_time_s", trace.wall_time_s}, {"records", records}};
}

Backdoor read_priority_file(const std::filesystem::path& path) {
  const json j = json::parse(read_text_file(path));
  if (!j.is_array()) throw Error("priority file " + path.string() + " is not a JSON array");
  return j.get<Backdoor>();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mipdoor
