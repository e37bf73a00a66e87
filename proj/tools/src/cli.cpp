#include "mipdoor_cli/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mipdoor/baselines.hpp"
#include "mipdoor/errors.hpp"
#include "mipdoor/json_io.hpp"
#include "mipdoor/log.hpp"
#include "mipdoor/metrics.hpp"
#include "mipdoor/mps.hpp"
#include "mipdoor/oracle.hpp"
#include "mipdoor/priority_solve.hpp"
#include "mipdoor/search.hpp"

namespace mipdoor::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string instance;
  std::string method = "mcts";
  int k = 8;
  std::uint64_t seed = 0;
  double time_s = 300.0;
  std::int64_t iterations = 5000;
  int workers = 1;
  SelectionParams params;
  std::string backup = "max";
  std::string expansion = "best_score";
  std::int64_t node_limit = 50'000;
  double eval_time_s = 60.0;
  std::string out = ".";
  std::string priority;
};

void write_json(const fs::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

// Replays the oracle's enumeration as a search trace so every method shares
// one output format.
SearchTrace oracle_trace(const OracleReport& report, int k) {
  SearchTrace trace;
  trace.method = "oracle";
  trace.k = k;
  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    const double w = report.tree_weights[i];
    ++trace.evaluations;
    if (trace.records.empty() || w > trace.best_tree_weight) {
      trace.best_tree_weight = w;
      trace.best_candidate = report.candidates[i];
      trace.records.push_back(TraceRecord{trace.evaluations, 0.0, report.candidates[i], w, 0,
                                          w >= 1.0});
    }
  }
  if (report.candidates.empty()) {
    trace.vacuous = true;
    trace.best_tree_weight = report.best_tree_weight;
  }
  trace.iterations = trace.evaluations;
  trace.goal_reached = trace.best_tree_weight >= 1.0;
  return trace;
}

int cmd_oracle(const RunConfig& cfg, const MipInstance& inst, SearchTrace* trace_out) {
  const OracleReport report =
      certify(inst, cfg.k, EvalLimits{cfg.node_limit, cfg.eval_time_s}, {}, cfg.workers);
  fs::create_directories(cfg.out);
  write_json(fs::path(cfg.out) / "oracle.json", json(report));
  if (trace_out) *trace_out = oracle_trace(report, cfg.k);
  std::cout << "oracle: " << report.num_candidates << " candidates, best tree weight "
            << report.best_tree_weight << "\n";
  return 0;
}

int cmd_search(const RunConfig& cfg) {
  const MipInstance inst = read_mps_file(cfg.instance);
  const SearchBudget budget{cfg.iterations, cfg.time_s};
  const EvalLimits limits{cfg.node_limit, cfg.eval_time_s};
  SearchTrace trace;
  if (cfg.method == "mcts") {
    SelectionParams params = cfg.params;
    params.backup = cfg.backup == "sum" ? Backup::kSum : Backup::kMax;
    params.expansion = cfg.expansion == "uniform" ? Expansion::kUniform : Expansion::kBestScore;
    trace = run_search(inst, cfg.k, params, budget, cfg.workers, cfg.seed, limits);
  } else if (cfg.method == "biased") {
    trace = run_biased_search(inst, cfg.k, budget, cfg.workers, cfg.seed, limits);
  } else if (cfg.method == "setcover") {
    trace = run_setcover(inst, cfg.k, budget, limits);
  } else {
    cmd_oracle(cfg, inst, &trace);
  }
  const fs::path out(cfg.out);
  fs::create_directories(out);
  write_text_file(out / "trace.jsonl", trace_jsonl(trace));
  json summary = summary_json(trace);
  summary["instance"] = inst.name;
  write_json(out / "summary.json", summary);
  write_json(out / "timing.json", timing_json(trace));
  std::cout << trace.method << ": best tree weight " << trace.best_tree_weight << " after "
            << trace.evaluations << " evaluations";
  if (trace.vacuous) std::cout << " (vacuous instance: root LP has no fractional variable)";
  if (trace.budget_exhausted) std::cout << " (budget exhausted)";
  if (trace.oversize) std::cout << " (oversize candidate)";
  std::cout << "\n";
  return 0;
}

int cmd_solve(const RunConfig& cfg) {
  const MipInstance inst = read_mps_file(cfg.instance);
  std::optional<Backdoor> priority;
  if (!cfg.priority.empty()) priority = read_priority_file(cfg.priority);
  const SolveReport report =
      solve_with_priorities(inst, priority, SolveLimits{cfg.node_limit, cfg.time_s});
  const MetricsRow row = metrics_row(inst.name, report);
  json j = report;
  j["instance"] = row.instance;
  j["solved"] = row.solved;
  j["priority"] = priority ? json(*priority) : json(nullptr);
  const fs::path out(cfg.out);
  fs::create_directories(out);
  write_json(out / (fs::path(cfg.instance).stem().string() + ".solve.json"), j);
  std::cout << inst.name << ": " << to_string(report.status) << ", " << report.nodes
            << " nodes\n";
  return 0;
}

std::vector<MetricsRow> read_rows(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 11 && name.ends_with(".solve.json")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<MetricsRow> rows;
  for (const fs::path& f : files) rows.push_back(json::parse(read_text_file(f)).get<MetricsRow>());
  return rows;
}

int cmd_compare(const std::vector<std::string>& dirs, const std::string& out_dir) {
  const std::vector<MetricsRow> a = read_rows(dirs.at(0));
  const std::vector<MetricsRow> b = read_rows(dirs.at(1));
  const Comparison c = compare_runs(a, b);
  const fs::path out(out_dir);
  fs::create_directories(out);
  write_text_file(out / "compare.csv", comparison_csv(c));
  write_json(out / "compare.json", json(c));
  std::cout << comparison_csv(c);
  return 0;
}

void add_budget_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--time", cfg.time_s, "Wall-clock budget in seconds")
      ->check(CLI::PositiveNumber);
  app->add_option("--node-limit", cfg.node_limit, "Node limit per evaluation or solve")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", cfg.out, "Output directory");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  configure_logging_from_env();
  CLI::App app{"Backdoor search for mixed-binary programs"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> compare_dirs;

  CLI::App* search = app.add_subcommand("search", "Search for a branching backdoor");
  search->add_option("instance", cfg.instance, "MPS file")->required()->check(CLI::ExistingFile);
  search->add_option("--method", cfg.method, "mcts, biased, setcover or oracle")
      ->check(CLI::IsMember({"mcts", "biased", "setcover", "oracle"}));
  search->add_option("--k", cfg.k, "Backdoor size")->check(CLI::PositiveNumber);
  search->add_option("--seed", cfg.seed, "Random seed");
  search->add_option("--iters", cfg.iterations, "Iteration budget")->check(CLI::PositiveNumber);
  search->add_option("--workers", cfg.workers, "Concurrent evaluations")
      ->check(CLI::PositiveNumber);
  search->add_option("--alpha-pc", cfg.params.alpha_pc, "Pseudocost weight in [0, 1)")
      ->check(CLI::Range(0.0, 1.0));
  search->add_option("--c", cfg.params.c, "Exploration constant")->check(CLI::PositiveNumber);
  search->add_option("--use-variance", cfg.params.use_variance, "Variance-capped exploration");
  search->add_option("--backup", cfg.backup, "sum or max")->check(CLI::IsMember({"sum", "max"}));
  search->add_option("--expansion", cfg.expansion, "uniform or best_score")
      ->check(CLI::IsMember({"uniform", "best_score"}));
  search->add_option("--eval-time", cfg.eval_time_s, "Time limit per evaluation in seconds")
      ->check(CLI::PositiveNumber);
  add_budget_flags(search, cfg);

  CLI::App* solve = app.add_subcommand("solve", "Solve with optional branching priorities");
  solve->add_option("instance", cfg.instance, "MPS file")->required()->check(CLI::ExistingFile);
  solve->add_option("--priority", cfg.priority, "JSON array of variable indices in rank order")
      ->check(CLI::ExistingFile);
  add_budget_flags(solve, cfg);

  RunConfig oracle_cfg;
  oracle_cfg.k = 2;
  oracle_cfg.node_limit = 1'000'000;
  oracle_cfg.eval_time_s = 600.0;
  CLI::App* oracle = app.add_subcommand("oracle", "Evaluate every candidate up to size K");
  oracle->add_option("instance", oracle_cfg.instance, "MPS file")
      ->required()
      ->check(CLI::ExistingFile);
  oracle->add_option("--k", oracle_cfg.k, "Backdoor size")->check(CLI::Range(1, 4));
  oracle->add_option("--workers", oracle_cfg.workers, "Concurrent evaluations")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--node-limit", oracle_cfg.node_limit, "Node limit per evaluation")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--out", oracle_cfg.out, "Output directory");

  CLI::App* compare = app.add_subcommand("compare", "Compare two directories of solve reports");
  compare->add_option("dirs", compare_dirs, "Two directories of *.solve.json files")
      ->required()
      ->expected(2);
  compare->add_option("--out", cfg.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (search->parsed()) {
      cfg.params.validate();
      return cmd_search(cfg);
    }
    if (solve->parsed()) return cmd_solve(cfg);
    if (oracle->parsed()) return cmd_oracle(oracle_cfg, read_mps_file(oracle_cfg.instance), nullptr);
    return cmd_compare(compare_dirs, cfg.out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mipdoor::cli
