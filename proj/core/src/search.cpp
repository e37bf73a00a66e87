#include "mipdoor/search.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <spdlog/spdlog.h>

#include "mipdoor/errors.hpp"
#include "mipdoor/pseudocost.hpp"

namespace mipdoor {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed ^ (stream * 0x9e3779b97f4a7c15ULL);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::pair<int, double>> evaluation_pc_scores(const EvalResult& result,
                                                         const Backdoor& candidate,
                                                         const ActionSpace& actions) {
  PseudocostTable local;
  local.record(result.pseudocost_obs);
  std::vector<std::pair<int, double>> scores;
  for (int j : candidate.vars) {
    if (!local.initialized(j, BranchDirection::kDown) &&
        !local.initialized(j, BranchDirection::kUp)) {
      continue;
    }
    scores.emplace_back(j, pseudocost_score(local, j, actions.root_value(j)));
  }
  return scores;
}

namespace {

// Runs evaluations inline (one worker) or on a thread pool; results come back
// in completion order.
class EvaluationPool {
 public:
  EvaluationPool(int workers, const Evaluator& evaluate) : evaluate_(evaluate) {
    for (int i = 0; workers > 1 && i < workers; ++i) threads_.emplace_back([this] { work(); });
  }

  ~EvaluationPool() {
    {
      std::lock_guard lock(mu_);
      stop_ = true;
    }
    job_cv_.notify_all();
    for (std::thread& t : threads_) t.join();
  }

  void submit(std::int64_t ticket, Backdoor candidate) {
    ++in_flight_;
    if (threads_.empty()) {
      inline_jobs_.emplace_back(ticket, std::move(candidate));
      return;
    }
    {
      std::lock_guard lock(mu_);
      jobs_.emplace_back(ticket, std::move(candidate));
    }
    job_cv_.notify_one();
  }

  int in_flight() const { return in_flight_; }

  // Blocks until some submitted evaluation has finished.
  std::pair<std::int64_t, EvalResult> next() {
    --in_flight_;
    if (threads_.empty()) {
      auto [ticket, candidate] = std::move(inline_jobs_.front());
      inline_jobs_.pop_front();
      return {ticket, evaluate_(candidate)};
    }
    std::unique_lock lock(mu_);
    done_cv_.wait(lock, [this] { return !done_.empty(); });
    Done d = std::move(done_.front());
    done_.pop_front();
    if (d.error) std::rethrow_exception(d.error);
    return {d.ticket, std::move(d.result)};
  }

 private:
  struct Done {
    std::int64_t ticket;
    EvalResult result;
    std::exception_ptr error;
  };

  void work() {
    while (true) {
      std::pair<std::int64_t, Backdoor> job;
      {
        std::unique_lock lock(mu_);
        job_cv_.wait(lock, [this] { return stop_ || !jobs_.empty(); });
        if (stop_) return;
        job = std::move(jobs_.front());
        jobs_.pop_front();
      }
      Done d{job.first, {}, nullptr};
      try {
        d.result = evaluate_(job.second);
      } catch (...) {
        d.error = std::current_exception();
      }
      {
        std::lock_guard lock(mu_);
        done_.push_back(std::move(d));
      }
      done_cv_.notify_one();
    }
  }

  const Evaluator& evaluate_;
  int in_flight_ = 0;
  std::deque<std::pair<std::int64_t, Backdoor>> inline_jobs_;
  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable job_cv_;
  std::condition_variable done_cv_;
  std::deque<std::pair<std::int64_t, Backdoor>> jobs_;
  std::deque<Done> done_;
  bool stop_ = false;
};

}  // namespace

SearchTrace drive_search(const SearchBudget& budget, int workers, const Evaluator& evaluate,
                         const std::function<std::optional<Backdoor>(std::int64_t)>& propose,
                         const std::function<void(std::int64_t, const Backdoor&,
                                                  const EvalResult&)>& apply) {
  if (workers < 1) throw std::invalid_argument("workers must be positive");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  SearchTrace trace;
  std::map<Backdoor, EvalResult> memo;
  std::map<std::int64_t, Backdoor> pending;
  bool proposals_done = false;

  auto consume = [&](std::int64_t ticket, const Backdoor& candidate, const EvalResult& result) {
    ++trace.evaluations;
    apply(ticket, candidate, result);
    trace.final_candidate = candidate;
    if (trace.records.empty() || result.tree_weight > trace.best_tree_weight) {
      trace.best_tree_weight = result.tree_weight;
      trace.best_candidate = candidate;
      trace.records.push_back(TraceRecord{trace.evaluations, elapsed(), candidate,
                                          result.tree_weight, result.nodes_expanded,
                                          result.solved});
      spdlog::info("evaluation {}: tree weight {:.6f}", trace.evaluations, result.tree_weight);
    }
    if (result.tree_weight >= 1.0) trace.goal_reached = true;
  };

  {
    EvaluationPool pool(workers, evaluate);
    while (!trace.goal_reached) {
      while (!proposals_done && !trace.goal_reached && pool.in_flight() < workers) {
        if (trace.iterations >= budget.iterations || elapsed() >= budget.time_s) {
          proposals_done = true;
          break;
        }
        const std::int64_t ticket = trace.iterations;
        std::optional<Backdoor> candidate = propose(ticket);
        if (!candidate) {
          proposals_done = true;
          break;
        }
        ++trace.iterations;
        if (auto hit = memo.find(*candidate); hit != memo.end()) {
          consume(ticket, *candidate, hit->second);
          continue;
        }
        pending.emplace(ticket, *candidate);
        pool.submit(ticket, std::move(*candidate));
      }
      if (pool.in_flight() == 0) break;
      auto [ticket, result] = pool.next();
      const Backdoor candidate = std::move(pending.at(ticket));
      pending.erase(ticket);
      consume(ticket, candidate, result);
      result.frontier_vertices.clear();
      memo.emplace(candidate, std::move(result));
    }
    // Evaluations still in flight after the goal are discarded.
    while (pool.in_flight() > 0) pool.next();
  }

  trace.budget_exhausted = !trace.goal_reached;
  trace.wall_time_s = elapsed();
  return trace;
}

SearchTrace run_mcts(const ActionSpace& actions, int k, const SelectionParams& params,
                     const SearchBudget& budget, int workers, std::uint64_t seed,
                     const Evaluator& evaluate) {
  params.validate();
  if (k < 1) throw std::invalid_argument("K must be positive");
  if (actions.empty()) throw std::invalid_argument("empty action space");
  const int n = actions.size();
  const int k_eff = std::min(k, n);
  MctsTree tree(n, k_eff);
  GlobalPcScores scores;
  std::mt19937_64 rng(derive_seed(seed, kMctsStream));
  std::map<std::int64_t, std::vector<int>> paths;

  auto propose = [&](std::int64_t ticket) -> std::optional<Backdoor> {
    const std::vector<double> pc_hat = scores.normalized(actions.frac_vars);
    std::vector<int> path = tree.select(params, pc_hat);
    if (!tree.terminal(path.back())) {
      path.push_back(tree.expand(path.back(), params, pc_hat, rng));
    }
    const std::vector<int> positions = simulate(tree.state(path.back()), n, k_eff, rng);
    Backdoor candidate;
    for (int p : positions) candidate.vars.push_back(actions.frac_vars[p]);
    paths.emplace(ticket, std::move(path));
    return candidate;
  };
  auto apply = [&](std::int64_t ticket, const Backdoor& candidate, const EvalResult& result) {
    auto it = paths.find(ticket);
    tree.backpropagate(it->second, result.tree_weight);
    paths.erase(it);
    for (const auto& [var, score] : evaluation_pc_scores(result, candidate, actions)) {
      scores.record(var, score);
    }
  };

  SearchTrace trace = drive_search(budget, workers, evaluate, propose, apply);
  trace.method = "mcts";
  trace.k = k;
  trace.k_effective = k_eff;
  trace.num_frac = n;
  return trace;
}

std::optional<SearchTrace> vacuous_trace(const MipInstance& inst, const RootLpCache& root, int k,
                                         const std::string& method, const EvalLimits& limits) {
  const LpSolution& lp = root.get();
  if (lp.status == LpStatus::kUnbounded) {
    throw RootNotOptimal("root relaxation is unbounded");
  }
  int num_frac = 0;
  if (lp.optimal()) {
    num_frac = fractional_set(inst, lp).size();
    if (num_frac > 0) return std::nullopt;
  }
  const EvalResult result = evaluate_candidate(inst, root, Backdoor{}, limits);
  SearchTrace trace;
  trace.method = method;
  trace.k = k;
  trace.vacuous = true;
  trace.evaluations = 1;
  trace.best_tree_weight = result.tree_weight;
  trace.goal_reached = result.tree_weight >= 1.0;
  trace.budget_exhausted = !trace.goal_reached;
  trace.records.push_back(
      TraceRecord{1, result.wall_time_s, Backdoor{}, result.tree_weight, result.nodes_expanded,
                  result.solved});
  trace.wall_time_s = result.wall_time_s;
  return trace;
}

SearchTrace run_search(const MipInstance& inst, int k, const SelectionParams& params,
                       const SearchBudget& budget, int workers, std::uint64_t seed,
                       const EvalLimits& limits) {
  params.validate();
  if (k < 1) throw std::invalid_argument("K must be positive");
  RootLpCache root(inst);
  if (auto vacuous = vacuous_trace(inst, root, k, "mcts", limits)) return *vacuous;
  const ActionSpace actions = fractional_set(inst, root.get());
  spdlog::info("{}: {} fractional integer variables, K={}", inst.name, actions.size(), k);
  const Evaluator evaluate = [&](const Backdoor& candidate) {
    return evaluate_candidate(inst, root, candidate, limits);
  };
  return run_mcts(actions, k, params, budget, workers, seed, evaluate);
}

}  // namespace mipdoor
