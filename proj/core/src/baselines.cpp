#include "mipdoor/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace mipdoor {

double fractionality_weight(double value) {
  return 0.5 - std::abs(fractional_part(value) - 0.5) + kBiasedWeightEpsilon;
}

Backdoor biased_sample(const ActionSpace& actions, int k, std::mt19937_64& rng) {
  if (actions.empty()) throw std::invalid_argument("biased sampling needs a fractional variable");
  if (k < 1) throw std::invalid_argument("K must be positive");
  std::vector<int> remaining = actions.frac_vars;
  std::vector<double> weights;
  for (int j : remaining) weights.push_back(fractionality_weight(actions.root_value(j)));
  Backdoor out;
  const int k_eff = std::min(k, actions.size());
  while (static_cast<int>(out.size()) < k_eff) {
    std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
    const std::size_t i = draw(rng);
    out.vars.push_back(remaining[i]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(i));
    weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return out;
}

SearchTrace run_biased(const ActionSpace& actions, int k, const SearchBudget& budget,
                       int workers, std::uint64_t seed, const Evaluator& evaluate) {
  if (k < 1) throw std::invalid_argument("K must be positive");
  std::mt19937_64 rng(derive_seed(seed, kBiasedStream));
  auto propose = [&](std::int64_t) -> std::optional<Backdoor> {
    return biased_sample(actions, k, rng);
  };
  auto apply = [](std::int64_t, const Backdoor&, const EvalResult&) {};
  SearchTrace trace = drive_search(budget, workers, evaluate, propose, apply);
  trace.method = "biased";
  trace.k = k;
  trace.k_effective = std::min(k, actions.size());
  trace.num_frac = actions.size();
  return trace;
}

SearchTrace run_biased_search(const MipInstance& inst, int k, const SearchBudget& budget,
                              int workers, std::uint64_t seed, const EvalLimits& limits) {
  if (k < 1) throw std::invalid_argument("K must be positive");
  RootLpCache root(inst);
  if (auto vacuous = vacuous_trace(inst, root, k, "biased", limits)) return *vacuous;
  const ActionSpace actions = fractional_set(inst, root.get());
  const Evaluator evaluate = [&](const Backdoor& candidate) {
    return evaluate_candidate(inst, root, candidate, limits);
  };
  return run_biased(actions, k, budget, workers, seed, evaluate);
}

bool FractionalVertexPool::add(const MipInstance& inst, const std::vector<double>& x,
                               double tol) {
  std::vector<int> frac;
  for (int j : inst.integer_vars) {
    if (is_fractional(x.at(j), tol)) frac.push_back(j);
  }
  if (frac.empty()) return false;
  if (std::find(sets_.begin(), sets_.end(), frac) != sets_.end()) return false;
  vertices_.push_back(x);
  sets_.push_back(std::move(frac));
  return true;
}

std::size_t collect_fractional_vertices(const MipInstance& inst, const EvalResult& result,
                                        FractionalVertexPool& pool) {
  std::size_t added = 0;
  for (const auto& x : result.frontier_vertices) added += pool.add(inst, x) ? 1 : 0;
  return added;
}

Backdoor solve_scp_greedy(const FractionalVertexPool& pool, const Backdoor& prefix) {
  if (pool.empty()) throw std::invalid_argument("set cover over an empty vertex pool");
  const auto& sets = pool.fractional_sets();
  Backdoor out = prefix;
  std::vector<char> covered(sets.size(), 0);
  auto cover_with = [&](int var) {
    for (std::size_t v = 0; v < sets.size(); ++v) {
      if (std::binary_search(sets[v].begin(), sets[v].end(), var)) covered[v] = 1;
    }
  };
  for (int var : prefix.vars) cover_with(var);
  while (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
    std::map<int, int> hits;
    for (std::size_t v = 0; v < sets.size(); ++v) {
      if (covered[v]) continue;
      for (int var : sets[v]) ++hits[var];
    }
    int best = -1;
    int best_hits = 0;
    for (const auto& [var, count] : hits) {
      if (count > best_hits) {
        best = var;
        best_hits = count;
      }
    }
    out.vars.push_back(best);
    cover_with(best);
  }
  return out;
}

SearchTrace run_setcover(const MipInstance& inst, int k, const SearchBudget& budget,
                         const EvalLimits& limits) {
  if (k < 1) throw std::invalid_argument("K must be positive");
  RootLpCache root(inst);
  if (auto vacuous = vacuous_trace(inst, root, k, "setcover", limits)) return *vacuous;
  const ActionSpace actions = fractional_set(inst, root.get());

  FractionalVertexPool pool;
  Backdoor current;
  bool fixed_point = false;
  const Evaluator evaluate = [&](const Backdoor& candidate) {
    return evaluate_candidate(inst, root, candidate, limits);
  };
  auto propose = [&](std::int64_t) -> std::optional<Backdoor> {
    if (fixed_point) return std::nullopt;
    return current;
  };
  auto apply = [&](std::int64_t, const Backdoor&, const EvalResult& result) {
    if (result.solved) return;
    const std::size_t added = collect_fractional_vertices(inst, result, pool);
    if (added == 0) {
      fixed_point = true;
      return;
    }
    current = solve_scp_greedy(pool, current);
    spdlog::debug("set cover: pool {} vertices, candidate size {}", pool.size(), current.size());
  };
  SearchTrace trace = drive_search(budget, 1, evaluate, propose, apply);
  trace.method = "setcover";
  trace.k = k;
  trace.k_effective = std::min(k, actions.size());
  trace.num_frac = actions.size();
  trace.final_candidate = current;
  trace.oversize = static_cast<int>(current.size()) > k;
  trace.budget_exhausted = !trace.goal_reached && !fixed_point;
  return trace;
}

}  // namespace mipdoor
