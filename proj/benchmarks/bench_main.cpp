#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "mipdoor/bnb.hpp"
#include "mipdoor/lp.hpp"
#include "mipdoor/mcts.hpp"

namespace {

using namespace mipdoor;

// Dense 0/1 knapsack with `rows` constraints; root has up to `rows`
// fractional variables.
MipInstance knapsack(int vars, int rows, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> profit(5, 30);
  std::uniform_int_distribution<int> weight(1, 20);
  MipInstance inst;
  inst.name = "bench";
  for (int j = 0; j < vars; ++j) {
    inst.var_names.push_back("x" + std::to_string(j));
    inst.objective.push_back(-profit(rng));
    inst.lower.push_back(0.0);
    inst.upper.push_back(1.0);
    inst.integer_vars.push_back(j);
  }
  for (int i = 0; i < rows; ++i) {
    Constraint row;
    row.name = "r" + std::to_string(i);
    double total = 0.0;
    for (int j = 0; j < vars; ++j) {
      const int w = weight(rng);
      row.index.push_back(j);
      row.value.push_back(w);
      total += w;
    }
    row.rhs = total / 2.0;
    inst.constraints.push_back(row);
  }
  validate(inst);
  return inst;
}

void BM_RootLp(benchmark::State& state) {
  const MipInstance inst = knapsack(static_cast<int>(state.range(0)), 8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(inst));
}
BENCHMARK(BM_RootLp)->Arg(20)->Arg(50)->Arg(100);

void BM_WarmChildLp(benchmark::State& state) {
  const MipInstance inst = knapsack(static_cast<int>(state.range(0)), 8, 2);
  const LpSolution root = solve_lp(inst);
  int var = inst.integer_vars.front();
  for (int j : inst.integer_vars) {
    if (is_fractional(root.x[j], 1e-6)) var = j;
  }
  const BoundDelta delta{{var, 0.0, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(inst, delta, &root.basis));
}
BENCHMARK(BM_WarmChildLp)->Arg(20)->Arg(50)->Arg(100);

void BM_EvaluateCandidate(benchmark::State& state) {
  const MipInstance inst = knapsack(30, 6, 3);
  RootLpCache root(inst);
  Backdoor candidate;
  for (int j : inst.integer_vars) {
    if (is_fractional(root.get().x[j], 1e-6)) candidate.vars.push_back(j);
  }
  candidate.vars.resize(std::min<std::size_t>(candidate.vars.size(), state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_candidate(inst, root, candidate));
}
BENCHMARK(BM_EvaluateCandidate)->Arg(1)->Arg(3)->Arg(6);

void BM_MctsIteration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SelectionParams params;
  std::vector<double> pc_hat(n);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double& v : pc_hat) v = unit(rng);
  MctsTree tree(n, std::min(n, 8));
  for (auto _ : state) {
    std::vector<int> path = tree.select(params, pc_hat);
    if (!tree.terminal(path.back())) path.push_back(tree.expand(path.back(), params, pc_hat, rng));
    benchmark::DoNotOptimize(simulate(tree.state(path.back()), n, tree.k_effective(), rng));
    tree.backpropagate(path, unit(rng));
  }
}
BENCHMARK(BM_MctsIteration)->Arg(20)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
