#include "generators.hpp"

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "builders.hpp"
#include "mipdoor/oracle.hpp"

namespace mipdoor::testing {

MipInstance random_knapsack(std::uint64_t seed, int vars, int rows) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> profit(5, 30);
  std::uniform_int_distribution<int> weight(1, 20);
  InstanceBuilder b("knap" + std::to_string(seed));
  for (int j = 0; j < vars; ++j) b.add_binary(profit(rng));
  for (int i = 0; i < rows; ++i) {
    std::vector<std::pair<int, double>> terms;
    double total = 0.0;
    for (int j = 0; j < vars; ++j) {
      const int w = weight(rng);
      terms.emplace_back(j, w);
      total += w;
    }
    b.add_row(terms, RowSense::kLessEqual, std::floor(total / 2.0));
  }
  b.maximize();
  return b.build();
}

namespace {

struct Block {
  std::vector<double> cost;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
};

void add_block(InstanceBuilder& b, const Block& block, double scale) {
  std::vector<int> ids;
  for (double c : block.cost) ids.push_back(b.add_binary(c * scale));
  for (std::size_t i = 0; i < block.rows.size(); ++i) {
    std::vector<std::pair<int, double>> terms;
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (block.rows[i][j] != 0.0) terms.emplace_back(ids[j], block.rows[i][j]);
    }
    b.add_row(terms, RowSense::kLessEqual, block.rhs[i]);
  }
}

MipInstance block_instance(const Block& block) {
  InstanceBuilder b("block");
  add_block(b, block, 1.0);
  b.maximize();
  return b.build();
}

// Three binaries, all fractional at the root. With `unique_closer` exactly one
// of them closes the block on its own.
Block random_block(std::mt19937_64& rng, bool unique_closer) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  while (true) {
    Block block;
    const int rows = uni(2, 3);
    for (int j = 0; j < 3; ++j) block.cost.push_back(uni(1, 9));
    for (int i = 0; i < rows; ++i) {
      std::vector<double> row;
      double positive = 0.0;
      for (int j = 0; j < 3; ++j) {
        const int a = uni(-2, 6);
        row.push_back(a);
        positive += std::max(a, 0);
      }
      block.rows.push_back(row);
      block.rhs.push_back(uni(1, static_cast<int>(std::max(2.0, positive - 1.0))));
    }
    const MipInstance inst = block_instance(block);
    RootLpCache root(inst);
    if (!root.get().optimal()) continue;
    bool all_fractional = true;
    for (int j = 0; j < 3; ++j) all_fractional &= is_fractional(root.get().x[j], 1e-6);
    if (!all_fractional) continue;
    if (!unique_closer) return block;
    int closers = 0;
    for (int j = 0; j < 3; ++j) {
      closers += evaluate_candidate(inst, root, Backdoor{{j}}).tree_weight == 1.0 ? 1 : 0;
    }
    if (closers == 1) return block;
  }
}

}  // namespace

MipInstance random_block_instance(std::uint64_t seed, int blocks) {
  std::mt19937_64 rng(seed);
  InstanceBuilder b("blocks" + std::to_string(seed));
  double scale = 1.0;
  for (int k = 0; k < blocks; ++k) {
    add_block(b, random_block(rng, false), scale);
    scale += 0.37;
  }
  b.maximize();
  return b.build();
}

CraftedInstance crafted_unique_backdoor(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Block first = random_block(rng, true);
    const Block second = random_block(rng, true);
    InstanceBuilder b("crafted" + std::to_string(seed));
    add_block(b, first, 1.0);
    add_block(b, second, 1.37);
    b.maximize();
    MipInstance inst = b.build();
    const OracleReport report = certify(inst, 2);
    std::set<std::set<int>> backdoor_sets;
    bool singleton = false;
    for (std::size_t i = 0; i < report.candidates.size(); ++i) {
      if (!report.is_backdoor[i]) continue;
      const auto& vars = report.candidates[i].vars;
      singleton |= vars.size() == 1;
      backdoor_sets.emplace(vars.begin(), vars.end());
    }
    if (singleton || backdoor_sets.size() != 1 || report.num_candidates != 36) continue;
    return CraftedInstance{std::move(inst), report.best_candidates.front()};
  }
  throw std::runtime_error("no crafted instance found");
}

}  // namespace mipdoor::testing
