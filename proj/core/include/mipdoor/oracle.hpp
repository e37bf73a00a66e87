#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mipdoor/action_space.hpp"
#include "mipdoor/bnb.hpp"

namespace mipdoor {

struct OracleGuardrail {
  int max_frac = 12;
  int max_k = 4;
};

/// Sum over k = 1..min(K, n) of n! / (n - k)!.
std::int64_t num_ordered_candidates(int n, int k);

/// Streams every nonempty ordered sequence of at most K distinct variables of
/// the action space in lexicographic (depth-first) order. Throws TooLarge when
/// the guardrail is exceeded.
class CandidateEnumerator {
 public:
  CandidateEnumerator(const ActionSpace& actions, int k, const OracleGuardrail& guard = {});

  std::optional<Backdoor> next();

 private:
  std::vector<int> vars_;
  int k_;
  // Positions into vars_ of the current sequence; empty before the first call.
  std::vector<int> stack_;
  std::vector<char> used_;
  bool started_ = false;
  bool done_ = false;
};

struct OracleReport {
  int k = 0;
  std::int64_t num_candidates = 0;
  double best_tree_weight = 0.0;
  std::vector<Backdoor> best_candidates;
  /// Enumeration order, aligned with is_backdoor and tree_weights.
  std::vector<Backdoor> candidates;
  std::vector<bool> is_backdoor;
  std::vector<double> tree_weights;
};

/// Evaluates every enumerated candidate. Limits default to generous values;
/// an instance without fractional root variables yields an empty report with
/// best_tree_weight from the empty candidate.
OracleReport certify(const MipInstance& inst, int k,
                     const EvalLimits& limits = {1'000'000, 600.0},
                     const OracleGuardrail& guard = {}, int workers = 1);

}  // namespace mipdoor
