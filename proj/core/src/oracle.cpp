#include "mipdoor/oracle.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "mipdoor/errors.hpp"

namespace mipdoor {

std::int64_t num_ordered_candidates(int n, int k) {
  std::int64_t total = 0;
  std::int64_t level = 1;
  for (int i = 0; i < k && i < n; ++i) {
    level *= n - i;
    total += level;
  }
  return total;
}

CandidateEnumerator::CandidateEnumerator(const ActionSpace& actions, int k,
                                         const OracleGuardrail& guard)
    : vars_(actions.frac_vars), k_(k), used_(actions.frac_vars.size(), 0) {
  if (actions.size() > guard.max_frac || k > guard.max_k) {
    throw TooLarge("enumeration over " + std::to_string(actions.size()) +
                   " fractional variables with K=" + std::to_string(k) +
                   " exceeds the guardrail (" + std::to_string(guard.max_frac) + ", " +
                   std::to_string(guard.max_k) + ")");
  }
  if (k < 0) throw std::invalid_argument("K must be nonnegative");
}

std::optional<Backdoor> CandidateEnumerator::next() {
  if (done_) return std::nullopt;
  const int n = static_cast<int>(vars_.size());
  auto emit = [&] {
    Backdoor b;
    for (int p : stack_) b.vars.push_back(vars_[p]);
    return b;
  };
  auto push = [&](int p) {
    stack_.push_back(p);
    used_[p] = 1;
  };
  if (!started_) {
    started_ = true;
    if (n == 0 || k_ == 0) {
      done_ = true;
      return std::nullopt;
    }
    push(0);
    return emit();
  }
  if (static_cast<int>(stack_.size()) < k_) {
    for (int p = 0; p < n; ++p) {
      if (!used_[p]) {
        push(p);
        return emit();
      }
    }
  }
  while (!stack_.empty()) {
    const int last = stack_.back();
    stack_.pop_back();
    used_[last] = 0;
    for (int q = last + 1; q < n; ++q) {
      if (!used_[q]) {
        push(q);
        return emit();
      }
    }
  }
  done_ = true;
  return std::nullopt;
}

OracleReport certify(const MipInstance& inst, int k, const EvalLimits& limits,
                     const OracleGuardrail& guard, int workers) {
  RootLpCache root(inst);
  const LpSolution& lp = root.get();
  if (lp.status == LpStatus::kUnbounded) throw RootNotOptimal("root relaxation is unbounded");

  OracleReport report;
  report.k = k;
  if (!lp.optimal() || fractional_set(inst, lp).empty()) {
    report.best_tree_weight = evaluate_candidate(inst, root, Backdoor{}, limits).tree_weight;
    return report;
  }
  const ActionSpace actions = fractional_set(inst, lp);
  CandidateEnumerator enumerator(actions, k, guard);
  while (auto c = enumerator.next()) report.candidates.push_back(std::move(*c));
  report.num_candidates = static_cast<std::int64_t>(report.candidates.size());
  report.tree_weights.assign(report.candidates.size(), 0.0);

  std::atomic<std::size_t> cursor{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    try {
      for (std::size_t i = cursor++; i < report.candidates.size(); i = cursor++) {
        report.tree_weights[i] =
            evaluate_candidate(inst, root, report.candidates[i], limits).tree_weight;
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      error = std::current_exception();
      cursor = report.candidates.size();
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < workers; ++i) threads.emplace_back(work);
    for (std::thread& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);

  report.is_backdoor.resize(report.candidates.size());
  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    const double w = report.tree_weights[i];
    report.is_backdoor[i] = w >= 1.0;
    if (i == 0 || w > report.best_tree_weight) {
      report.best_tree_weight = w;
      report.best_candidates.clear();
    }
    if (w == report.best_tree_weight) report.best_candidates.push_back(report.candidates[i]);
  }
  return report;
}

}  // namespace mipdoor
