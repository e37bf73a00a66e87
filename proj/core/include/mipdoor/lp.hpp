#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "mipdoor/instance.hpp"
#include "mipdoor/tolerances.hpp"

namespace mipdoor {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

/// Simplex basis over the columns [structurals | row slacks].
/// Column j < n is variable j; column n + i is the slack of row i.
struct Basis {
  std::vector<int> basic;
  /// Per column: nonbasic at its upper bound.
  std::vector<char> at_upper;

  bool operator==(const Basis&) const = default;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  /// Primal point; empty unless status is kOptimal.
  std::vector<double> x;
  /// c^T x + objective offset, minimisation form.
  double objective = 0.0;
  Basis basis;
  std::int64_t iterations = 0;

  bool optimal() const { return status == LpStatus::kOptimal; }
  bool operator==(const LpSolution&) const = default;
};

/// Absolute bound replacement for one variable. Later entries in a
/// BoundDelta override earlier ones for the same variable.
struct BoundChange {
  int var = -1;
  double lower = 0.0;
  double upper = 0.0;

  bool operator==(const BoundChange&) const = default;
};
using BoundDelta = std::vector<BoundChange>;

struct LpOptions {
  Tolerances tol;
  /// Iteration cap is cap_factor * (rows + columns).
  int iteration_cap_factor = 50;
  /// Non-improving pivots tolerated before switching to Bland's rule.
  int stall_limit = 30;
};

/// Solves min c^T x over {x : rows hold, bounds (after `delta`) hold} with a
/// dense bounded-variable primal simplex. Phase 1 starts from `warm` (or the
/// slack basis) and adds an artificial column only for rows whose basic
/// variable violates a bound.
///
/// Throws std::invalid_argument for a bad delta or warm basis and
/// NumericalFailure when the iteration cap is exhausted.
LpSolution solve_lp(const MipInstance& inst, const BoundDelta& delta = {},
                    const Basis* warm = nullptr, const LpOptions& options = {});

/// Write-once cache for the root relaxation of one instance. get() is
/// thread-safe; the first caller performs the solve.
class RootLpCache {
 public:
  explicit RootLpCache(const MipInstance& inst, LpOptions options = {});

  const LpSolution& get() const;
  /// Number of LP solves performed so far (0 or 1).
  int solves() const;
  const MipInstance& instance() const { return *inst_; }
  const LpOptions& options() const { return options_; }

 private:
  const MipInstance* inst_;
  LpOptions options_;
  mutable std::once_flag once_;
  mutable std::optional<LpSolution> root_;
  mutable int solves_ = 0;
};

}  // namespace mipdoor
