#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <spdlog/spdlog.h>

#include "mipdoor/errors.hpp"
#include "mipdoor/lp.hpp"

namespace mipdoor {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

enum class VarState : char { kBasic, kLower, kUpper, kZero };

// Dense tableau over [structurals | slacks | artificials]. Row i reads
//   a_i x + s_i = b_i
// with slack bounds chosen from the row sense, so every column is a bounded
// variable and the standard bounded-variable ratio test applies throughout.
class DenseSimplex {
 public:
  DenseSimplex(const MipInstance& inst, const BoundDelta& delta, const LpOptions& options)
      : inst_(inst),
        opt_(options),
        n_(inst.num_vars()),
        m_(inst.num_cons()),
        cols_(n_ + 2 * m_),
        tab_(static_cast<std::size_t>(m_) * cols_, 0.0),
        rhs_(m_, 0.0),
        lo_(cols_, 0.0),
        up_(cols_, 0.0),
        x_(cols_, 0.0),
        d_(cols_, 0.0),
        basic_(m_, -1),
        state_(cols_, VarState::kLower),
        cap_(static_cast<std::int64_t>(options.iteration_cap_factor) * (m_ + n_)) {
    for (int j = 0; j < n_; ++j) {
      lo_[j] = inst.lower[j];
      up_[j] = inst.upper[j];
    }
    for (const BoundChange& change : delta) {
      if (change.var < 0 || change.var >= n_) {
        throw std::invalid_argument("bound change on variable " + std::to_string(change.var) +
                                    " out of range");
      }
      if (std::isnan(change.lower) || std::isnan(change.upper) || change.lower > change.upper) {
        throw std::invalid_argument("bound change with lower > upper on variable " +
                                    std::to_string(change.var));
      }
      lo_[change.var] = change.lower;
      up_[change.var] = change.upper;
    }
    for (int i = 0; i < m_; ++i) {
      const Constraint& row = inst.constraints[i];
      for (std::size_t k = 0; k < row.index.size(); ++k) at(i, row.index[k]) = row.value[k];
      at(i, n_ + i) = 1.0;
      rhs_[i] = row.rhs;
      const int s = n_ + i;
      switch (row.sense) {
        case RowSense::kLessEqual: lo_[s] = 0.0; up_[s] = kInfinity; break;
        case RowSense::kGreaterEqual: lo_[s] = -kInfinity; up_[s] = 0.0; break;
        case RowSense::kEqual: lo_[s] = 0.0; up_[s] = 0.0; break;
      }
      basic_[i] = s;
      b_norm_ = std::max(b_norm_, std::abs(row.rhs));
    }
  }

  LpSolution solve(const Basis* warm) {
    install_basis(warm);
    place_nonbasic(warm);
    compute_basic_values();

    LpSolution result;
    if (!phase_one()) {
      result.status = LpStatus::kInfeasible;
      result.iterations = iterations_;
      return result;
    }
    std::vector<double> cost(cols_, 0.0);
    for (int j = 0; j < n_; ++j) cost[j] = inst_.objective[j];
    const LpStatus status = iterate(cost);
    result.iterations = iterations_;
    result.status = status;
    if (status != LpStatus::kOptimal) return result;

    compute_basic_values();
    result.x.assign(x_.begin(), x_.begin() + n_);
    // Pull values that drifted by round-off back onto their bounds.
    for (int j = 0; j < n_; ++j) result.x[j] = std::clamp(result.x[j], lo_[j], up_[j]);
    result.objective = objective_value(inst_, result.x);
    result.basis.at_upper.assign(n_ + m_, 0);
    for (int r = 0; r < m_; ++r) {
      if (basic_[r] < n_ + m_) result.basis.basic.push_back(basic_[r]);
    }
    std::sort(result.basis.basic.begin(), result.basis.basic.end());
    for (int j = 0; j < n_ + m_; ++j) {
      result.basis.at_upper[j] = state_[j] == VarState::kUpper ? 1 : 0;
    }
    return result;
  }

 private:
  double& at(int r, int c) { return tab_[static_cast<std::size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return tab_[static_cast<std::size_t>(r) * cols_ + c]; }

  void pivot(int r, int q) {
    double* prow = &tab_[static_cast<std::size_t>(r) * cols_];
    const double inv = 1.0 / prow[q];
    for (int c = 0; c < cols_; ++c) prow[c] *= inv;
    rhs_[r] *= inv;
    prow[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tab_[static_cast<std::size_t>(i) * cols_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (int c = 0; c < cols_; ++c) row[c] -= f * prow[c];
      rhs_[i] -= f * rhs_[r];
      row[q] = 0.0;
    }
    const double f = d_[q];
    if (f != 0.0) {
      for (int c = 0; c < cols_; ++c) d_[c] -= f * prow[c];
      d_[q] = 0.0;
    }
    state_[basic_[r]] = VarState::kLower;  // caller fixes the leaving state
    basic_[r] = q;
    state_[q] = VarState::kBasic;
  }

  void install_basis(const Basis* warm) {
    for (int r = 0; r < m_; ++r) state_[basic_[r]] = VarState::kBasic;
    if (warm == nullptr || warm->basic.empty()) return;
    if (static_cast<int>(warm->basic.size()) > m_) {
      throw std::invalid_argument("warm basis has more columns than the LP has rows");
    }
    std::vector<char> locked(m_, 0);
    std::vector<char> seen(n_ + m_, 0);
    for (int j : warm->basic) {
      if (j < 0 || j >= n_ + m_) throw std::invalid_argument("warm basis column out of range");
      if (seen[j]) throw std::invalid_argument("warm basis repeats a column");
      seen[j] = 1;
    }
    for (int j : warm->basic) {
      if (state_[j] == VarState::kBasic) {
        for (int r = 0; r < m_; ++r) {
          if (basic_[r] == j) locked[r] = 1;
        }
        continue;
      }
      int best_row = -1;
      double best = 1e-7;
      for (int r = 0; r < m_; ++r) {
        if (locked[r]) continue;
        const double a = std::abs(at(r, j));
        if (a > best) {
          best = a;
          best_row = r;
        }
      }
      // A column that is dependent on the ones already installed is skipped;
      // its row keeps the slack.
      if (best_row < 0) continue;
      pivot(best_row, j);
      locked[best_row] = 1;
    }
  }

  void place_nonbasic(const Basis* warm) {
    const bool have_flags = warm != nullptr && static_cast<int>(warm->at_upper.size()) == n_ + m_;
    for (int j = 0; j < cols_; ++j) {
      if (state_[j] == VarState::kBasic) continue;
      const bool want_upper = have_flags && j < n_ + m_ && warm->at_upper[j];
      if (want_upper && up_[j] < kInfinity) {
        state_[j] = VarState::kUpper;
        x_[j] = up_[j];
      } else if (lo_[j] > -kInfinity) {
        state_[j] = VarState::kLower;
        x_[j] = lo_[j];
      } else if (up_[j] < kInfinity) {
        state_[j] = VarState::kUpper;
        x_[j] = up_[j];
      } else {
        state_[j] = VarState::kZero;
        x_[j] = 0.0;
      }
    }
  }

  void compute_basic_values() {
    for (int r = 0; r < m_; ++r) {
      double value = rhs_[r];
      const double* row = &tab_[static_cast<std::size_t>(r) * cols_];
      for (int j = 0; j < cols_; ++j) {
        if (state_[j] != VarState::kBasic && x_[j] != 0.0 && row[j] != 0.0) value -= row[j] * x_[j];
      }
      x_[basic_[r]] = value;
    }
  }

  bool phase_one() {
    const double tol = opt_.tol.feasibility * (1.0 + b_norm_);
    bool any = false;
    for (int r = 0; r < m_; ++r) {
      const int v = basic_[r];
      double target;
      if (x_[v] < lo_[v] - tol) {
        target = lo_[v];
      } else if (x_[v] > up_[v] + tol) {
        target = up_[v];
      } else {
        continue;
      }
      // Clamp the basic variable onto the violated bound and let an
      // artificial column (sign-adjusted unit vector) absorb the residual.
      const double residual = x_[v] - target;
      const int a = n_ + m_ + r;
      at(r, a) = residual > 0.0 ? 1.0 : -1.0;
      lo_[a] = 0.0;
      up_[a] = kInfinity;
      pivot(r, a);
      state_[v] = target == lo_[v] ? VarState::kLower : VarState::kUpper;
      x_[v] = target;
      x_[a] = std::abs(residual);
      any = true;
    }
    if (!any) return true;

    std::vector<double> cost(cols_, 0.0);
    for (int r = 0; r < m_; ++r) {
      if (up_[n_ + m_ + r] == kInfinity) cost[n_ + m_ + r] = 1.0;
    }
    iterate(cost);
    compute_basic_values();

    double worst = 0.0;
    for (int r = 0; r < m_; ++r) worst = std::max(worst, x_[n_ + m_ + r]);
    if (worst > tol) return false;

    for (int r = 0; r < m_; ++r) {
      const int a = n_ + m_ + r;
      up_[a] = 0.0;
      if (state_[a] != VarState::kBasic) x_[a] = 0.0;
    }
    // Drive artificials that are still basic (at zero) out of the basis.
    for (int r = 0; r < m_; ++r) {
      if (basic_[r] < n_ + m_) continue;
      int best_col = -1;
      double best = 1e-7;
      for (int j = 0; j < n_ + m_; ++j) {
        if (state_[j] == VarState::kBasic) continue;
        const double a = std::abs(at(r, j));
        if (a > best) {
          best = a;
          best_col = j;
        }
      }
      if (best_col < 0) continue;  // redundant row; the artificial stays basic, fixed at zero
      const int art = basic_[r];
      pivot(r, best_col);
      state_[art] = VarState::kLower;
      x_[art] = 0.0;
    }
    compute_basic_values();
    return true;
  }

  LpStatus iterate(const std::vector<double>& cost) {
    for (int j = 0; j < cols_; ++j) {
      double v = cost[j];
      for (int r = 0; r < m_; ++r) {
        const double cb = cost[basic_[r]];
        if (cb != 0.0) v -= cb * at(r, j);
      }
      d_[j] = state_[j] == VarState::kBasic ? 0.0 : v;
    }

    const double dtol = opt_.tol.reduced_cost;
    const double ptol = opt_.tol.pivot;
    bool bland = false;
    int stall = 0;
    while (true) {
      int q = -1;
      int dir = 0;
      double best = 0.0;
      for (int j = 0; j < cols_; ++j) {
        if (state_[j] == VarState::kBasic || lo_[j] == up_[j]) continue;
        const double dj = d_[j];
        int cand = 0;
        switch (state_[j]) {
          case VarState::kLower: cand = dj < -dtol ? 1 : 0; break;
          case VarState::kUpper: cand = dj > dtol ? -1 : 0; break;
          case VarState::kZero: cand = dj < -dtol ? 1 : (dj > dtol ? -1 : 0); break;
          case VarState::kBasic: break;
        }
        if (cand == 0) continue;
        if (bland) {
          q = j;
          dir = cand;
          break;
        }
        if (std::abs(dj) > best) {
          best = std::abs(dj);
          q = j;
          dir = cand;
        }
      }
      if (q < 0) return LpStatus::kOptimal;
      if (iterations_ >= cap_) {
        throw NumericalFailure("simplex iteration cap of " + std::to_string(cap_) + " reached");
      }

      double step = (lo_[q] > -kInfinity && up_[q] < kInfinity) ? up_[q] - lo_[q] : kInfinity;
      int leave = -1;
      double leave_alpha = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double alpha = at(r, q) * dir;
        if (std::abs(alpha) <= ptol) continue;
        const int v = basic_[r];
        double ratio;
        if (alpha > 0.0) {
          if (lo_[v] == -kInfinity) continue;
          ratio = std::max(0.0, (x_[v] - lo_[v]) / alpha);
        } else {
          if (up_[v] == kInfinity) continue;
          ratio = std::max(0.0, (up_[v] - x_[v]) / -alpha);
        }
        bool take = ratio < step - 1e-12;
        if (!take && leave >= 0 && ratio <= step + 1e-12) {
          take = bland ? v < basic_[leave] : std::abs(alpha) > std::abs(leave_alpha);
        }
        if (take) {
          step = std::min(step, ratio);
          leave = r;
          leave_alpha = alpha;
        }
      }
      if (step == kInfinity) return LpStatus::kUnbounded;

      x_[q] += dir * step;
      for (int r = 0; r < m_; ++r) {
        const double a = at(r, q);
        if (a != 0.0) x_[basic_[r]] -= a * dir * step;
      }
      if (leave < 0) {
        state_[q] = dir > 0 ? VarState::kUpper : VarState::kLower;
        x_[q] = dir > 0 ? up_[q] : lo_[q];
      } else {
        const int v = basic_[leave];
        const bool to_lower = leave_alpha > 0.0;
        pivot(leave, q);
        state_[v] = to_lower ? VarState::kLower : VarState::kUpper;
        x_[v] = to_lower ? lo_[v] : up_[v];
      }
      ++iterations_;
      if (step > 1e-12) {
        stall = 0;
      } else if (!bland && ++stall > opt_.stall_limit) {
        bland = true;
      }
    }
  }

  const MipInstance& inst_;
  const LpOptions& opt_;
  int n_;
  int m_;
  int cols_;
  std::vector<double> tab_;
  std::vector<double> rhs_;
  std::vector<double> lo_;
  std::vector<double> up_;
  std::vector<double> x_;
  std::vector<double> d_;
  std::vector<int> basic_;
  std::vector<VarState> state_;
  std::int64_t iterations_ = 0;
  std::int64_t cap_;
  double b_norm_ = 0.0;
};

}  // namespace

LpSolution solve_lp(const MipInstance& inst, const BoundDelta& delta, const Basis* warm,
                    const LpOptions& options) {
  DenseSimplex simplex(inst, delta, options);
  return simplex.solve(warm);
}

RootLpCache::RootLpCache(const MipInstance& inst, LpOptions options)
    : inst_(&inst), options_(options) {}

const LpSolution& RootLpCache::get() const {
  std::call_once(once_, [this] {
    root_ = solve_lp(*inst_, {}, nullptr, options_);
    ++solves_;
    spdlog::debug("root LP: {} after {} iterations, objective {}", to_string(root_->status),
                  root_->iterations, root_->objective);
  });
  return *root_;
}

int RootLpCache::solves() const {
  // Only meaningful once get() has returned; a concurrent first call is ordered
  // by call_once.
  return solves_;
}

}  // namespace mipdoor
