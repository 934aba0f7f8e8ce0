/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/milp/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "lbforge/util/log.hpp"

namespace lbforge::milp {

namespace {

constexpr double kDualTol = 1e-9;    // reduced-cost optimality tolerance
constexpr double kPivotTol = 1e-9;   // minimum pivot magnitude
constexpr double kBoundTol = 1e-9;   // internal primal feasibility tolerance
constexpr int kRefactorInterval = 100;
constexpr int kStallLimit = 1000;    // non-improving pivots before Bland's rule

enum VarState : std::uint8_t { kAtLower = 0, kAtUpper = 1, kBasic = 2 };

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
    case LpStatus::numerical_error: return "numerical_error";
  }
  return "unknown";
}

SimplexSolver::SimplexSolver(const MilpInstance& inst) : inst_(inst) {
  nrows_ = inst.num_cons;
  nstruct_ = inst.num_vars;
  ncols_ = nstruct_ + nrows_;

  // CSC of the structural part, then unit slack columns.
  std::vector<int> counts(static_cast<std::size_t>(nstruct_), 0);
  for (int p = 0; p < inst.matrix.nnz(); ++p) ++counts[inst.matrix.col[p]];
  col_start_.assign(static_cast<std::size_t>(ncols_) + 1, 0);
  for (int j = 0; j < nstruct_; ++j) col_start_[j + 1] = col_start_[j] + counts[j];
  for (int j = nstruct_; j < ncols_; ++j) col_start_[j + 1] = col_start_[j] + 1;
  col_row_.resize(static_cast<std::size_t>(col_start_[ncols_]));
  col_val_.resize(col_row_.size());
  std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
  for (int i = 0; i < inst.matrix.rows; ++i) {
    for (int p = inst.matrix.row_start[i]; p < inst.matrix.row_start[i + 1]; ++p) {
      const int j = inst.matrix.col[p];
      col_row_[fill[j]] = i;
      col_val_[fill[j]] = inst.matrix.val[p];
      ++fill[j];
    }
  }
  for (int i = 0; i < nrows_; ++i) {
    col_row_[fill[nstruct_ + i]] = i;
    col_val_[fill[nstruct_ + i]] = 1.0;
  }
}

struct SimplexSolver::Impl {
  const SimplexSolver& parent;
  int m, n, ncols;
  std::vector<double> lb, ub;    // per column, slacks included
  std::vector<double> cost;      // phase-2 cost
  std::vector<std::uint8_t> state;
  std::vector<int> basic;        // basis column per row position
  std::vector<int> basic_pos;    // column -> row position, -1 if nonbasic
  Eigen::MatrixXd binv;
  Eigen::VectorXd xb;
  long iterations = 0;
  bool bland = false;
  int stall = 0;
  int pivots_since_refactor = 0;
  double last_progress_obj = std::numeric_limits<double>::infinity();

  explicit Impl(const SimplexSolver& p) : parent(p), m(p.nrows_), n(p.nstruct_), ncols(p.ncols_) {}

  double nb_value(int j) const {
    if (state[j] == kAtUpper) return ub[j];
    if (lb[j] > -kInfinity) return lb[j];
    return 0.0;  // free variable rests at zero
  }

  void column(int j, Eigen::VectorXd& out) const {
    out.setZero(m);
    for (int p = parent.col_start_[j]; p < parent.col_start_[j + 1]; ++p) {
      out[parent.col_row_[p]] = parent.col_val_[p];
    }
  }

  // alpha = binv * a_j using column sparsity
  void ftran(int j, Eigen::VectorXd& alpha) const {
    alpha.setZero(m);
    for (int p = parent.col_start_[j]; p < parent.col_start_[j + 1]; ++p) {
      alpha.noalias() += parent.col_val_[p] * binv.col(parent.col_row_[p]);
    }
  }

  double dot_column(int j, const Eigen::VectorXd& y) const {
    double acc = 0.0;
    for (int p = parent.col_start_[j]; p < parent.col_start_[j + 1]; ++p) {
      acc += parent.col_val_[p] * y[parent.col_row_[p]];
    }
    return acc;
  }

  void compute_basic_values() {
    Eigen::VectorXd r(m);
    for (int i = 0; i < m; ++i) r[i] = parent.inst_.rhs[i];
    for (int j = 0; j < ncols; ++j) {
      if (state[j] == kBasic) continue;
      const double v = nb_value(j);
      if (v == 0.0) continue;
      for (int p = parent.col_start_[j]; p < parent.col_start_[j + 1]; ++p) {
        r[parent.col_row_[p]] -= parent.col_val_[p] * v;
      }
    }
    xb.noalias() = binv * r;
  }

  // Rebuilds binv from the basic columns. Returns false when the basis
  // matrix is numerically singular.
  bool refactorize() {
    Eigen::MatrixXd b(m, m);
    b.setZero();
    Eigen::VectorXd col(m);
    for (int p = 0; p < m; ++p) {
      column(basic[p], col);
      b.col(p) = col;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    const Eigen::MatrixXd& lum = lu.matrixLU();
    for (int i = 0; i < m; ++i) {
      if (std::abs(lum(i, i)) < 1e-12) return false;
    }
    binv = lu.inverse();
    pivots_since_refactor = 0;
    return true;
  }

  void reset_to_slack_basis() {
    basic.resize(m);
    basic_pos.assign(ncols, -1);
    for (int j = 0; j < ncols; ++j) {
      if (state[j] == kBasic) state[j] = kAtLower;
      if (state[j] == kAtLower && lb[j] <= -kInfinity && ub[j] < kInfinity) state[j] = kAtUpper;
    }
    for (int i = 0; i < m; ++i) {
      basic[i] = n + i;
      basic_pos[n + i] = i;
      state[n + i] = kBasic;
    }
    binv = Eigen::MatrixXd::Identity(m, m);
    pivots_since_refactor = 0;
  }

  double infeasibility() const {
    double total = 0.0;
    for (int p = 0; p < m; ++p) {
      const int j = basic[p];
      if (xb[p] < lb[j]) total += lb[j] - xb[p];
      if (xb[p] > ub[j]) total += xb[p] - ub[j];
    }
    return total;
  }

  // Phase-1 costs: -1 below lower bound, +1 above upper bound.
  void phase1_costs(Eigen::VectorXd& cb) const {
    cb.setZero(m);
    for (int p = 0; p < m; ++p) {
      const int j = basic[p];
      if (xb[p] < lb[j] - kBoundTol) cb[p] = -1.0;
      else if (xb[p] > ub[j] + kBoundTol) cb[p] = 1.0;
    }
  }

  void phase2_costs(Eigen::VectorXd& cb) const {
    cb.setZero(m);
    for (int p = 0; p < m; ++p) cb[p] = cost[basic[p]];
  }

  struct Entering {
    int col = -1;
    int dir = 0;  // +1 from lower, -1 from upper
  };

  Entering price(const Eigen::VectorXd& y, bool phase1) const {
    Entering best;
    double best_score = kDualTol;
    for (int j = 0; j < ncols; ++j) {
      if (state[j] == kBasic) continue;
      const double cj = phase1 ? 0.0 : cost[j];
      const double d = cj - dot_column(j, y);
      double score = 0.0;
      int dir = 0;
      if (state[j] == kAtLower && d < -kDualTol && (ub[j] > lb[j] || lb[j] <= -kInfinity)) {
        score = -d;
        dir = 1;
      } else if (state[j] == kAtUpper && d > kDualTol && (ub[j] > lb[j] || ub[j] >= kInfinity)) {
        score = d;
        dir = -1;
      }
      if (dir == 0) continue;
      if (bland) return Entering{j, dir};
      if (score > best_score) {
        best_score = score;
        best = Entering{j, dir};
      }
    }
    return best;
  }

  struct Ratio {
    double t = kInfinity;
    int row = -1;        // leaving row position, -1 for a bound flip
    bool to_upper = false;  // leaving variable parks at its upper bound
  };

  // Bounded ratio test; infeasible basic variables block at the violated
  // bound they are being pulled back to.
  Ratio ratio_test(int enter, int dir, const Eigen::VectorXd& alpha, bool phase1) const {
    Ratio best;
    if (ub[enter] < kInfinity && lb[enter] > -kInfinity) best.t = ub[enter] - lb[enter];
    for (int p = 0; p < m; ++p) {
      const int j = basic[p];
      const double delta = dir * alpha[p];  // x_j moves by -delta * t
      if (std::abs(delta) <= kPivotTol) continue;
      double t = kInfinity;
      bool to_upper = false;
      const bool below = phase1 && xb[p] < lb[j] - kBoundTol;
      const bool above = phase1 && xb[p] > ub[j] + kBoundTol;
      if (below) {
        if (delta < 0.0) {  // moving up toward its lower bound
          t = (xb[p] - lb[j]) / delta;
          to_upper = false;
        }
      } else if (above) {
        if (delta > 0.0) {  // moving down toward its upper bound
          t = (xb[p] - ub[j]) / delta;
          to_upper = true;
        }
      } else {
        if (delta > 0.0 && lb[j] > -kInfinity) {
          t = (xb[p] - lb[j]) / delta;
          to_upper = false;
        } else if (delta < 0.0 && ub[j] < kInfinity) {
          t = (xb[p] - ub[j]) / delta;
          to_upper = true;
        }
      }
      if (t == kInfinity) continue;
      t = std::max(t, 0.0);
      bool take = false;
      if (t < best.t - 1e-12) {
        take = true;
      } else if (t <= best.t + 1e-12 && best.row >= 0) {
        if (bland) {
          take = basic[p] < basic[best.row];
        } else {
          take = std::abs(alpha[p]) > std::abs(alpha[best.row]);
        }
      } else if (t <= best.t + 1e-12 && best.row < 0 && t < best.t) {
        take = true;
      }
      if (take) {
        best.t = t;
        best.row = p;
        best.to_upper = to_upper;
      }
    }
    return best;
  }

  void apply_pivot(int enter, int dir, const Ratio& r, const Eigen::VectorXd& alpha) {
    const double t = r.t;
    if (r.row < 0) {
      // bound flip, basis unchanged
      xb.noalias() -= (dir * t) * alpha;
      state[enter] = state[enter] == kAtLower ? kAtUpper : kAtLower;
      return;
    }
    const int leave = basic[r.row];
    const double enter_value = nb_value(enter) + dir * t;
    xb.noalias() -= (dir * t) * alpha;
    xb[r.row] = enter_value;

    state[leave] = r.to_upper ? kAtUpper : kAtLower;
    basic_pos[leave] = -1;
    basic[r.row] = enter;
    basic_pos[enter] = r.row;
    state[enter] = kBasic;

    // binv <- E * binv with eta column derived from alpha
    const double pivot = alpha[r.row];
    Eigen::VectorXd eta = alpha / pivot;
    eta[r.row] = 1.0 / pivot;
    for (int c = 0; c < m; ++c) {
      const double brc = binv(r.row, c);
      if (brc == 0.0) continue;
      const double scaled = brc / pivot;
      binv.col(c).noalias() -= scaled * alpha;
      binv(r.row, c) = scaled;
    }
    ++pivots_since_refactor;
  }

  LpStatus run(long max_iterations) {
    Eigen::VectorXd cb(m), y(m), alpha(m);
    bool phase1 = infeasibility() > kBoundTol;
    while (true) {
      if (iterations >= max_iterations) return LpStatus::iteration_limit;
      if (pivots_since_refactor >= kRefactorInterval) {
        if (!refactorize()) {
          reset_to_slack_basis();
          compute_basic_values();
          if (!refactorize()) return LpStatus::numerical_error;
        }
        compute_basic_values();
        phase1 = infeasibility() > kBoundTol;
      }
      if (phase1 && infeasibility() <= kBoundTol) {
        phase1 = false;
        stall = 0;
        last_progress_obj = std::numeric_limits<double>::infinity();
      }

      if (phase1) {
        phase1_costs(cb);
      } else {
        phase2_costs(cb);
      }
      y.noalias() = binv.transpose() * cb;
      const Entering e = price(y, phase1);
      if (e.col < 0) {
        if (phase1) return LpStatus::infeasible;
        return LpStatus::optimal;
      }
      ftran(e.col, alpha);
      const Ratio r = ratio_test(e.col, e.dir, alpha, phase1);
      if (r.t >= kInfinity) {
        if (phase1) return LpStatus::numerical_error;  // phase-1 is always bounded
        return LpStatus::unbounded;
      }
      apply_pivot(e.col, e.dir, r, alpha);
      ++iterations;

      // stall detection drives the Bland's-rule fallback
      const double obj = phase1 ? infeasibility() : current_objective();
      if (obj < last_progress_obj - 1e-12) {
        last_progress_obj = obj;
        stall = 0;
      } else if (++stall > kStallLimit && !bland) {
        bland = true;
        LBFORGE_LOG_DEBUG("simplex: switching to Bland's rule after stall");
      }
    }
  }

  double current_objective() const {
    double obj = 0.0;
    for (int j = 0; j < ncols; ++j) {
      if (cost[j] == 0.0) continue;
      obj += cost[j] * (state[j] == kBasic ? xb[basic_pos[j]] : nb_value(j));
    }
    return obj;
  }
};

LpResult SimplexSolver::solve() {
  return solve(std::span<const double>(inst_.lower), std::span<const double>(inst_.upper), nullptr,
               nullptr);
}

LpResult SimplexSolver::solve(std::span<const double> lb, std::span<const double> ub,
                              const Basis* warm, Basis* basis_out) {
  Impl s(*this);
  s.lb.assign(lb.begin(), lb.end());
  s.ub.assign(ub.begin(), ub.end());
  s.lb.resize(static_cast<std::size_t>(ncols_));
  s.ub.resize(static_cast<std::size_t>(ncols_));
  for (int i = 0; i < nrows_; ++i) {
    switch (inst_.sense[i]) {
      case RowSense::le: s.lb[nstruct_ + i] = 0.0; s.ub[nstruct_ + i] = kInfinity; break;
      case RowSense::ge: s.lb[nstruct_ + i] = -kInfinity; s.ub[nstruct_ + i] = 0.0; break;
      case RowSense::eq: s.lb[nstruct_ + i] = 0.0; s.ub[nstruct_ + i] = 0.0; break;
    }
  }
  s.cost.assign(static_cast<std::size_t>(ncols_), 0.0);
  for (int j = 0; j < nstruct_; ++j) s.cost[j] = inst_.objective[j];

  s.state.assign(static_cast<std::size_t>(ncols_), kAtLower);
  bool warm_ok = false;
  if (warm != nullptr && static_cast<int>(warm->basic.size()) == nrows_ &&
      static_cast<int>(warm->at_upper.size()) == ncols_) {
    warm_ok = true;
    for (int j = 0; j < ncols_; ++j) {
      if (warm->at_upper[j] != 0 && s.ub[j] < kInfinity) s.state[j] = kAtUpper;
    }
    s.basic.assign(warm->basic.begin(), warm->basic.end());
    s.basic_pos.assign(static_cast<std::size_t>(ncols_), -1);
    for (int p = 0; p < nrows_; ++p) {
      const int j = s.basic[p];
      if (j < 0 || j >= ncols_ || s.basic_pos[j] >= 0) {
        warm_ok = false;
        break;
      }
      s.basic_pos[j] = p;
      s.state[j] = kBasic;
    }
    if (warm_ok && !s.refactorize()) warm_ok = false;
  }
  if (!warm_ok) {
    s.state.assign(static_cast<std::size_t>(ncols_), kAtLower);
    for (int j = 0; j < ncols_; ++j) {
      if (s.lb[j] <= -kInfinity && s.ub[j] < kInfinity) s.state[j] = kAtUpper;
    }
    s.reset_to_slack_basis();
  }
  // nonbasic state consistent with (possibly tightened) bounds
  for (int j = 0; j < ncols_; ++j) {
    if (s.state[j] == kAtUpper && s.ub[j] >= kInfinity) s.state[j] = kAtLower;
  }
  s.compute_basic_values();

  const long max_iter = std::max<long>(2000, 50L * (nrows_ + nstruct_));
  LpResult result;
  result.status = s.run(max_iter);
  result.iterations = s.iterations;
  if (result.status == LpStatus::optimal) {
    result.x.assign(static_cast<std::size_t>(nstruct_), 0.0);
    for (int j = 0; j < nstruct_; ++j) {
      double v = s.state[j] == kBasic ? s.xb[s.basic_pos[j]] : s.nb_value(j);
      v = std::min(std::max(v, s.lb[j]), s.ub[j]);
      result.x[j] = v;
    }
    result.objective = 0.0;
    for (int j = 0; j < nstruct_; ++j) result.objective += inst_.objective[j] * result.x[j];
    if (basis_out != nullptr) {
      basis_out->basic = s.basic;
      basis_out->at_upper.assign(static_cast<std::size_t>(ncols_), 0);
      for (int j = 0; j < ncols_; ++j) {
        if (s.state[j] == kAtUpper) basis_out->at_upper[j] = 1;
      }
    }
  }
  return result;
}

LpResult solve_lp_relaxation(const MilpInstance& inst) {
  SimplexSolver solver(inst);
  return solver.solve();
}

}  // namespace lbforge::milp
