/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/milp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <queue>
#include <vector>

#include "lbforge/util/log.hpp"

namespace lbforge::milp {

namespace {

using Clock = std::chrono::steady_clock;

bool is_integral(const MilpInstance& inst, const std::vector<double>& x, int* frac_var) {
  int best = -1;
  double best_score = kIntTol;
  for (int j = 0; j < inst.num_vars; ++j) {
    if (inst.kind[j] == VarKind::continuous) continue;
    const double f = x[j] - std::floor(x[j]);
    const double dist = std::min(f, 1.0 - f);
    if (dist > best_score) {
      // most fractional variable, lowest index on ties
      if (best < 0 || dist > best_score + 1e-12) {
        best = j;
        best_score = dist;
      }
    }
  }
  if (frac_var != nullptr) *frac_var = best;
  return best < 0;
}

std::vector<double> snap_integers(const MilpInstance& inst, std::vector<double> x) {
  for (int j = 0; j < inst.num_vars; ++j) {
    if (inst.kind[j] == VarKind::continuous) continue;
    const double r = std::round(x[j]);
    if (std::abs(x[j] - r) <= kIntTol) x[j] = r;
  }
  return x;
}

struct Node {
  int parent = -1;       // index into the node store
  int branch_var = -1;   // -1 for the root
  double branch_lb = 0.0;
  double branch_ub = 0.0;
  double bound = -kInfinity;  // parent LP objective (valid lower bound)
  int depth = 0;
  long long id = 0;
};

struct HeapEntry {
  double bound;
  long long id;
  int index;
  bool operator>(const HeapEntry& o) const {
    if (bound != o.bound) return bound > o.bound;
    return id > o.id;
  }
};

struct Search {
  const MilpInstance& inst;
  const SolverLimits& limits;
  const SolverOptions& options;
  const HeuristicHook& hook;
  SimplexSolver lp;
  std::deque<Node> store;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
  int plunge = -1;
  Basis basis;
  std::optional<Assignment> incumbent;
  long long incumbent_version = 0;
  long long nodes_processed = 0;
  long long node_errors = 0;
  double error_bound = kInfinity;  // valid bound covering errored subtrees
  long long next_id = 0;
  Clock::time_point start;
  std::vector<double> lb_buf, ub_buf;

  Search(const MilpInstance& i, const SolverLimits& l, const SolverOptions& o,
         const HeuristicHook& h)
      : inst(i), limits(l), options(o), hook(h), lp(i), start(Clock::now()) {}

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }

  double cutoff_value() const {
    double c = limits.objective_cutoff.value_or(kInfinity);
    if (incumbent) c = std::min(c, incumbent->objective);
    return c;
  }

  double improvement_tol() const {
    const double c = cutoff_value();
    return c < kInfinity ? 1e-9 * std::max(1.0, std::abs(c)) : 0.0;
  }

  bool try_install(std::vector<double> values) {
    Assignment cand = make_assignment(inst, std::move(values));
    if (!cand.feasible) return false;
    if (cand.objective >= cutoff_value() - improvement_tol()) return false;
    incumbent = std::move(cand);
    ++incumbent_version;
    return true;
  }

  void node_bounds(int index) {
    lb_buf = inst.lower;
    ub_buf = inst.upper;
    for (int at = index; at >= 0; at = store[at].parent) {
      const Node& nd = store[at];
      if (nd.branch_var >= 0) {
        lb_buf[nd.branch_var] = std::max(lb_buf[nd.branch_var], nd.branch_lb);
        ub_buf[nd.branch_var] = std::min(ub_buf[nd.branch_var], nd.branch_ub);
      }
    }
  }

  // Deterministic rounding dive from the node LP point. Fixes the most
  // fractional integer variable to its nearest value, re-solves, and flips
  // the direction once when the fixing turns the LP infeasible.
  void root_dive(std::vector<double> dive_lb, std::vector<double> dive_ub,
                 const std::vector<double>& x0) {
    std::vector<double> x = x0;
    Basis dive_basis = basis;
    for (int step = 0; step < inst.num_vars; ++step) {
      int var = -1;
      if (is_integral(inst, x, &var)) {
        try_install(snap_integers(inst, x));
        return;
      }
      const double rounded = std::round(x[var]);
      const double other = rounded > x[var] ? rounded - 1.0 : rounded + 1.0;
      dive_lb[var] = dive_ub[var] = rounded;
      LpResult r = lp.solve(dive_lb, dive_ub, &dive_basis, &dive_basis);
      if (r.status != LpStatus::optimal) {
        if (other < inst.lower[var] || other > inst.upper[var]) return;
        dive_lb[var] = dive_ub[var] = other;
        r = lp.solve(dive_lb, dive_ub, &dive_basis, &dive_basis);
        if (r.status != LpStatus::optimal) return;
      }
      x = std::move(r.x);
    }
  }

  void call_hook() {
    if (!hook) return;
    HeuristicContext ctx{inst, incumbent, nodes_processed, incumbent_version};
    std::optional<Assignment> found = hook(ctx);
    if (found && found->feasible) try_install(std::move(found->values));
  }

  double open_bound() const {
    double b = kInfinity;
    if (plunge >= 0) b = std::min(b, store[plunge].bound);
    if (!heap.empty()) b = std::min(b, heap.top().bound);
    return b;
  }

  SolveResult run() {
    SolveResult result;
    // root
    store.push_back(Node{});
    store.back().id = next_id++;
    plunge = 0;

    bool limit_hit = false;
    while (true) {
      int current = -1;
      if (plunge >= 0) {
        current = plunge;
        plunge = -1;
      } else if (!heap.empty()) {
        current = heap.top().index;
        heap.pop();
      } else {
        break;
      }

      const Node node = store[current];
      if (node.bound >= cutoff_value() - improvement_tol()) continue;  // pruned

      if (limits.node_limit && nodes_processed >= *limits.node_limit) {
        plunge = current;
        limit_hit = true;
        break;
      }
      if (elapsed() > limits.time_limit) {
        plunge = current;
        limit_hit = true;
        break;
      }

      node_bounds(current);
      const LpResult r = lp.solve(lb_buf, ub_buf, basis.empty() ? nullptr : &basis, &basis);
      ++nodes_processed;

      if (r.status == LpStatus::infeasible) {
        call_hook();
        continue;
      }
      if (r.status != LpStatus::optimal) {
        // numerical failure: leaf we cannot certify
        ++node_errors;
        error_bound = std::min(error_bound, node.bound);
        LBFORGE_LOG_WARN("solve_milp: node %lld lp failure (%s)", node.id, to_string(r.status));
        call_hook();
        continue;
      }

      store[current].bound = r.objective;
      if (r.objective >= cutoff_value() - improvement_tol()) {
        call_hook();
        continue;
      }

      if (nodes_processed == 1 && options.use_root_dive) {
        root_dive(lb_buf, ub_buf, r.x);
      }

      int frac_var = -1;
      if (is_integral(inst, r.x, &frac_var)) {
        std::vector<double> snapped = snap_integers(inst, r.x);
        if (!try_install(std::move(snapped))) {
          // snapping broke feasibility; accept the raw LP point if valid
          try_install(r.x);
        }
        call_hook();
        if (options.solution_limit && incumbent_version >= *options.solution_limit) {
          limit_hit = true;
          break;
        }
        continue;
      }

      // branch on frac_var
      const double x_frac = r.x[frac_var];
      Node down;
      down.parent = current;
      down.branch_var = frac_var;
      down.branch_lb = -kInfinity;
      down.branch_ub = std::floor(x_frac);
      down.bound = r.objective;
      down.depth = node.depth + 1;
      Node up = down;
      up.branch_lb = std::ceil(x_frac);
      up.branch_ub = kInfinity;

      const bool prefer_down = (x_frac - std::floor(x_frac)) < 0.5;
      down.id = next_id++;
      up.id = next_id++;
      store.push_back(down);
      const int down_idx = static_cast<int>(store.size()) - 1;
      store.push_back(up);
      const int up_idx = static_cast<int>(store.size()) - 1;
      if (prefer_down) {
        plunge = down_idx;
        heap.push(HeapEntry{up.bound, up.id, up_idx});
      } else {
        plunge = up_idx;
        heap.push(HeapEntry{down.bound, down.id, down_idx});
      }

      call_hook();
      if (options.solution_limit && incumbent_version >= *options.solution_limit) {
        limit_hit = true;
        break;
      }
    }

    result.nodes = nodes_processed;
    result.node_errors = node_errors;
    result.elapsed = elapsed();
    const bool exhausted = !limit_hit && plunge < 0 && heap.empty();
    if (exhausted && node_errors == 0) {
      if (incumbent) {
        result.status = SolveStatus::optimal;
        result.bound = incumbent->objective;
        result.best = std::move(incumbent);
      } else {
        result.status = SolveStatus::infeasible;
        result.bound = kInfinity;
      }
    } else {
      result.bound = std::min({open_bound(), error_bound,
                               incumbent ? incumbent->objective : kInfinity});
      if (incumbent) {
        result.status = SolveStatus::feasible_limit_hit;
        result.best = std::move(incumbent);
      } else {
        result.status = SolveStatus::no_solution_limit_hit;
      }
    }
    return result;
  }
};

}  // namespace

SolveResult solve_milp(const MilpInstance& inst, const SolverLimits& limits,
                       const std::optional<Assignment>& warm, const HeuristicHook& hook,
                       const SolverOptions& options) {
  if (limits.time_limit <= 0.0) throw std::invalid_argument("solve_milp: time_limit must be > 0");
  Search search(inst, limits, options, hook);
  if (warm) {
    if (!warm->feasible) throw std::invalid_argument("solve_milp: warm start must be feasible");
    search.try_install(warm->values);
  }
  return search.run();
}

std::optional<Assignment> dive_heuristic(const MilpInstance& inst) {
  SolverLimits limits;
  limits.node_limit = 1;
  SolverOptions options;
  options.use_root_dive = true;
  const SolveResult r = solve_milp(inst, limits, std::nullopt, nullptr, options);
  return r.best;
}

}  // namespace lbforge::milp
