/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/lb/runner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lbforge/milp/simplex.hpp"
#include "lbforge/milp/solver.hpp"
#include "lbforge/util/log.hpp"

namespace lbforge::lb {

using milp::Assignment;
using milp::MilpInstance;

LbIterationOutcome lb_iterate(const MilpInstance& inst, const Assignment& incumbent, double k,
                              double t_limit, const Budget& budget, LbConstraintForm form) {
  if (k < 1.0) throw std::invalid_argument("lb_iterate: k must be >= 1");
  if (t_limit <= 0.0) throw std::invalid_argument("lb_iterate: t_limit must be > 0");
  if (!incumbent.feasible) throw std::invalid_argument("lb_iterate: incumbent must be feasible");

  const MilpInstance child = add_lb_constraint(inst, incumbent, k, LbDirection::left_leq, form);
  milp::SolverLimits limits;
  limits.objective_cutoff = incumbent.objective;
  if (budget.kind == BudgetKind::node_count) {
    limits.node_limit = budget.node_limit_for(t_limit);
  } else {
    limits.time_limit = t_limit;
  }
  const milp::SolveResult result = milp::solve_milp(child, limits);

  LbIterationOutcome out;
  out.nodes = result.nodes;
  out.error = result.node_errors > 0;
  out.elapsed = budget.kind == BudgetKind::node_count ? budget.units_for_nodes(result.nodes)
                                                      : result.elapsed;
  switch (result.status) {
    case milp::SolveStatus::optimal:
      out.status = LbIterationStatus::optimal;
      break;
    case milp::SolveStatus::infeasible:
      out.status = LbIterationStatus::infeasible;
      break;
    case milp::SolveStatus::feasible_limit_hit:
      out.status = LbIterationStatus::improved;
      break;
    case milp::SolveStatus::no_solution_limit_hit:
      out.status = LbIterationStatus::not_improved;
      break;
  }
  if (result.best) {
    out.new_incumbent = make_assignment(inst, result.best->values);
    out.obj_improvement = std::max(0.0, incumbent.objective - out.new_incumbent->objective);
  }
  return out;
}

double k_limit(const MilpInstance& inst, const Assignment& center, LbConstraintForm form) {
  long limit = 0;
  if (form == LbConstraintForm::symmetric) {
    for (int j = 0; j < inst.num_vars; ++j) {
      if (inst.kind[j] == milp::VarKind::binary) ++limit;
    }
  } else {
    limit = static_cast<long>(center.binary_support.size());
  }
  return std::max(1.0, static_cast<double>(limit));
}

double apply_k_action(double k, int action, const LbConfig& cfg) {
  switch (action) {
    case 0: return k + cfg.k_step * k;
    case 1: return k;
    case 2: return k - cfg.k_step * k;
    case 3: return cfg.k0_default;
    default: throw std::invalid_argument("apply_k_action: action out of range");
  }
}

double apply_t_action(double t, int action, const LbConfig& cfg) {
  switch (action) {
    case 0: return t * cfg.t_step;
    case 1: return t;
    case 2: return t / cfg.t_step;
    case 3: return cfg.node_time_limit_default;
    default: throw std::invalid_argument("apply_t_action: action out of range");
  }
}

namespace {

// Shared loop driving all four variants. The k-update strategy and the
// optional t-update are supplied by the caller.
struct RunDriver {
  const MilpInstance& original;
  const LbConfig& cfg;
  LbRunRecord record;
  MilpInstance work;  // original + accumulated exclusion rows
  Assignment center;
  double k;
  double t;
  double elapsed = 0.0;
  int consecutive_not_improved = 0;
  bool diverse = false;
  bool exhausted = false;

  RunDriver(const MilpInstance& inst, const Assignment& initial, const LbConfig& config,
            const std::string& algorithm)
      : original(inst), cfg(config), work(inst), center(initial),
        k(config.k0_default), t(config.node_time_limit_default) {
    cfg.validate();
    if (!initial.feasible) throw std::invalid_argument("lb run: initial solution must be feasible");
    record.algorithm = algorithm;
    record.t_max = cfg.global_time_limit;
    record.initial_obj = initial.objective;
    record.final_obj = initial.objective;
  }

  double remaining() const { return cfg.global_time_limit - elapsed; }

  bool can_continue() const {
    return !exhausted && remaining() > 1e-12 &&
           static_cast<long>(record.iterations.size()) < cfg.max_iterations;
  }

  // Runs one iteration with the current k and t; returns the outcome status.
  LbIterationStatus step() {
    const double cap = k_limit(original, center, cfg.constraint_form);
    const double k_used = std::clamp(k, 1.0, cap);
    const double t_used = std::max(std::min(t, remaining()), 1e-9);
    LbIterationOutcome outcome =
        lb_iterate(work, center, k_used, t_used, cfg.budget, cfg.constraint_form);
    elapsed += outcome.elapsed;

    const bool improved = outcome.new_incumbent.has_value();
    if (improved) {
      // exclude the explored ball, then recenter
      work = add_lb_constraint(work, center, k_used, LbDirection::right_geq, cfg.constraint_form);
      record.exclusions.push_back(
          LbExclusion{center.values, static_cast<double>(lb_radius(k_used))});
      center = *outcome.new_incumbent;
      record.final_obj = center.objective;
      record.final_values = center.values;
      consecutive_not_improved = 0;
      diverse = false;
    } else if (outcome.status == LbIterationStatus::not_improved) {
      ++consecutive_not_improved;
      diverse = consecutive_not_improved >= 2;
    } else {
      consecutive_not_improved = 0;
    }
    if (outcome.status == LbIterationStatus::infeasible && k_used >= cap) {
      // nothing left to explore outside the excluded balls
      exhausted = true;
    }

    LbIterationRecord rec;
    rec.k = static_cast<double>(lb_radius(k_used));
    rec.t = t_used;
    rec.incumbent_obj = center.objective;
    rec.elapsed_total = elapsed;
    rec.outcome = std::move(outcome);
    record.iterations.push_back(std::move(rec));
    record.elapsed_total = elapsed;
    return record.iterations.back().outcome.status;
  }

  void apply_baseline_update(LbIterationStatus status) {
    switch (status) {
      case LbIterationStatus::optimal:
      case LbIterationStatus::improved:
        break;  // recentered, keep k
      case LbIterationStatus::infeasible:
        k = k + std::ceil(k / 2.0);
        break;
      case LbIterationStatus::not_improved:
        k = std::max(1.0, k - std::ceil(k / 2.0));
        break;
    }
  }

  feat::RlState state() const {
    return feat::extract_rl_state(record, diverse);
  }

  void finish() {
    record.elapsed_total = elapsed;
  }
};

double compute_k0_regression(const MilpInstance& inst, const Assignment& initial,
                             const LbConfig& cfg, const RegressionFn& reg_model) {
  const milp::LpResult lp = milp::solve_lp_relaxation(inst);
  if (lp.status != milp::LpStatus::optimal) {
    LBFORGE_LOG_INFO("lb: LP relaxation not optimal (%s), falling back to default k0",
                     milp::to_string(lp.status));
    return cfg.k0_default;
  }
  const double k_prime = hamming_delta(inst, lp.x, initial, cfg.constraint_form);
  if (k_prime <= milp::kIntTol) {
    LBFORGE_LOG_INFO("lb: k' = 0 (LP optimum at the incumbent), falling back to default k0");
    return cfg.k0_default;
  }
  const feat::BipartiteState s = feat::extract_bipartite(inst, initial);
  const double phi = reg_model(s);
  return std::max(1.0, phi * k_prime);
}

}  // namespace

LbRunRecord run_lb_baseline(const MilpInstance& inst, const Assignment& initial,
                            const LbConfig& cfg) {
  RunDriver run(inst, initial, cfg, "lb-base");
  while (run.can_continue()) {
    const LbIterationStatus status = run.step();
    run.apply_baseline_update(status);
  }
  run.finish();
  return std::move(run.record);
}

LbRunRecord run_lb_with_regression(const MilpInstance& inst, const Assignment& initial,
                                   const LbConfig& cfg, const RegressionFn& reg_model) {
  RunDriver run(inst, initial, cfg, "lb-sr");
  run.k = compute_k0_regression(inst, initial, cfg, reg_model);
  while (run.can_continue()) {
    const LbIterationStatus status = run.step();
    run.apply_baseline_update(status);
  }
  run.finish();
  return std::move(run.record);
}

namespace {

LbRunRecord run_policy_driven(const MilpInstance& inst, const Assignment& initial,
                              const LbConfig& cfg, const PolicyFn& policy_k,
                              const PolicyFn* policy_t, KZeroSource k0_source,
                              const RegressionFn& reg_model, Rng* rng, RlTrace* trace,
                              const std::string& algorithm) {
  if (!policy_k) throw std::invalid_argument("lb rl run: policy_k is required");
  if (k0_source == KZeroSource::regression && !reg_model) {
    throw std::invalid_argument("lb rl run: regression k0 requested without a model");
  }
  RunDriver run(inst, initial, cfg, algorithm);
  if (k0_source == KZeroSource::regression) {
    run.k = compute_k0_regression(inst, initial, cfg, reg_model);
  }
  bool first = true;
  while (run.can_continue()) {
    if (!first) {
      const feat::RlState s = run.state();
      RlTraceStep step;
      step.state = s;
      step.action_k = policy_k(s, rng);
      run.k = apply_k_action(run.k, step.action_k, cfg);
      if (policy_t != nullptr) {
        step.action_t = (*policy_t)(s, rng);
        run.t = std::clamp(apply_t_action(run.t, step.action_t, cfg), cfg.t_min,
                           cfg.global_time_limit);
      }
      run.step();
      const auto& last = run.record.iterations.back();
      step.improvement_scaled =
          feat::scale_improvement(last.outcome.obj_improvement, run.record.initial_obj);
      step.elapsed_after = last.elapsed_total;
      step.penalized = last.outcome.status == LbIterationStatus::not_improved;
      if (trace != nullptr) trace->steps.push_back(std::move(step));
    } else {
      run.step();
      first = false;
    }
  }
  run.finish();
  return std::move(run.record);
}

}  // namespace

LbRunRecord run_lb_rl(const MilpInstance& inst, const Assignment& initial, const LbConfig& cfg,
                      const PolicyFn& policy_k, KZeroSource k0_source,
                      const RegressionFn& reg_model, Rng* rng, RlTrace* trace) {
  const std::string name = k0_source == KZeroSource::regression ? "lb-srmrl" : "lb-rl";
  return run_policy_driven(inst, initial, cfg, policy_k, nullptr, k0_source, reg_model, rng, trace,
                           name);
}

LbRunRecord run_lb_rl_hybrid(const MilpInstance& inst, const Assignment& initial,
                             const LbConfig& cfg, const PolicyFn& policy_k,
                             const PolicyFn& policy_t, KZeroSource k0_source,
                             const RegressionFn& reg_model, Rng* rng, RlTrace* trace) {
  if (!policy_t) throw std::invalid_argument("lb hybrid run: policy_t is required");
  return run_policy_driven(inst, initial, cfg, policy_k, &policy_t, k0_source, reg_model, rng,
                           trace, "lb-srmrl-adapt-t");
}

}  // namespace lbforge::lb
