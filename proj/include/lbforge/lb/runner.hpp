/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <functional>
#include <optional>

#include "lbforge/features/bipartite.hpp"
#include "lbforge/features/rl_state.hpp"
#include "lbforge/lb/record.hpp"
#include "lbforge/util/rng.hpp"

namespace lbforge::lb {

/// Predicts the scaled first neighborhood size phi in (0,1) from the
/// bipartite state (GNN regression in production, anything in tests).
using RegressionFn = std::function<double(const feat::BipartiteState&)>;

/// Maps an RL state to an action index in {0: increase, 1: keep,
/// 2: decrease, 3: reset}; `rng` is null for deterministic (greedy) use.
using PolicyFn = std::function<int(const feat::RlState&, Rng*)>;

enum class KZeroSource : std::uint8_t { config_default, regression };

/// Per-step rollout data captured for policy training.
struct RlTraceStep {
  feat::RlState state;
  int action_k = -1;
  int action_t = -1;
  double improvement_scaled = 0.0;  // improvement of this step, scaled
  double elapsed_after = 0.0;       // cumulative budget after this step
  bool penalized = false;           // limit hit without any improvement
};

struct RlTrace {
  std::vector<RlTraceStep> steps;
};

/// One neighborhood exploration: adds the left constraint around the
/// incumbent, solves the sub-MILP with the incumbent objective as cutoff,
/// and classifies the outcome.
LbIterationOutcome lb_iterate(const milp::MilpInstance& inst, const milp::Assignment& incumbent,
                              double k, double t_limit, const Budget& budget,
                              LbConstraintForm form = LbConstraintForm::symmetric);

/// Deterministic baseline: fixed k0, conservative radius updates
/// (grow by ceil(k/2) on a proven-empty ball, shrink by ceil(k/2) on a
/// fruitless limit hit), recentering with ball exclusion on improvements.
LbRunRecord run_lb_baseline(const milp::MilpInstance& inst, const milp::Assignment& initial,
                            const LbConfig& cfg);

/// First radius from the regression model: k0 = phi * k' where k' is the
/// LB distance of the LP optimum from the incumbent; baseline afterwards.
/// Falls back to k0_default when the LP fails or k' vanishes.
LbRunRecord run_lb_with_regression(const milp::MilpInstance& inst, const milp::Assignment& initial,
                                   const LbConfig& cfg, const RegressionFn& reg_model);

/// Policy-adapted radius: k0 per `k0_source`, then every iteration applies
/// one of {k += k_step*k, keep, k -= k_step*k, reset to default}.
LbRunRecord run_lb_rl(const milp::MilpInstance& inst, const milp::Assignment& initial,
                      const LbConfig& cfg, const PolicyFn& policy_k, KZeroSource k0_source,
                      const RegressionFn& reg_model = nullptr, Rng* rng = nullptr,
                      RlTrace* trace = nullptr);

/// As run_lb_rl plus a second policy adapting the per-iteration budget:
/// {t *= t_step, keep, t /= t_step, reset to default}, clamped to
/// [t_min, remaining global budget].
LbRunRecord run_lb_rl_hybrid(const milp::MilpInstance& inst, const milp::Assignment& initial,
                             const LbConfig& cfg, const PolicyFn& policy_k,
                             const PolicyFn& policy_t, KZeroSource k0_source,
                             const RegressionFn& reg_model = nullptr, Rng* rng = nullptr,
                             RlTrace* trace = nullptr);

/// Action application helpers (exposed for tests).
double apply_k_action(double k, int action, const LbConfig& cfg);
double apply_t_action(double t, int action, const LbConfig& cfg);

/// Radius ceiling: |B| for the symmetric form, |support| for the
/// asymmetric one.
double k_limit(const milp::MilpInstance& inst, const milp::Assignment& center,
               LbConstraintForm form);

}  // namespace lbforge::lb
