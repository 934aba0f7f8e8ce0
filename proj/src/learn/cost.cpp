/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/learn/cost.hpp"

#include <algorithm>
#include <stdexcept>

namespace lbforge::learn {

double cost_metric(double t_elapsed, double t_limit, double obj,
                   std::pair<double, double> obj_bounds, const CostMetricParams& params) {
  if (t_limit <= 0.0) throw std::invalid_argument("cost_metric: t_limit must be > 0");
  const auto [best, worst] = obj_bounds;
  if (best > worst) throw std::invalid_argument("cost_metric: best bound exceeds worst");
  const double t_scaled = std::min(std::max(t_elapsed, 0.0) / t_limit, 1.0);
  double o_scaled = 0.0;
  if (worst > best) {
    o_scaled = std::clamp((obj - best) / (worst - best), 0.0, 1.0);
  }
  return params.alpha * t_scaled + (1.0 - params.alpha) * o_scaled;
}

double reward_k(double o_imp, double t_max, double t_elaps) {
  const double remaining = std::max(t_max - std::min(t_elaps, t_max), 0.0);
  return o_imp * remaining;
}

double reward_t(double r1, bool subproblem_unsolved_no_improvement, const RewardParams& params) {
  const double r_p = subproblem_unsolved_no_improvement ? 1.0 : 0.0;
  const double signed_penalty = params.penalty_negative ? -r_p : r_p;
  return params.beta1 * r1 + params.beta2 * signed_penalty;
}

}  // namespace lbforge::learn
