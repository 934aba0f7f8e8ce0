/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <utility>

namespace lbforge::learn {

/// Trade-off weight between solve effort and solution quality.
struct CostMetricParams {
  double alpha = 0.5;
};

/// c = alpha * t_scaled + (1 - alpha) * o_scaled, both terms in [0,1]:
/// t_scaled = min(t_elapsed / t_limit, 1), o_scaled interpolates obj
/// between the best and worst objectives observed (0 when degenerate).
double cost_metric(double t_elapsed, double t_limit, double obj,
                   std::pair<double, double> obj_bounds, const CostMetricParams& params = {});

struct RewardParams {
  double beta1 = 1.0;
  double beta2 = 1.0;
  /// The stall penalty enters the reward negatively (a positive sign would
  /// reward failed iterations); flip for the literal additive reading.
  bool penalty_negative = true;
};

/// r_k = o_imp * (t_max - t_elaps); o_imp is the scaled objective
/// improvement of the last iteration, t_elaps the cumulative run time.
double reward_k(double o_imp, double t_max, double t_elaps);

/// r_t = beta1 * r1 + beta2 * (+/- r_p) with r_p = 1 when the sub-MILP hit
/// its limit without an improving solution.
double reward_t(double r1, bool subproblem_unsolved_no_improvement,
                const RewardParams& params = {});

}  // namespace lbforge::learn
