/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <array>

#include "lbforge/lb/record.hpp"

namespace lbforge::feat {

constexpr int kRlStateDim = 7;

/// Instance-independent policy input summarizing the previous iteration:
/// one-hot outcome status, the stalling indicator, the unused share of the
/// iteration budget, and the scaled objective improvement.
struct RlState {
  double optimal = 0.0;
  double infeasible = 0.0;
  double improved = 0.0;
  double not_improved = 0.0;
  double diverse = 0.0;
  double t_available = 0.0;
  double obj_improve = 0.0;

  std::array<double, kRlStateDim> to_array() const {
    return {optimal, infeasible, improved, not_improved, diverse, t_available, obj_improve};
  }
};

/// Scaled objective improvement used in both the state and the rewards.
double scale_improvement(double obj_improvement, double initial_obj);

RlState extract_rl_state(const lb::LbIterationOutcome& prev, double prev_t_limit,
                         double initial_obj, bool diverse_flag);

/// Convenience overload reading the previous iteration from the record.
RlState extract_rl_state(const lb::LbRunRecord& record, bool diverse_flag);

}  // namespace lbforge::feat
