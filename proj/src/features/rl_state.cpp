/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/features/rl_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lbforge::feat {

double scale_improvement(double obj_improvement, double initial_obj) {
  return obj_improvement / std::max(std::abs(initial_obj), 1.0);
}

RlState extract_rl_state(const lb::LbIterationOutcome& prev, double prev_t_limit,
                         double initial_obj, bool diverse_flag) {
  RlState s;
  switch (prev.status) {
    case lb::LbIterationStatus::optimal: s.optimal = 1.0; break;
    case lb::LbIterationStatus::infeasible: s.infeasible = 1.0; break;
    case lb::LbIterationStatus::improved: s.improved = 1.0; break;
    case lb::LbIterationStatus::not_improved: s.not_improved = 1.0; break;
  }
  s.diverse = diverse_flag ? 1.0 : 0.0;
  if (prev_t_limit > 0.0) {
    s.t_available = std::max(0.0, (prev_t_limit - prev.elapsed) / prev_t_limit);
  }
  s.obj_improve = scale_improvement(prev.obj_improvement, initial_obj);
  return s;
}

RlState extract_rl_state(const lb::LbRunRecord& record, bool diverse_flag) {
  if (record.iterations.empty()) {
    throw std::invalid_argument("extract_rl_state: record has no iterations");
  }
  const auto& last = record.iterations.back();
  return extract_rl_state(last.outcome, last.t, record.initial_obj, diverse_flag);
}

}  // namespace lbforge::feat
