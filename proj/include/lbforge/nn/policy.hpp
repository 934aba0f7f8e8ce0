/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>

#include "lbforge/features/rl_state.hpp"
#include "lbforge/lb/runner.hpp"
#include "lbforge/nn/dense.hpp"

namespace lbforge::nn {

constexpr int kPolicyActions = 4;  // increase, keep, decrease, reset

/// Linear softmax policy over the 7 RL state features.
struct PolicyModel {
  Eigen::MatrixXd weights{Eigen::MatrixXd::Zero(kPolicyActions, feat::kRlStateDim)};
  Eigen::VectorXd bias{Eigen::VectorXd::Zero(kPolicyActions)};

  static PolicyModel zeros() { return PolicyModel{}; }
  static PolicyModel init(std::uint64_t seed);
};

/// Softmax action distribution; probabilities are positive and sum to 1.
Eigen::Vector4d policy_forward(const PolicyModel& model, const feat::RlState& s);

/// Gradient of log pi(action | s) with respect to the parameters.
PolicyModel policy_grad_logp(const PolicyModel& model, const feat::RlState& s, int action);

void sgd_step(PolicyModel& params, const PolicyModel& grads, double lr);

int policy_greedy(const PolicyModel& model, const feat::RlState& s);
int policy_sample(const PolicyModel& model, const feat::RlState& s, Rng& rng);

/// Adapters for the LB runners: greedy when no rng is supplied, sampling
/// otherwise.
lb::PolicyFn make_policy_fn(const PolicyModel& model);

}  // namespace lbforge::nn
