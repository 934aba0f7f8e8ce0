/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/nn/policy.hpp"

#include <stdexcept>

namespace lbforge::nn {

PolicyModel PolicyModel::init(std::uint64_t seed) {
  Rng rng(seed);
  PolicyModel m;
  const Dense d = Dense::uniform(kPolicyActions, feat::kRlStateDim, rng);
  m.weights = d.W;
  m.bias = d.b;
  return m;
}

Eigen::Vector4d policy_forward(const PolicyModel& model, const feat::RlState& s) {
  const auto arr = s.to_array();
  Eigen::Map<const Eigen::VectorXd> x(arr.data(), feat::kRlStateDim);
  Eigen::Vector4d logits = model.weights * x + model.bias;
  const double shift = logits.maxCoeff();
  Eigen::Vector4d p = (logits.array() - shift).exp();
  p /= p.sum();
  return p;
}

PolicyModel policy_grad_logp(const PolicyModel& model, const feat::RlState& s, int action) {
  if (action < 0 || action >= kPolicyActions) {
    throw std::invalid_argument("policy_grad_logp: action out of range");
  }
  const Eigen::Vector4d p = policy_forward(model, s);
  Eigen::Vector4d indicator = Eigen::Vector4d::Zero();
  indicator(action) = 1.0;
  const Eigen::Vector4d delta = indicator - p;

  const auto arr = s.to_array();
  Eigen::Map<const Eigen::VectorXd> x(arr.data(), feat::kRlStateDim);
  PolicyModel g;
  g.weights = delta * x.transpose();
  g.bias = delta;
  return g;
}

void sgd_step(PolicyModel& params, const PolicyModel& grads, double lr) {
  params.weights.noalias() -= lr * grads.weights;
  params.bias.noalias() -= lr * grads.bias;
}

int policy_greedy(const PolicyModel& model, const feat::RlState& s) {
  const Eigen::Vector4d p = policy_forward(model, s);
  int best = 0;
  for (int a = 1; a < kPolicyActions; ++a) {
    if (p(a) > p(best)) best = a;
  }
  return best;
}

int policy_sample(const PolicyModel& model, const feat::RlState& s, Rng& rng) {
  const Eigen::Vector4d p = policy_forward(model, s);
  const double w[kPolicyActions] = {p(0), p(1), p(2), p(3)};
  return rng.categorical(std::span<const double>(w, kPolicyActions));
}

lb::PolicyFn make_policy_fn(const PolicyModel& model) {
  return [model](const feat::RlState& s, Rng* rng) {
    return rng != nullptr ? policy_sample(model, s, *rng) : policy_greedy(model, s);
  };
}

}  // namespace lbforge::nn
