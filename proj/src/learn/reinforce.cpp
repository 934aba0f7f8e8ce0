/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/learn/reinforce.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "lbforge/lb/runner.hpp"
#include "lbforge/util/log.hpp"

namespace lbforge::learn {

void Trajectory::compute_returns() {
  returns_to_go.assign(steps.size(), 0.0);
  double acc = 0.0;
  for (int t = static_cast<int>(steps.size()) - 1; t >= 0; --t) {
    acc += steps[t].reward;
    returns_to_go[t] = acc;
  }
}

double Trajectory::total_return() const {
  double acc = 0.0;
  for (const auto& s : steps) acc += s.reward;
  return acc;
}

ReinforceResult train_policy_reinforce(RlEnv& env, nn::PolicyModel policy,
                                       const ReinforceParams& params) {
  Rng rng(params.seed);
  ReinforceResult result;
  result.episode_returns.reserve(params.epochs);

  for (int episode = 0; episode < params.epochs; ++episode) {
    Trajectory traj = env.rollout(policy, rng);
    traj.compute_returns();
    result.episode_returns.push_back(traj.total_return());
    if (traj.steps.empty()) continue;

    nn::PolicyModel grad;  // zero-initialized accumulator
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
      const nn::PolicyModel g =
          nn::policy_grad_logp(policy, traj.steps[t].state, traj.steps[t].action);
      grad.weights.noalias() += traj.returns_to_go[t] * g.weights;
      grad.bias.noalias() += traj.returns_to_go[t] * g.bias;
    }
    // ascent on the expected return
    nn::sgd_step(policy, grad, -params.lr);
    if (!policy.weights.allFinite() || !policy.bias.allFinite()) {
      throw std::runtime_error("train_policy_reinforce: diverged at episode " +
                               std::to_string(episode));
    }
  }
  result.policy = std::move(policy);
  return result;
}

void write_returns_csv(const std::vector<double>& returns, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << "episode,return\n";
  char buf[64];
  for (std::size_t i = 0; i < returns.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.12g\n", i, returns[i]);
    os << buf;
  }
}

namespace {

Trajectory trace_to_trajectory_k(const lb::RlTrace& trace, double t_max) {
  Trajectory traj;
  traj.steps.reserve(trace.steps.size());
  for (const auto& s : trace.steps) {
    TrajectoryStep step;
    step.state = s.state;
    step.action = s.action_k;
    step.reward = reward_k(s.improvement_scaled, t_max, s.elapsed_after);
    traj.steps.push_back(std::move(step));
  }
  return traj;
}

Trajectory trace_to_trajectory_t(const lb::RlTrace& trace, double t_max,
                                 const RewardParams& params) {
  Trajectory traj;
  traj.steps.reserve(trace.steps.size());
  for (const auto& s : trace.steps) {
    TrajectoryStep step;
    step.state = s.state;
    step.action = s.action_t;
    const double r1 = reward_k(s.improvement_scaled, t_max, s.elapsed_after);
    step.reward = reward_t(r1, s.penalized, params);
    traj.steps.push_back(std::move(step));
  }
  return traj;
}

void check_env_inputs(const std::vector<milp::MilpInstance>& instances,
                      const std::vector<milp::Assignment>& initials) {
  if (instances.empty() || instances.size() != initials.size()) {
    throw std::invalid_argument("lb policy env: need matching instances and initial solutions");
  }
}

}  // namespace

LbKPolicyEnv::LbKPolicyEnv(std::vector<milp::MilpInstance> instances,
                           std::vector<milp::Assignment> initials, lb::LbConfig cfg,
                           lb::KZeroSource k0_source, lb::RegressionFn reg_model)
    : instances_(std::move(instances)), initials_(std::move(initials)), cfg_(std::move(cfg)),
      k0_source_(k0_source), reg_model_(std::move(reg_model)) {
  check_env_inputs(instances_, initials_);
}

Trajectory LbKPolicyEnv::rollout(const nn::PolicyModel& policy, Rng& rng) {
  const int pick = rng.uniform_index(static_cast<int>(instances_.size()));
  lb::RlTrace trace;
  lb::run_lb_rl(instances_[pick], initials_[pick], cfg_, nn::make_policy_fn(policy), k0_source_,
                reg_model_, &rng, &trace);
  return trace_to_trajectory_k(trace, cfg_.global_time_limit);
}

LbTPolicyEnv::LbTPolicyEnv(std::vector<milp::MilpInstance> instances,
                           std::vector<milp::Assignment> initials, lb::LbConfig cfg,
                           nn::PolicyModel frozen_policy_k, lb::KZeroSource k0_source,
                           lb::RegressionFn reg_model, RewardParams reward_params)
    : instances_(std::move(instances)), initials_(std::move(initials)), cfg_(std::move(cfg)),
      frozen_k_(std::move(frozen_policy_k)), k0_source_(k0_source),
      reg_model_(std::move(reg_model)), reward_params_(reward_params) {
  check_env_inputs(instances_, initials_);
}

Trajectory LbTPolicyEnv::rollout(const nn::PolicyModel& policy, Rng& rng) {
  const int pick = rng.uniform_index(static_cast<int>(instances_.size()));
  lb::RlTrace trace;
  lb::run_lb_rl_hybrid(instances_[pick], initials_[pick], cfg_, nn::make_policy_fn(frozen_k_),
                       nn::make_policy_fn(policy), k0_source_, reg_model_, &rng, &trace);
  return trace_to_trajectory_t(trace, cfg_.global_time_limit, reward_params_);
}

}  // namespace lbforge::learn
