/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lbforge/learn/cost.hpp"
#include "lbforge/nn/policy.hpp"

namespace lbforge::learn {

struct TrajectoryStep {
  feat::RlState state;
  int action = 0;
  double reward = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  std::vector<double> returns_to_go;  // undiscounted

  void compute_returns();
  double total_return() const;
};

/// Episode source for REINFORCE; rollouts must sample actions from the
/// given policy and record per-step rewards.
class RlEnv {
 public:
  virtual ~RlEnv() = default;
  virtual Trajectory rollout(const nn::PolicyModel& policy, Rng& rng) = 0;
};

struct ReinforceParams {
  double lr = 1e-2;
  int epochs = 300;  // one episode per epoch
  std::uint64_t seed = 0;
};

struct ReinforceResult {
  nn::PolicyModel policy;
  std::vector<double> episode_returns;
};

/// Vanilla REINFORCE: after each episode the parameters move along
/// sum_t grad log pi(a_t | s_t) * G_t with undiscounted returns-to-go and
/// no baseline. Throws on divergence (non-finite parameters).
ReinforceResult train_policy_reinforce(RlEnv& env, nn::PolicyModel policy,
                                       const ReinforceParams& params = {});

void write_returns_csv(const std::vector<double>& returns, const std::string& path);

/// LB training environments. `which_t` selects the reward: the k-policy
/// environment scores reward_k, the t-policy environment freezes a
/// pretrained k-policy and scores reward_t.
class LbKPolicyEnv : public RlEnv {
 public:
  LbKPolicyEnv(std::vector<milp::MilpInstance> instances,
               std::vector<milp::Assignment> initials, lb::LbConfig cfg,
               lb::KZeroSource k0_source = lb::KZeroSource::config_default,
               lb::RegressionFn reg_model = nullptr);
  Trajectory rollout(const nn::PolicyModel& policy, Rng& rng) override;

 private:
  std::vector<milp::MilpInstance> instances_;
  std::vector<milp::Assignment> initials_;
  lb::LbConfig cfg_;
  lb::KZeroSource k0_source_;
  lb::RegressionFn reg_model_;
};

class LbTPolicyEnv : public RlEnv {
 public:
  LbTPolicyEnv(std::vector<milp::MilpInstance> instances,
               std::vector<milp::Assignment> initials, lb::LbConfig cfg,
               nn::PolicyModel frozen_policy_k,
               lb::KZeroSource k0_source = lb::KZeroSource::config_default,
               lb::RegressionFn reg_model = nullptr, RewardParams reward_params = {});
  Trajectory rollout(const nn::PolicyModel& policy, Rng& rng) override;

  const nn::PolicyModel& frozen_policy_k() const { return frozen_k_; }

 private:
  std::vector<milp::MilpInstance> instances_;
  std::vector<milp::Assignment> initials_;
  lb::LbConfig cfg_;
  nn::PolicyModel frozen_k_;
  lb::KZeroSource k0_source_;
  lb::RegressionFn reg_model_;
  RewardParams reward_params_;
};

}  // namespace lbforge::learn
