/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lbforge/features/bipartite.hpp"
#include "lbforge/lb/record.hpp"
#include "lbforge/learn/cost.hpp"

namespace lbforge::learn {

struct CostCurvePoint {
  double phi = 0.0;
  double cost = 0.0;
  bool solved = false;  // sub-MILP finished (proved optimal or empty)
};

struct LabeledSample {
  feat::BipartiteState state;
  double k_prime = 0.0;
  double k0_star = 0.0;
  double phi0_star = 0.0;
  std::vector<CostCurvePoint> cost_curve;
  std::string source;  // instance name, for bookkeeping
};

struct LabelParams {
  double resolution = 0.01;
  double t_limit = 10.0;  // budget units per grid evaluation
  CostMetricParams cost;
};

/// Grid-searches phi over (0,1): each grid point runs one LB iteration with
/// radius phi * k' and is scored by the cost metric; the label is the
/// cost-minimal phi (ties prefer the largest phi whose sub-MILP was solved,
/// then the smallest phi). Returns nullopt (sample skipped) when the LP
/// relaxation fails or k' = 0.
std::optional<LabeledSample> generate_label(const milp::MilpInstance& inst,
                                            const milp::Assignment& incumbent,
                                            const lb::LbConfig& cfg, const LabelParams& params);

/// Dataset directory layout: NNN.state (bipartite tensor container) plus
/// NNN.label.json per sample.
void write_sample(const LabeledSample& sample, const std::string& dir, int index);
LabeledSample read_sample(const std::string& dir, int index);
std::vector<LabeledSample> read_dataset(const std::string& dir);

}  // namespace lbforge::learn
