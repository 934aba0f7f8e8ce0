/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lbforge/bench/metrics.hpp"
#include "lbforge/lb/record.hpp"
#include "lbforge/milp/instance.hpp"

namespace lbforge::bench {

enum class InitMode : std::uint8_t {
  first,  // first incumbent found by plain tree search
  root,   // best solution after the root dive plus a small node budget
};

InitMode init_mode_from_string(const std::string& name);
const char* to_string(InitMode mode);

struct ExperimentConfig {
  std::vector<std::string> algorithms;  // lb-base, lb-sr, lb-srm, lb-rl, lb-srmrl, lb-srmrl-adapt-t
  std::vector<std::string> instances;   // MPS paths
  InitMode init_mode = InitMode::first;
  double t_max = 60.0;  // budget units
  std::vector<std::uint64_t> seeds = {0, 1, 2};
  lb::LbConfig lb;
  /// model files: reg_sr, reg_srm, pi_k, pi_t (only the keys the chosen
  /// algorithms need must be present)
  std::map<std::string, std::string> model_paths;
  int jobs = 1;
  long long root_node_budget = 10;
  long long opt_node_limit = 50000000;  // safety valve for the opt solves
};

struct RunRow {
  std::string algorithm;
  std::string instance;
  std::uint64_t seed = 0;
  double pi = 0.0;
  double final_gap_pct = 0.0;
  long iters = 0;
  double best_obj = 0.0;
  double opt_obj = 0.0;
  double wall_s = 0.0;  // budget units under a node budget
  bool failed = false;
  std::string error;
};

struct CurvePoint {
  std::string algorithm;
  double t_bucket = 0.0;
  double geo_mean_p = 0.0;  // geometric mean of P(t_bucket)
};

struct ExperimentReport {
  std::vector<RunRow> rows;  // sorted by (algorithm, instance, seed)
  std::vector<std::pair<std::string, double>> geo_pi;
  std::vector<std::pair<std::string, double>> geo_gap;
  std::vector<CurvePoint> curve;
  std::vector<std::string> skipped_instances;

  double geo_pi_of(const std::string& algorithm) const;
  std::string rows_csv() const;
  std::string summary_csv() const;
  std::string curve_csv() const;
};

/// Runs every algorithm on every instance x seed, scoring primal integral
/// and final gap against proven optima. Failed runs are logged and their
/// (instance, seed) pair is dropped from every algorithm's aggregate.
ExperimentReport run_experiment(const ExperimentConfig& config);

void write_report(const ExperimentReport& report, const std::string& dir);

}  // namespace lbforge::bench
