/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lbforge/learn/label.hpp"
#include "lbforge/nn/gnn.hpp"

namespace lbforge::learn {

struct RegressionParams {
  int epochs = 300;
  double lr = 1e-4;
  double train_frac = 0.7;
  double val_frac = 0.1;  // remainder is the test split
  int hidden = 64;
  std::uint64_t seed = 0;
};

struct EpochLog {
  int epoch = 0;
  double train_mse = 0.0;
  double val_mse = 0.0;
};

struct RegressionResult {
  nn::GnnModel model;  // validation-best checkpoint
  std::vector<EpochLog> log;
  double best_val_mse = 0.0;
  double test_mse = 0.0;
  int best_epoch = 0;
};

/// Per-sample SGD on the squared error of phi. Splits the dataset
/// train/val/test with a seeded shuffle, tracks the validation-best
/// parameters, and throws on divergence (non-finite loss).
RegressionResult train_regression(const std::vector<LabeledSample>& dataset,
                                  const RegressionParams& params = {});

double dataset_mse(const nn::GnnModel& model, const std::vector<LabeledSample>& dataset,
                   const std::vector<int>& indices);

void write_training_log_csv(const std::vector<EpochLog>& log, const std::string& path);

}  // namespace lbforge::learn
