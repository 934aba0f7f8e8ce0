/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/learn/regression.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "lbforge/util/log.hpp"
#include "lbforge/util/rng.hpp"

namespace lbforge::learn {

double dataset_mse(const nn::GnnModel& model, const std::vector<LabeledSample>& dataset,
                   const std::vector<int>& indices) {
  if (indices.empty()) return 0.0;
  double acc = 0.0;
  for (int i : indices) {
    const double phi = nn::gnn_forward(model, dataset[i].state);
    const double err = phi - dataset[i].phi0_star;
    acc += err * err;
  }
  return acc / static_cast<double>(indices.size());
}

RegressionResult train_regression(const std::vector<LabeledSample>& dataset,
                                  const RegressionParams& params) {
  if (dataset.empty()) throw std::invalid_argument("train_regression: empty dataset");

  Rng rng(params.seed);
  std::vector<int> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  const int n = static_cast<int>(dataset.size());
  int n_train = static_cast<int>(std::floor(params.train_frac * n));
  int n_val = static_cast<int>(std::floor(params.val_frac * n));
  n_train = std::max(1, n_train);
  if (n_train + n_val > n) n_val = n - n_train;
  std::vector<int> train(order.begin(), order.begin() + n_train);
  std::vector<int> val(order.begin() + n_train, order.begin() + n_train + n_val);
  std::vector<int> test(order.begin() + n_train + n_val, order.end());
  const std::vector<int>& val_ref = val.empty() ? train : val;

  nn::GnnModel model = nn::GnnModel::init(dataset[0].state.var_dim, dataset[0].state.con_dim,
                                          params.hidden, params.seed);

  RegressionResult result;
  result.model = model;
  result.best_val_mse = dataset_mse(model, dataset, val_ref);
  result.best_epoch = 0;

  for (int epoch = 1; epoch <= params.epochs; ++epoch) {
    rng.shuffle(train);
    double train_acc = 0.0;
    for (int i : train) {
      nn::GnnCache cache;
      const double phi = nn::gnn_forward(model, dataset[i].state, cache);
      const double err = phi - dataset[i].phi0_star;
      train_acc += err * err;
      if (!std::isfinite(err)) {
        throw std::runtime_error("train_regression: diverged at epoch " + std::to_string(epoch) +
                                 " (non-finite loss)");
      }
      const nn::GnnModel grads = nn::gnn_backward(model, dataset[i].state, cache, 2.0 * err);
      nn::sgd_step(model, grads, params.lr);
    }
    EpochLog log;
    log.epoch = epoch;
    log.train_mse = train_acc / static_cast<double>(train.size());
    log.val_mse = dataset_mse(model, dataset, val_ref);
    result.log.push_back(log);
    if (log.val_mse < result.best_val_mse) {
      result.best_val_mse = log.val_mse;
      result.best_epoch = epoch;
      result.model = model;
    }
  }
  result.test_mse = dataset_mse(result.model, dataset, test);
  LBFORGE_LOG_INFO("train_regression: best val mse %.6f at epoch %d, test mse %.6f",
                   result.best_val_mse, result.best_epoch, result.test_mse);
  return result;
}

void write_training_log_csv(const std::vector<EpochLog>& log, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << "epoch,train_mse,val_mse\n";
  char buf[96];
  for (const auto& e : log) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g\n", e.epoch, e.train_mse, e.val_mse);
    os << buf;
  }
}

}  // namespace lbforge::learn
