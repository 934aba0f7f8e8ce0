/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <Eigen/Dense>

#include "lbforge/util/rng.hpp"

namespace lbforge::nn {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
inline double relu(double x) { return x > 0.0 ? x : 0.0; }

/// Affine map y = W x + b. Batched application uses rows as samples.
struct Dense {
  Eigen::MatrixXd W;  // out x in
  Eigen::VectorXd b;  // out

  static Dense zeros(int out, int in) {
    Dense d;
    d.W = Eigen::MatrixXd::Zero(out, in);
    d.b = Eigen::VectorXd::Zero(out);
    return d;
  }

  /// Uniform init in [-1/sqrt(fan_in), +1/sqrt(fan_in)] for W and b.
  static Dense uniform(int out, int in, Rng& rng) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    Dense d = zeros(out, in);
    for (int r = 0; r < out; ++r) {
      for (int c = 0; c < in; ++c) d.W(r, c) = rng.uniform(-bound, bound);
    }
    for (int r = 0; r < out; ++r) d.b(r) = rng.uniform(-bound, bound);
    return d;
  }

  int out_dim() const { return static_cast<int>(W.rows()); }
  int in_dim() const { return static_cast<int>(W.cols()); }

  /// X: N x in -> N x out.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const {
    return (x * W.transpose()).rowwise() + b.transpose();
  }
};

inline Eigen::MatrixXd relu(const Eigen::MatrixXd& x) { return x.cwiseMax(0.0); }

/// Derivative mask applied to upstream gradients: g .* (z > 0).
inline Eigen::MatrixXd relu_backward(const Eigen::MatrixXd& z, const Eigen::MatrixXd& g) {
  return (z.array() > 0.0).select(g, Eigen::MatrixXd::Zero(g.rows(), g.cols()));
}

struct DenseGrad {
  Eigen::MatrixXd W;
  Eigen::VectorXd b;
};

/// Parameter gradients plus input gradient for y = x W^T + 1 b^T with
/// upstream gradient g (same shape as y).
inline void dense_backward(const Dense& layer, const Eigen::MatrixXd& x, const Eigen::MatrixXd& g,
                           Dense& grad, Eigen::MatrixXd* dx) {
  grad.W.noalias() += g.transpose() * x;
  grad.b.noalias() += g.colwise().sum().transpose();
  if (dx != nullptr) dx->noalias() = g * layer.W;
}

}  // namespace lbforge::nn
