/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <string>

#include "lbforge/features/bipartite.hpp"
#include "lbforge/nn/dense.hpp"

namespace lbforge::nn {

/// Bipartite message-passing network mapping a MILP state to a scalar in
/// (0,1). Two-layer ReLU perceptrons embed both node sides; one full
/// convolution round (a variable-to-constraint half-layer followed by a
/// constraint-to-variable one) propagates messages, each half-layer being
/// message MLP g([target, source, edge]) and update MLP f([prev, sum]);
/// a two-layer output head is mean-pooled over variable nodes and squashed
/// with a sigmoid.
struct GnnModel {
  int var_dim = 10;
  int con_dim = 1;
  int edge_dim = 1;
  int hidden = 64;

  Dense var_l1, var_l2;
  Dense con_l1, con_l2;
  Dense msg_v2c, upd_v2c;
  Dense msg_c2v, upd_c2v;
  Dense out_hidden, out_final;

  static GnnModel init(int var_dim, int con_dim, int hidden, std::uint64_t seed);
  static GnnModel zeros_like(const GnnModel& other);

  template <typename F>
  void visit(F&& f) {
    f("var_l1", var_l1);
    f("var_l2", var_l2);
    f("con_l1", con_l1);
    f("con_l2", con_l2);
    f("msg_v2c", msg_v2c);
    f("upd_v2c", upd_v2c);
    f("msg_c2v", msg_c2v);
    f("upd_c2v", upd_c2v);
    f("out_hidden", out_hidden);
    f("out_final", out_final);
  }
  template <typename F>
  void visit(F&& f) const {
    const_cast<GnnModel*>(this)->visit([&](const char* name, Dense& d) {
      f(name, static_cast<const Dense&>(d));
    });
  }

  long parameter_count() const;
};

/// Saved forward intermediates for the backward pass.
struct GnnCache {
  Eigen::MatrixXd v0, c0;
  Eigen::MatrixXd z1v, a1v, z2v, hv;
  Eigen::MatrixXd z1c, a1c, z2c, hc;
  Eigen::MatrixXd min1, zm1, m1, agg1, u1, zc2, hc2;
  Eigen::MatrixXd min2, zm2, m2, agg2, u2, zv2, hv2;
  Eigen::MatrixXd zo1, o1;
  Eigen::VectorXd out;
  double z = 0.0;
  double phi = 0.0;
};

double gnn_forward(const GnnModel& model, const feat::BipartiteState& s);
double gnn_forward(const GnnModel& model, const feat::BipartiteState& s, GnnCache& cache);

/// Exact reverse-mode gradients of loss_grad * d(phi)/d(theta).
GnnModel gnn_backward(const GnnModel& model, const feat::BipartiteState& s, const GnnCache& cache,
                      double loss_grad);
GnnModel gnn_backward(const GnnModel& model, const feat::BipartiteState& s, double loss_grad);

/// Plain gradient step: params <- params - lr * grads.
void sgd_step(GnnModel& params, const GnnModel& grads, double lr);

}  // namespace lbforge::nn
