/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/nn/gnn.hpp"

#include <stdexcept>

namespace lbforge::nn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

GnnModel GnnModel::init(int var_dim, int con_dim, int hidden, std::uint64_t seed) {
  Rng rng(seed);
  GnnModel m;
  m.var_dim = var_dim;
  m.con_dim = con_dim;
  m.edge_dim = 1;
  m.hidden = hidden;
  const int h = hidden;
  m.var_l1 = Dense::uniform(h, var_dim, rng);
  m.var_l2 = Dense::uniform(h, h, rng);
  m.con_l1 = Dense::uniform(h, con_dim, rng);
  m.con_l2 = Dense::uniform(h, h, rng);
  m.msg_v2c = Dense::uniform(h, 2 * h + m.edge_dim, rng);
  m.upd_v2c = Dense::uniform(h, 2 * h, rng);
  m.msg_c2v = Dense::uniform(h, 2 * h + m.edge_dim, rng);
  m.upd_c2v = Dense::uniform(h, 2 * h, rng);
  m.out_hidden = Dense::uniform(h, h, rng);
  m.out_final = Dense::uniform(1, h, rng);
  return m;
}

GnnModel GnnModel::zeros_like(const GnnModel& other) {
  GnnModel g = other;
  g.visit([](const char*, Dense& d) {
    d.W.setZero();
    d.b.setZero();
  });
  return g;
}

long GnnModel::parameter_count() const {
  long n = 0;
  visit([&](const char*, const Dense& d) { n += d.W.size() + d.b.size(); });
  return n;
}

namespace {

void check_dims(const GnnModel& model, const feat::BipartiteState& s) {
  if (s.var_dim != model.var_dim || s.con_dim != model.con_dim) {
    throw std::invalid_argument("gnn: state feature dimensions do not match the model");
  }
  if (s.num_vars <= 0) throw std::invalid_argument("gnn: state has no variable nodes");
}

MatrixXd to_matrix(const std::vector<double>& data, int rows, int cols) {
  MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = data[static_cast<std::size_t>(r) * cols + c];
  }
  return m;
}

}  // namespace

double gnn_forward(const GnnModel& model, const feat::BipartiteState& s, GnnCache& k) {
  check_dims(model, s);
  const int n = s.num_vars;
  const int m = std::max(s.num_cons, 0);
  const int h = model.hidden;
  const int ne = static_cast<int>(s.edges.size());

  k.v0 = to_matrix(s.var_feats, n, s.var_dim);
  k.c0 = to_matrix(s.con_feats, m, s.con_dim);

  k.z1v = model.var_l1.apply(k.v0);
  k.a1v = relu(k.z1v);
  k.z2v = model.var_l2.apply(k.a1v);
  k.hv = relu(k.z2v);

  k.z1c = model.con_l1.apply(k.c0);
  k.a1c = relu(k.z1c);
  k.z2c = model.con_l2.apply(k.a1c);
  k.hc = relu(k.z2c);

  // variable -> constraint half-layer
  k.min1.resize(ne, 2 * h + 1);
  for (int e = 0; e < ne; ++e) {
    k.min1.block(e, 0, 1, h) = k.hc.row(s.edges[e].con);
    k.min1.block(e, h, 1, h) = k.hv.row(s.edges[e].var);
    k.min1(e, 2 * h) = s.edges[e].coef;
  }
  k.zm1 = model.msg_v2c.apply(k.min1);
  k.m1 = relu(k.zm1);
  k.agg1 = MatrixXd::Zero(m, h);
  for (int e = 0; e < ne; ++e) k.agg1.row(s.edges[e].con) += k.m1.row(e);
  k.u1.resize(m, 2 * h);
  k.u1 << k.hc, k.agg1;
  k.zc2 = model.upd_v2c.apply(k.u1);
  k.hc2 = relu(k.zc2);

  // constraint -> variable half-layer
  k.min2.resize(ne, 2 * h + 1);
  for (int e = 0; e < ne; ++e) {
    k.min2.block(e, 0, 1, h) = k.hv.row(s.edges[e].var);
    k.min2.block(e, h, 1, h) = k.hc2.row(s.edges[e].con);
    k.min2(e, 2 * h) = s.edges[e].coef;
  }
  k.zm2 = model.msg_c2v.apply(k.min2);
  k.m2 = relu(k.zm2);
  k.agg2 = MatrixXd::Zero(n, h);
  for (int e = 0; e < ne; ++e) k.agg2.row(s.edges[e].var) += k.m2.row(e);
  k.u2.resize(n, 2 * h);
  k.u2 << k.hv, k.agg2;
  k.zv2 = model.upd_c2v.apply(k.u2);
  k.hv2 = relu(k.zv2);

  // output head, mean pooling over variable nodes, sigmoid
  k.zo1 = model.out_hidden.apply(k.hv2);
  k.o1 = relu(k.zo1);
  k.out = model.out_final.apply(k.o1).col(0);
  k.z = k.out.mean();
  k.phi = sigmoid(k.z);
  return k.phi;
}

double gnn_forward(const GnnModel& model, const feat::BipartiteState& s) {
  GnnCache cache;
  return gnn_forward(model, s, cache);
}

GnnModel gnn_backward(const GnnModel& model, const feat::BipartiteState& s, const GnnCache& k,
                      double loss_grad) {
  const int n = s.num_vars;
  const int h = model.hidden;
  const int ne = static_cast<int>(s.edges.size());
  GnnModel g = GnnModel::zeros_like(model);

  const double dz = loss_grad * k.phi * (1.0 - k.phi);
  VectorXd dout = VectorXd::Constant(n, dz / static_cast<double>(n));

  MatrixXd do1;
  dense_backward(model.out_final, k.o1, dout, g.out_final, &do1);
  MatrixXd dzo1 = relu_backward(k.zo1, do1);
  MatrixXd dhv2;
  dense_backward(model.out_hidden, k.hv2, dzo1, g.out_hidden, &dhv2);

  MatrixXd dzv2 = relu_backward(k.zv2, dhv2);
  MatrixXd du2;
  dense_backward(model.upd_c2v, k.u2, dzv2, g.upd_c2v, &du2);
  MatrixXd dhv = du2.leftCols(h);
  MatrixXd dagg2 = du2.rightCols(h);

  MatrixXd dm2(ne, h);
  for (int e = 0; e < ne; ++e) dm2.row(e) = dagg2.row(s.edges[e].var);
  MatrixXd dzm2 = relu_backward(k.zm2, dm2);
  MatrixXd dmin2;
  dense_backward(model.msg_c2v, k.min2, dzm2, g.msg_c2v, &dmin2);
  MatrixXd dhc2 = MatrixXd::Zero(k.hc2.rows(), h);
  for (int e = 0; e < ne; ++e) {
    dhv.row(s.edges[e].var) += dmin2.block(e, 0, 1, h);
    dhc2.row(s.edges[e].con) += dmin2.block(e, h, 1, h);
  }

  MatrixXd dzc2 = relu_backward(k.zc2, dhc2);
  MatrixXd du1;
  dense_backward(model.upd_v2c, k.u1, dzc2, g.upd_v2c, &du1);
  MatrixXd dhc = du1.leftCols(h);
  MatrixXd dagg1 = du1.rightCols(h);

  MatrixXd dm1(ne, h);
  for (int e = 0; e < ne; ++e) dm1.row(e) = dagg1.row(s.edges[e].con);
  MatrixXd dzm1 = relu_backward(k.zm1, dm1);
  MatrixXd dmin1;
  dense_backward(model.msg_v2c, k.min1, dzm1, g.msg_v2c, &dmin1);
  for (int e = 0; e < ne; ++e) {
    dhc.row(s.edges[e].con) += dmin1.block(e, 0, 1, h);
    dhv.row(s.edges[e].var) += dmin1.block(e, h, 1, h);
  }

  MatrixXd dz2v = relu_backward(k.z2v, dhv);
  MatrixXd da1v;
  dense_backward(model.var_l2, k.a1v, dz2v, g.var_l2, &da1v);
  MatrixXd dz1v = relu_backward(k.z1v, da1v);
  dense_backward(model.var_l1, k.v0, dz1v, g.var_l1, nullptr);

  MatrixXd dz2c = relu_backward(k.z2c, dhc);
  MatrixXd da1c;
  dense_backward(model.con_l2, k.a1c, dz2c, g.con_l2, &da1c);
  MatrixXd dz1c = relu_backward(k.z1c, da1c);
  dense_backward(model.con_l1, k.c0, dz1c, g.con_l1, nullptr);

  return g;
}

GnnModel gnn_backward(const GnnModel& model, const feat::BipartiteState& s, double loss_grad) {
  GnnCache cache;
  gnn_forward(model, s, cache);
  return gnn_backward(model, s, cache, loss_grad);
}

void sgd_step(GnnModel& params, const GnnModel& grads, double lr) {
  auto step = [lr](Dense& p, const Dense& g) {
    p.W.noalias() -= lr * g.W;
    p.b.noalias() -= lr * g.b;
  };
  step(params.var_l1, grads.var_l1);
  step(params.var_l2, grads.var_l2);
  step(params.con_l1, grads.con_l1);
  step(params.con_l2, grads.con_l2);
  step(params.msg_v2c, grads.msg_v2c);
  step(params.upd_v2c, grads.upd_v2c);
  step(params.msg_c2v, grads.msg_c2v);
  step(params.upd_c2v, grads.upd_c2v);
  step(params.out_hidden, grads.out_hidden);
  step(params.out_final, grads.out_final);
}

}  // namespace lbforge::nn
