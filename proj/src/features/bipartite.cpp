/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/features/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lbforge/util/tensor_file.hpp"

namespace lbforge::feat {

using milp::MilpInstance;
using milp::VarKind;

namespace {
constexpr double kBoundClip = 1e4;

double clip_bound(double v) {
  if (v >= milp::kInfinity) return 0.0;   // open bound carries no magnitude
  if (v <= -milp::kInfinity) return 0.0;
  return std::clamp(v, -kBoundClip, kBoundClip) / kBoundClip;
}
}  // namespace

BipartiteState extract_bipartite(const MilpInstance& inst, const milp::Assignment& incumbent,
                                 FeatureLayout layout) {
  if (static_cast<int>(incumbent.values.size()) != inst.num_vars) {
    throw std::invalid_argument("extract_bipartite: incumbent length mismatch");
  }
  if (layout == FeatureLayout::compact && !inst.pure_binary()) {
    throw std::invalid_argument("extract_bipartite: compact layout needs a pure-binary model");
  }

  BipartiteState s;
  s.num_cons = inst.num_cons;
  s.num_vars = inst.num_vars;
  s.con_dim = 1;
  s.con_columns = {"bias"};

  double max_obj = 0.0;
  for (double c : inst.objective) max_obj = std::max(max_obj, std::abs(c));
  if (max_obj == 0.0) max_obj = 1.0;

  // per-row scaling: 2-norm of the coefficients with the rhs appended
  s.con_feats.resize(static_cast<std::size_t>(inst.num_cons));
  std::vector<double> row_scale(static_cast<std::size_t>(inst.num_cons), 1.0);
  for (int i = 0; i < inst.num_cons; ++i) {
    double sq = inst.rhs[i] * inst.rhs[i];
    for (int p = inst.matrix.row_start[i]; p < inst.matrix.row_start[i + 1]; ++p) {
      sq += inst.matrix.val[p] * inst.matrix.val[p];
    }
    row_scale[i] = sq > 0.0 ? std::sqrt(sq) : 1.0;
    s.con_feats[i] = inst.rhs[i] / row_scale[i];
  }

  s.edges.reserve(static_cast<std::size_t>(inst.matrix.nnz()));
  for (int i = 0; i < inst.num_cons; ++i) {
    for (int p = inst.matrix.row_start[i]; p < inst.matrix.row_start[i + 1]; ++p) {
      s.edges.push_back(BipartiteEdge{i, inst.matrix.col[p], inst.matrix.val[p] / row_scale[i]});
    }
  }

  if (layout == FeatureLayout::full) {
    s.var_dim = 10;
    s.var_columns = {"coef", "binary", "integer", "imp_integer", "continuous",
                     "has_lb", "has_ub", "lb", "ub", "sol_val"};
    s.var_feats.assign(static_cast<std::size_t>(inst.num_vars) * 10, 0.0);
    for (int j = 0; j < inst.num_vars; ++j) {
      double* f = &s.var_feats[static_cast<std::size_t>(j) * 10];
      f[0] = inst.objective[j] / max_obj;
      f[1] = inst.kind[j] == VarKind::binary ? 1.0 : 0.0;
      f[2] = inst.kind[j] == VarKind::general_integer ? 1.0 : 0.0;
      f[3] = 0.0;  // implied integers are never produced by this model
      f[4] = inst.kind[j] == VarKind::continuous ? 1.0 : 0.0;
      f[5] = inst.lower[j] > -milp::kInfinity ? 1.0 : 0.0;
      f[6] = inst.upper[j] < milp::kInfinity ? 1.0 : 0.0;
      f[7] = clip_bound(inst.lower[j]);
      f[8] = clip_bound(inst.upper[j]);
      f[9] = incumbent.values[j];
    }
  } else {
    s.var_dim = 3;
    s.var_columns = {"coef", "sol_val", "in_support"};
    s.var_feats.assign(static_cast<std::size_t>(inst.num_vars) * 3, 0.0);
    for (int j = 0; j < inst.num_vars; ++j) {
      double* f = &s.var_feats[static_cast<std::size_t>(j) * 3];
      f[0] = inst.objective[j] / max_obj;
      f[1] = incumbent.values[j];
      f[2] = incumbent.values[j] > 0.5 ? 1.0 : 0.0;
    }
  }
  return s;
}

void write_bipartite(const BipartiteState& state, const std::string& path) {
  TensorFile file;
  file.kind = "bipartite_state";
  file.meta["var_columns"] = state.var_columns;
  file.meta["con_columns"] = state.con_columns;
  file.tensors.push_back(
      NamedTensor{"con_feats", {state.num_cons, state.con_dim}, state.con_feats});
  file.tensors.push_back(
      NamedTensor{"var_feats", {state.num_vars, state.var_dim}, state.var_feats});
  NamedTensor edges{"edges", {static_cast<long>(state.edges.size()), 3}, {}};
  edges.data.reserve(state.edges.size() * 3);
  for (const auto& e : state.edges) {
    edges.data.push_back(static_cast<double>(e.con));
    edges.data.push_back(static_cast<double>(e.var));
    edges.data.push_back(e.coef);
  }
  file.tensors.push_back(std::move(edges));
  write_tensor_file(path, file);
}

BipartiteState read_bipartite(const std::string& path) {
  const TensorFile file = read_tensor_file(path);
  if (file.kind != "bipartite_state") {
    throw std::runtime_error("'" + path + "' is not a bipartite state file");
  }
  BipartiteState s;
  const NamedTensor& con = file.find("con_feats");
  const NamedTensor& var = file.find("var_feats");
  const NamedTensor& edges = file.find("edges");
  s.num_cons = static_cast<int>(con.shape.at(0));
  s.con_dim = static_cast<int>(con.shape.at(1));
  s.num_vars = static_cast<int>(var.shape.at(0));
  s.var_dim = static_cast<int>(var.shape.at(1));
  s.con_feats = con.data;
  s.var_feats = var.data;
  s.var_columns = file.meta.value("var_columns", std::vector<std::string>{});
  s.con_columns = file.meta.value("con_columns", std::vector<std::string>{});
  for (long r = 0; r < edges.shape.at(0); ++r) {
    s.edges.push_back(BipartiteEdge{static_cast<int>(edges.data[3 * r]),
                                    static_cast<int>(edges.data[3 * r + 1]),
                                    edges.data[3 * r + 2]});
  }
  return s;
}

}  // namespace lbforge::feat
