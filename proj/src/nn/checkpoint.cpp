/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/nn/checkpoint.hpp"

#include <stdexcept>

#include "lbforge/util/tensor_file.hpp"

namespace lbforge::nn {

namespace {

NamedTensor matrix_tensor(const std::string& name, const Eigen::MatrixXd& m) {
  NamedTensor t;
  t.name = name;
  t.shape = {m.rows(), m.cols()};
  t.data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) t.data.push_back(m(r, c));
  }
  return t;
}

NamedTensor vector_tensor(const std::string& name, const Eigen::VectorXd& v) {
  NamedTensor t;
  t.name = name;
  t.shape = {v.size()};
  t.data.assign(v.data(), v.data() + v.size());
  return t;
}

Eigen::MatrixXd tensor_matrix(const NamedTensor& t) {
  Eigen::MatrixXd m(t.shape.at(0), t.shape.at(1));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      m(r, c) = t.data[static_cast<std::size_t>(r) * m.cols() + c];
    }
  }
  return m;
}

Eigen::VectorXd tensor_vector(const NamedTensor& t) {
  return Eigen::Map<const Eigen::VectorXd>(t.data.data(), static_cast<long>(t.data.size()));
}

}  // namespace

void save_gnn(const GnnModel& model, const std::string& path, const nlohmann::json& meta) {
  TensorFile file;
  file.kind = "gnn_checkpoint";
  file.meta = meta;
  file.meta["var_dim"] = model.var_dim;
  file.meta["con_dim"] = model.con_dim;
  file.meta["edge_dim"] = model.edge_dim;
  file.meta["hidden"] = model.hidden;
  model.visit([&](const char* name, const Dense& d) {
    file.tensors.push_back(matrix_tensor(std::string(name) + ".W", d.W));
    file.tensors.push_back(vector_tensor(std::string(name) + ".b", d.b));
  });
  write_tensor_file(path, file);
}

GnnModel load_gnn(const std::string& path, nlohmann::json* meta) {
  const TensorFile file = read_tensor_file(path);
  if (file.kind != "gnn_checkpoint") {
    throw std::runtime_error("'" + path + "' is not a gnn checkpoint");
  }
  GnnModel model;
  model.var_dim = file.meta.at("var_dim").get<int>();
  model.con_dim = file.meta.at("con_dim").get<int>();
  model.edge_dim = file.meta.at("edge_dim").get<int>();
  model.hidden = file.meta.at("hidden").get<int>();
  model.visit([&](const char* name, Dense& d) {
    d.W = tensor_matrix(file.find(std::string(name) + ".W"));
    d.b = tensor_vector(file.find(std::string(name) + ".b"));
  });
  if (meta != nullptr) *meta = file.meta;
  return model;
}

void save_policy(const PolicyModel& model, const std::string& path, const nlohmann::json& meta) {
  TensorFile file;
  file.kind = "policy_checkpoint";
  file.meta = meta;
  file.tensors.push_back(matrix_tensor("weights", model.weights));
  file.tensors.push_back(vector_tensor("bias", model.bias));
  write_tensor_file(path, file);
}

PolicyModel load_policy(const std::string& path, nlohmann::json* meta) {
  const TensorFile file = read_tensor_file(path);
  if (file.kind != "policy_checkpoint") {
    throw std::runtime_error("'" + path + "' is not a policy checkpoint");
  }
  PolicyModel model;
  model.weights = tensor_matrix(file.find("weights"));
  model.bias = tensor_vector(file.find("bias"));
  if (model.weights.rows() != kPolicyActions || model.weights.cols() != feat::kRlStateDim) {
    throw std::runtime_error("'" + path + "': unexpected policy shape");
  }
  if (meta != nullptr) *meta = file.meta;
  return model;
}

nlohmann::json inspect_container(const std::string& path) {
  const TensorFile file = read_tensor_file(path);
  nlohmann::json out;
  out["kind"] = file.kind;
  out["meta"] = file.meta;
  auto& tensors = out["tensors"] = nlohmann::json::array();
  for (const auto& t : file.tensors) {
    tensors.push_back({{"name", t.name}, {"shape", t.shape}});
  }
  return out;
}

}  // namespace lbforge::nn
