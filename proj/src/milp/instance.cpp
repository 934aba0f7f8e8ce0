/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/milp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lbforge::milp {

void SparseMatrix::add_row(const std::vector<std::pair<int, double>>& entries) {
  std::map<int, double> merged;
  for (const auto& [c, v] : entries) {
    if (c < 0 || c >= cols) throw std::invalid_argument("sparse row: column out of range");
    merged[c] += v;
  }
  for (const auto& [c, v] : merged) {
    if (v == 0.0) continue;
    col.push_back(c);
    val.push_back(v);
  }
  ++rows;
  row_start.push_back(nnz());
}

std::vector<double> SparseMatrix::multiply(const std::vector<double>& x) const {
  std::vector<double> y(static_cast<std::size_t>(rows), 0.0);
  for (int i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (int p = row_start[i]; p < row_start[i + 1]; ++p) acc += val[p] * x[col[p]];
    y[i] = acc;
  }
  return y;
}

MilpInstance MilpInstance::create(int num_vars, const std::string& name) {
  MilpInstance inst;
  inst.name = name;
  inst.num_vars = num_vars;
  inst.objective.assign(num_vars, 0.0);
  inst.kind.assign(num_vars, VarKind::continuous);
  inst.lower.assign(num_vars, 0.0);
  inst.upper.assign(num_vars, kInfinity);
  inst.matrix.cols = num_vars;
  return inst;
}

int MilpInstance::add_variable(double obj, VarKind k, double lb, double ub) {
  objective.push_back(obj);
  kind.push_back(k);
  lower.push_back(lb);
  upper.push_back(ub);
  ++num_vars;
  ++matrix.cols;
  return num_vars - 1;
}

int MilpInstance::add_constraint(const std::vector<std::pair<int, double>>& entries,
                                 RowSense row_sense, double row_rhs) {
  matrix.add_row(entries);
  sense.push_back(row_sense);
  rhs.push_back(row_rhs);
  ++num_cons;
  return num_cons - 1;
}

std::vector<int> MilpInstance::binary_indices() const {
  std::vector<int> out;
  for (int j = 0; j < num_vars; ++j) {
    if (kind[j] == VarKind::binary) out.push_back(j);
  }
  return out;
}

bool MilpInstance::pure_binary() const {
  return std::all_of(kind.begin(), kind.end(), [](VarKind k) { return k == VarKind::binary; });
}

void MilpInstance::validate() const {
  if (num_vars != static_cast<int>(objective.size()) || num_vars != static_cast<int>(kind.size()) ||
      num_vars != static_cast<int>(lower.size()) || num_vars != static_cast<int>(upper.size())) {
    throw std::invalid_argument("instance: variable array sizes disagree");
  }
  if (num_cons != matrix.rows || num_cons != static_cast<int>(rhs.size()) ||
      num_cons != static_cast<int>(sense.size())) {
    throw std::invalid_argument("instance: constraint array sizes disagree");
  }
  if (matrix.cols != num_vars) throw std::invalid_argument("instance: matrix width mismatch");
  for (int j = 0; j < num_vars; ++j) {
    if (!std::isfinite(objective[j])) throw std::invalid_argument("instance: non-finite objective");
    if (lower[j] > upper[j]) throw std::invalid_argument("instance: crossed bounds");
    if (kind[j] == VarKind::binary && (lower[j] < 0.0 || upper[j] > 1.0)) {
      throw std::invalid_argument("instance: binary variable with bounds outside [0,1]");
    }
  }
  for (int i = 0; i < matrix.rows; ++i) {
    int prev = -1;
    for (int p = matrix.row_start[i]; p < matrix.row_start[i + 1]; ++p) {
      if (!std::isfinite(matrix.val[p])) throw std::invalid_argument("instance: non-finite coefficient");
      if (matrix.col[p] <= prev) throw std::invalid_argument("instance: unsorted or duplicate entries");
      prev = matrix.col[p];
    }
    if (!std::isfinite(rhs[i])) throw std::invalid_argument("instance: non-finite rhs");
  }
}

FeasibilityReport check_feasibility(const MilpInstance& inst, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != inst.num_vars) {
    throw std::invalid_argument("check_feasibility: vector length mismatch");
  }
  double worst = 0.0;
  for (int j = 0; j < inst.num_vars; ++j) {
    if (inst.lower[j] > -kInfinity) worst = std::max(worst, inst.lower[j] - x[j]);
    if (inst.upper[j] < kInfinity) worst = std::max(worst, x[j] - inst.upper[j]);
    if (inst.kind[j] != VarKind::continuous) {
      worst = std::max(worst, std::abs(x[j] - std::round(x[j])));
    }
  }
  const std::vector<double> ax = inst.matrix.multiply(x);
  for (int i = 0; i < inst.num_cons; ++i) {
    const double lhs = ax[i];
    switch (inst.sense[i]) {
      case RowSense::le: worst = std::max(worst, lhs - inst.rhs[i]); break;
      case RowSense::ge: worst = std::max(worst, inst.rhs[i] - lhs); break;
      case RowSense::eq: worst = std::max(worst, std::abs(lhs - inst.rhs[i])); break;
    }
  }
  return FeasibilityReport{worst <= kFeasTol, worst};
}

double objective_value(const MilpInstance& inst, const std::vector<double>& x) {
  double acc = 0.0;
  for (int j = 0; j < inst.num_vars; ++j) acc += inst.objective[j] * x[j];
  return acc;
}

Assignment make_assignment(const MilpInstance& inst, std::vector<double> values) {
  Assignment a;
  a.objective = objective_value(inst, values);
  a.feasible = check_feasibility(inst, values).feasible;
  for (int j = 0; j < inst.num_vars; ++j) {
    if (inst.kind[j] == VarKind::binary && values[j] > 0.5) a.binary_support.push_back(j);
  }
  a.values = std::move(values);
  return a;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible_limit_hit: return "feasible_limit_hit";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::no_solution_limit_hit: return "no_solution_limit_hit";
  }
  return "unknown";
}

}  // namespace lbforge::milp
