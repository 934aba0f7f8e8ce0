/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/lb/constraint.hpp"

#include <cmath>
#include <stdexcept>

namespace lbforge::lb {

using milp::MilpInstance;
using milp::RowSense;
using milp::VarKind;

const char* to_string(LbConstraintForm form) {
  return form == LbConstraintForm::symmetric ? "symmetric" : "asymmetric";
}

double hamming_delta(const MilpInstance& inst, std::span<const double> x,
                     const milp::Assignment& x_ref, LbConstraintForm form) {
  if (static_cast<int>(x.size()) != inst.num_vars ||
      static_cast<int>(x_ref.values.size()) != inst.num_vars) {
    throw std::invalid_argument("hamming_delta: vector length mismatch");
  }
  double delta = 0.0;
  for (int j = 0; j < inst.num_vars; ++j) {
    if (inst.kind[j] != VarKind::binary) continue;
    const bool in_support = x_ref.values[j] > 0.5;
    if (in_support) {
      delta += 1.0 - x[j];
    } else if (form == LbConstraintForm::symmetric) {
      delta += x[j];
    }
  }
  return delta;
}

long lb_radius(double k) {
  // tolerant floor so that radii reconstructed through float arithmetic
  // (e.g. phi * k') land on the intended integer
  return static_cast<long>(std::floor(k + 1e-9));
}

MilpInstance add_lb_constraint(const MilpInstance& inst, const milp::Assignment& x_ref, double k,
                               LbDirection direction, LbConstraintForm form) {
  if (k < 1.0) throw std::invalid_argument("add_lb_constraint: k must be >= 1");
  if (static_cast<int>(x_ref.values.size()) != inst.num_vars) {
    throw std::invalid_argument("add_lb_constraint: reference length mismatch");
  }
  MilpInstance out = inst;
  std::vector<std::pair<int, double>> entries;
  long support = 0;
  for (int j = 0; j < inst.num_vars; ++j) {
    if (inst.kind[j] != VarKind::binary) continue;
    const bool in_support = x_ref.values[j] > 0.5;
    if (in_support) {
      entries.emplace_back(j, -1.0);
      ++support;
    } else if (form == LbConstraintForm::symmetric) {
      entries.emplace_back(j, 1.0);
    }
  }
  const long radius = lb_radius(k);
  if (direction == LbDirection::left_leq) {
    out.add_constraint(entries, RowSense::le, static_cast<double>(radius - support));
  } else {
    out.add_constraint(entries, RowSense::ge, static_cast<double>(radius + 1 - support));
  }
  return out;
}

}  // namespace lbforge::lb
