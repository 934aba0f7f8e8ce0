/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <string>
#include <vector>

#include "lbforge/milp/instance.hpp"

namespace lbforge::feat {

struct BipartiteEdge {
  int con = 0;
  int var = 0;
  double coef = 0.0;  // normalized per constraint
};

/// Bipartite constraint/variable graph of a MILP with an incumbent.
///
/// Constraint features (q = 1): bias, i.e. the right-hand side scaled by
/// the 2-norm of the row with the rhs appended. Edge feature (e = 1): the
/// coefficient under the same per-row scaling. Variable features (full
/// layout, d = 10): objective coefficient / max |c|, the four type
/// indicators (binary, integer, implied-integer, continuous), bound
/// indicators, bounds clipped to [-1e4, 1e4] and scaled by 1e-4, and the
/// incumbent value. The compact layout for pure-binary models keeps only
/// (coef, sol_val, in_support), d = 3.
struct BipartiteState {
  int num_cons = 0;
  int num_vars = 0;
  int con_dim = 1;
  int var_dim = 10;
  std::vector<double> con_feats;  // num_cons x con_dim, row-major
  std::vector<double> var_feats;  // num_vars x var_dim, row-major
  std::vector<BipartiteEdge> edges;
  std::vector<std::string> var_columns;
  std::vector<std::string> con_columns;

  double var_at(int j, int f) const { return var_feats[static_cast<std::size_t>(j) * var_dim + f]; }
  double con_at(int i, int f) const { return con_feats[static_cast<std::size_t>(i) * con_dim + f]; }
};

enum class FeatureLayout { full, compact };

BipartiteState extract_bipartite(const milp::MilpInstance& inst, const milp::Assignment& incumbent,
                                 FeatureLayout layout = FeatureLayout::full);

/// Tensor-container round trip for dataset files.
void write_bipartite(const BipartiteState& state, const std::string& path);
BipartiteState read_bipartite(const std::string& path);

}  // namespace lbforge::feat
