/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lbforge/milp/instance.hpp"

namespace lbforge::milp {

enum class LpStatus : std::uint8_t {
  optimal,
  infeasible,
  unbounded,
  iteration_limit,
  numerical_error,
};

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::numerical_error;
  std::vector<double> x;  // structural values, length num_vars
  double objective = 0.0;
  long iterations = 0;
};

/// Simplex basis snapshot: which columns (structural then slack) are basic,
/// and which nonbasic columns rest at their upper bound.
struct Basis {
  std::vector<int> basic;
  std::vector<std::uint8_t> at_upper;

  bool empty() const { return basic.empty(); }
};

/// Bounded-variable primal revised simplex over [A | I] with an explicit
/// basis inverse, composite phase-1 handling of bound infeasibilities,
/// Dantzig pricing with a Bland's-rule fallback once a degeneracy stall is
/// detected, and periodic LU refactorization.
class SimplexSolver {
 public:
  explicit SimplexSolver(const MilpInstance& inst);

  /// Solves with the instance's own variable bounds.
  LpResult solve();

  /// Solves with overridden structural bounds (branch-and-bound nodes).
  /// `warm` seeds the starting basis when compatible; `basis_out`, when
  /// non-null, receives the final basis of an optimal solve.
  LpResult solve(std::span<const double> lb, std::span<const double> ub, const Basis* warm,
                 Basis* basis_out);

 private:
  struct Impl;
  const MilpInstance& inst_;
  // CSC copy of [A | I]
  int nrows_;
  int nstruct_;
  int ncols_;
  std::vector<int> col_start_;
  std::vector<int> col_row_;
  std::vector<double> col_val_;
};

/// LP relaxation of the instance (integrality dropped).
LpResult solve_lp_relaxation(const MilpInstance& inst);

}  // namespace lbforge::milp
