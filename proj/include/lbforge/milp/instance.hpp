/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace lbforge::milp {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-6;
constexpr double kIntTol = 1e-6;
constexpr double kGapTol = 1e-9;

enum class VarKind : std::uint8_t { binary, general_integer, continuous };
enum class RowSense : std::uint8_t { le, ge, eq };

/// Row-major sparse matrix. Entries within a row are kept sorted by column
/// and duplicate-free.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_start;  // size rows + 1
  std::vector<int> col;
  std::vector<double> val;

  SparseMatrix() : row_start{0} {}

  int nnz() const { return static_cast<int>(col.size()); }

  void add_row(const std::vector<std::pair<int, double>>& entries);

  /// y = A x for a dense x of length cols.
  std::vector<double> multiply(const std::vector<double>& x) const;
};

/// A 0-1 mixed-integer linear program, always stored in minimization form.
struct MilpInstance {
  std::string name = "milp";
  int num_vars = 0;
  int num_cons = 0;
  std::vector<double> objective;
  SparseMatrix matrix;
  std::vector<double> rhs;
  std::vector<RowSense> sense;
  std::vector<VarKind> kind;
  std::vector<double> lower;
  std::vector<double> upper;

  static MilpInstance create(int num_vars, const std::string& name = "milp");

  /// Appends one variable, returns its index.
  int add_variable(double obj, VarKind kind, double lb, double ub);
  /// Appends one constraint row, returns its index.
  int add_constraint(const std::vector<std::pair<int, double>>& entries, RowSense sense, double rhs);

  std::vector<int> binary_indices() const;
  bool pure_binary() const;

  /// Throws std::invalid_argument when a structural invariant is broken
  /// (binary bounds not within [0,1], non-finite coefficients, bad shapes).
  void validate() const;
};

/// A solution vector together with its derived summary fields.
struct Assignment {
  std::vector<double> values;
  double objective = 0.0;
  bool feasible = false;
  std::vector<int> binary_support;  // j in B with x_j = 1
};

struct FeasibilityReport {
  bool feasible = false;
  double worst_violation = 0.0;
};

/// Constraint + bound + integrality check against kFeasTol / kIntTol.
FeasibilityReport check_feasibility(const MilpInstance& inst, const std::vector<double>& x);

double objective_value(const MilpInstance& inst, const std::vector<double>& x);

/// Builds an Assignment from raw values, computing objective, feasibility
/// and binary support.
Assignment make_assignment(const MilpInstance& inst, std::vector<double> values);

enum class SolveStatus : std::uint8_t {
  optimal,
  feasible_limit_hit,
  infeasible,
  no_solution_limit_hit,
};

const char* to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::no_solution_limit_hit;
  std::optional<Assignment> best;
  double elapsed = 0.0;  // wall seconds
  long long nodes = 0;
  double bound = -kInfinity;
  long long node_errors = 0;
};

struct SolverLimits {
  double time_limit = kInfinity;  // wall seconds
  std::optional<long long> node_limit;
  std::optional<double> objective_cutoff;  // prune nodes with bound >= cutoff
};

}  // namespace lbforge::milp
