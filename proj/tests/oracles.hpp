/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

// Test-only reference implementations, deliberately independent of the
// production solver code paths.

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "lbforge/milp/instance.hpp"
#include "lbforge/util/rng.hpp"

namespace lbforge::test {

struct BruteForceResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> values;
};

/// Exhaustive enumeration over all 0/1 assignments; instances must be pure
/// binary. Direct constraint evaluation, no solver machinery involved.
inline BruteForceResult brute_force_binary(const milp::MilpInstance& inst) {
  BruteForceResult best;
  const int n = inst.num_vars;
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  const long long total = 1LL << n;
  for (long long mask = 0; mask < total; ++mask) {
    for (int j = 0; j < n; ++j) x[j] = (mask >> j) & 1 ? 1.0 : 0.0;
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      if (x[j] < inst.lower[j] - 1e-9 || x[j] > inst.upper[j] + 1e-9) ok = false;
    }
    for (int i = 0; i < inst.num_cons && ok; ++i) {
      double lhs = 0.0;
      for (int p = inst.matrix.row_start[i]; p < inst.matrix.row_start[i + 1]; ++p) {
        lhs += inst.matrix.val[p] * x[inst.matrix.col[p]];
      }
      switch (inst.sense[i]) {
        case milp::RowSense::le: ok = lhs <= inst.rhs[i] + 1e-9; break;
        case milp::RowSense::ge: ok = lhs >= inst.rhs[i] - 1e-9; break;
        case milp::RowSense::eq: ok = std::abs(lhs - inst.rhs[i]) <= 1e-9; break;
      }
    }
    if (!ok) continue;
    double obj = 0.0;
    for (int j = 0; j < n; ++j) obj += inst.objective[j] * x[j];
    if (!best.feasible || obj < best.objective - 1e-12) {
      best.feasible = true;
      best.objective = obj;
      best.values = x;
    }
  }
  return best;
}

/// Textbook dense-tableau simplex with big-M artificials. Variable upper
/// bounds are expanded into explicit rows, so the algorithm differs from
/// the production bounded-variable code in both formulation and pivoting.
struct TableauLpResult {
  enum class Status { optimal, infeasible, unbounded } status = Status::infeasible;
  double objective = 0.0;
};

inline TableauLpResult tableau_simplex(const milp::MilpInstance& inst) {
  using Status = TableauLpResult::Status;
  const double kBigM = 1e8;
  // rows: original constraints plus one row per finite upper bound
  struct Row {
    std::vector<double> a;
    double b;
    milp::RowSense sense;
  };
  std::vector<Row> rows;
  const int n = inst.num_vars;
  for (int i = 0; i < inst.num_cons; ++i) {
    Row r{std::vector<double>(static_cast<std::size_t>(n), 0.0), inst.rhs[i], inst.sense[i]};
    for (int p = inst.matrix.row_start[i]; p < inst.matrix.row_start[i + 1]; ++p) {
      r.a[inst.matrix.col[p]] = inst.matrix.val[p];
    }
    rows.push_back(std::move(r));
  }
  for (int j = 0; j < n; ++j) {
    if (inst.lower[j] != 0.0) return TableauLpResult{};  // oracle handles x >= 0 only
    if (inst.upper[j] < milp::kInfinity) {
      Row r{std::vector<double>(static_cast<std::size_t>(n), 0.0), inst.upper[j], milp::RowSense::le};
      r.a[j] = 1.0;
      rows.push_back(std::move(r));
    }
  }
  const int m = static_cast<int>(rows.size());
  // columns: x (n), then one slack/surplus per inequality, then artificials
  int slack_count = 0;
  for (const Row& r : rows) {
    if (r.sense != milp::RowSense::eq) ++slack_count;
  }
  std::vector<int> artificial_rows;
  for (int i = 0; i < m; ++i) {
    double b = rows[i].b;
    if (b < 0.0) {
      for (double& v : rows[i].a) v = -v;
      rows[i].b = -b;
      rows[i].sense = rows[i].sense == milp::RowSense::le ? milp::RowSense::ge
                      : rows[i].sense == milp::RowSense::ge ? milp::RowSense::le
                                                            : milp::RowSense::eq;
    }
  }
  for (int i = 0; i < m; ++i) {
    if (rows[i].sense != milp::RowSense::le) artificial_rows.push_back(i);
  }
  const int total = n + slack_count + static_cast<int>(artificial_rows.size());
  std::vector<std::vector<double>> tab(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(total) + 1, 0.0));
  std::vector<double> cost(static_cast<std::size_t>(total), 0.0);
  std::vector<int> basis(static_cast<std::size_t>(m), -1);
  for (int j = 0; j < n; ++j) cost[j] = inst.objective[j];
  int slack_at = n;
  int art_at = n + slack_count;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab[i][j] = rows[i].a[j];
    tab[i][total] = rows[i].b;
    if (rows[i].sense == milp::RowSense::le) {
      tab[i][slack_at] = 1.0;
      basis[i] = slack_at++;
    } else if (rows[i].sense == milp::RowSense::ge) {
      tab[i][slack_at++] = -1.0;
      tab[i][art_at] = 1.0;
      cost[art_at] = kBigM;
      basis[i] = art_at++;
    } else {
      tab[i][art_at] = 1.0;
      cost[art_at] = kBigM;
      basis[i] = art_at++;
    }
  }

  for (long iter = 0; iter < 100000; ++iter) {
    // reduced costs via basis cost row
    std::vector<double> z(static_cast<std::size_t>(total), 0.0);
    for (int i = 0; i < m; ++i) {
      const double cb = cost[basis[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < total; ++j) z[j] += cb * tab[i][j];
    }
    int enter = -1;
    double best_red = -1e-7;
    for (int j = 0; j < total; ++j) {
      const double red = cost[j] - z[j];
      if (red < best_red) {
        best_red = red;
        enter = j;
      }
    }
    if (enter < 0) {
      double obj = 0.0;
      for (int i = 0; i < m; ++i) {
        if (basis[i] >= n + slack_count && tab[i][total] > 1e-6) {
          return TableauLpResult{Status::infeasible, 0.0};
        }
        if (basis[i] < n) obj += inst.objective[basis[i]] * tab[i][total];
      }
      return TableauLpResult{Status::optimal, obj};
    }
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (tab[i][enter] > 1e-9) {
        const double ratio = tab[i][total] / tab[i][enter];
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && leave >= 0 && basis[i] < basis[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return TableauLpResult{Status::unbounded, 0.0};
    const double pivot = tab[leave][enter];
    for (int j = 0; j <= total; ++j) tab[leave][j] /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double factor = tab[i][enter];
      if (factor == 0.0) continue;
      for (int j = 0; j <= total; ++j) tab[i][j] -= factor * tab[leave][j];
    }
    basis[leave] = enter;
  }
  return TableauLpResult{};
}

/// Random pure-binary instance built around a planted feasible point.
inline milp::MilpInstance random_binary_instance(int n, int m, Rng& rng) {
  milp::MilpInstance inst = milp::MilpInstance::create(n, "random-binary");
  for (int j = 0; j < n; ++j) {
    inst.kind[j] = milp::VarKind::binary;
    inst.lower[j] = 0.0;
    inst.upper[j] = 1.0;
    inst.objective[j] = static_cast<double>(static_cast<long>(rng.uniform_int(11)) - 5);
  }
  std::vector<double> planted(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) planted[j] = rng.bernoulli(0.5) ? 1.0 : 0.0;
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<int, double>> entries;
    double lhs = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!rng.bernoulli(0.6)) continue;
      const double coef = static_cast<double>(static_cast<long>(rng.uniform_int(9)) - 4);
      if (coef == 0.0) continue;
      entries.emplace_back(j, coef);
      lhs += coef * planted[j];
    }
    if (entries.empty()) continue;
    const int pick = rng.uniform_index(3);
    if (pick == 0) {
      inst.add_constraint(entries, milp::RowSense::le, lhs + static_cast<double>(rng.uniform_int(3)));
    } else if (pick == 1) {
      inst.add_constraint(entries, milp::RowSense::ge, lhs - static_cast<double>(rng.uniform_int(3)));
    } else {
      inst.add_constraint(entries, milp::RowSense::eq, lhs);
    }
  }
  return inst;
}

/// Random LP with nonnegative bounded variables (oracle-compatible form).
inline milp::MilpInstance random_lp_instance(int n, int m, Rng& rng) {
  milp::MilpInstance inst = milp::MilpInstance::create(n, "random-lp");
  for (int j = 0; j < n; ++j) {
    inst.kind[j] = milp::VarKind::continuous;
    inst.lower[j] = 0.0;
    inst.upper[j] = 1.0 + rng.uniform() * 9.0;
    inst.objective[j] = rng.uniform(-5.0, 5.0);
  }
  std::vector<double> interior(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) interior[j] = rng.uniform() * inst.upper[j];
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<int, double>> entries;
    double lhs = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!rng.bernoulli(0.7)) continue;
      const double coef = rng.uniform(-3.0, 3.0);
      entries.emplace_back(j, coef);
      lhs += coef * interior[j];
    }
    if (entries.empty()) continue;
    if (rng.bernoulli(0.5)) {
      inst.add_constraint(entries, milp::RowSense::le, lhs + rng.uniform() * 2.0);
    } else {
      inst.add_constraint(entries, milp::RowSense::ge, lhs - rng.uniform() * 2.0);
    }
  }
  return inst;
}

}  // namespace lbforge::test
