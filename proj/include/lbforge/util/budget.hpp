/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <cstdint>

namespace lbforge {

/// How "time" is metered. Wall-clock budgets match production use; node
/// budgets make every limit-sensitive run bit-reproducible, with one unit
/// standing in for one second (`nodes_per_unit` branch-and-bound nodes).
enum class BudgetKind : std::uint8_t { wall_clock, node_count };

struct Budget {
  BudgetKind kind = BudgetKind::wall_clock;
  double nodes_per_unit = 25.0;

  static Budget wall() { return Budget{BudgetKind::wall_clock, 0.0}; }
  static Budget nodes(double per_unit) { return Budget{BudgetKind::node_count, per_unit}; }

  bool deterministic() const { return kind == BudgetKind::node_count; }

  /// Node allowance for a sub-solve of `units` budget units.
  long long node_limit_for(double units) const {
    double n = std::ceil(units * nodes_per_unit - 1e-9);
    return n < 1.0 ? 1 : static_cast<long long>(n);
  }

  /// Budget units charged for a sub-solve that consumed `nodes` nodes.
  double units_for_nodes(long long nodes) const {
    return static_cast<double>(nodes) / nodes_per_unit;
  }
};

}  // namespace lbforge
