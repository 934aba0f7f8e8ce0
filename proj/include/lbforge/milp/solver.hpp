/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <functional>
#include <optional>

#include "lbforge/milp/instance.hpp"
#include "lbforge/milp/simplex.hpp"

namespace lbforge::milp {

struct HeuristicContext {
  const MilpInstance& inst;
  const std::optional<Assignment>& incumbent;
  long long nodes_processed = 0;
  /// Bumped every time a new incumbent is installed.
  long long incumbent_version = 0;
};

/// Called after each processed node; may return an improved solution to be
/// installed as the new incumbent (it is verified before installation).
using HeuristicHook = std::function<std::optional<Assignment>(const HeuristicContext&)>;

struct SolverOptions {
  /// Run the rounding dive at the root to produce an early incumbent.
  bool use_root_dive = true;
  /// Stop once this many incumbents have been installed.
  std::optional<long long> solution_limit;
};

/// LP-based branch and bound: most-fractional branching, best-bound node
/// selection with depth-first plunging, warm-started bounded simplex.
/// `status` is relative to `limits.objective_cutoff` when one is given
/// (infeasible then means "no solution strictly below the cutoff").
SolveResult solve_milp(const MilpInstance& inst, const SolverLimits& limits,
                       const std::optional<Assignment>& warm = std::nullopt,
                       const HeuristicHook& hook = nullptr, const SolverOptions& options = {});

/// Deterministic rounding dive from the LP optimum; used as the solver's
/// root heuristic and as a cheap standalone first-solution source.
std::optional<Assignment> dive_heuristic(const MilpInstance& inst);

}  // namespace lbforge::milp
