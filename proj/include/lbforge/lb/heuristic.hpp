/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <functional>

#include "lbforge/lb/record.hpp"
#include "lbforge/milp/solver.hpp"

namespace lbforge::lb {

/// Any of the four LB runners, bound to its models and ready to refine an
/// incumbent on the given instance within cfg's budget.
using LbRunner = std::function<LbRunRecord(const milp::MilpInstance&, const milp::Assignment&,
                                           const LbConfig&)>;

enum class HeuristicMode : std::uint8_t { root_only, every_f_nodes };

struct PrimalHeuristicOptions {
  HeuristicMode mode = HeuristicMode::root_only;
  long long f = 100;  // node interval for every_f_nodes
};

/// Runs branch and bound with an LB refinement hook. root_only fires once,
/// at the node where the first incumbent appears; every_f_nodes fires at
/// every f-th processed node when a new incumbent has arrived since the
/// previous call. LB failures are logged and the solve continues.
milp::SolveResult run_as_primal_heuristic(const milp::MilpInstance& inst,
                                          const PrimalHeuristicOptions& options,
                                          const LbRunner& lb_variant, const LbConfig& cfg,
                                          const milp::SolverLimits& limits,
                                          const milp::SolverOptions& solver_options = {});

}  // namespace lbforge::lb
