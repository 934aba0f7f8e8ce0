/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/lb/heuristic.hpp"

#include <exception>
#include <stdexcept>

#include "lbforge/util/log.hpp"

namespace lbforge::lb {

using milp::Assignment;
using milp::HeuristicContext;
using milp::MilpInstance;

milp::SolveResult run_as_primal_heuristic(const MilpInstance& inst,
                                          const PrimalHeuristicOptions& options,
                                          const LbRunner& lb_variant, const LbConfig& cfg,
                                          const milp::SolverLimits& limits,
                                          const milp::SolverOptions& solver_options) {
  if (!lb_variant) throw std::invalid_argument("primal heuristic: lb_variant is required");
  if (options.mode == HeuristicMode::every_f_nodes && options.f <= 0) {
    throw std::invalid_argument("primal heuristic: f must be positive");
  }

  bool fired = false;
  long long seen_version = 0;

  milp::HeuristicHook hook = [&](const HeuristicContext& ctx) -> std::optional<Assignment> {
    if (!ctx.incumbent) return std::nullopt;
    if (options.mode == HeuristicMode::root_only) {
      if (fired) return std::nullopt;
      fired = true;
    } else {
      if (ctx.nodes_processed % options.f != 0) return std::nullopt;
      if (ctx.incumbent_version == seen_version) return std::nullopt;
    }
    seen_version = ctx.incumbent_version;
    try {
      const LbRunRecord record = lb_variant(ctx.inst, *ctx.incumbent, cfg);
      if (!record.final_values.empty() &&
          record.final_obj < ctx.incumbent->objective) {
        return make_assignment(ctx.inst, record.final_values);
      }
    } catch (const std::exception& e) {
      LBFORGE_LOG_WARN("lb primal heuristic failed at node %lld: %s", ctx.nodes_processed,
                       e.what());
    }
    return std::nullopt;
  };

  return milp::solve_milp(inst, limits, std::nullopt, hook, solver_options);
}

}  // namespace lbforge::lb
