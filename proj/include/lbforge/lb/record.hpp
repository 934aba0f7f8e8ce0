/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lbforge/lb/constraint.hpp"
#include "lbforge/milp/instance.hpp"
#include "lbforge/util/budget.hpp"

namespace lbforge::lb {

/// Result of one neighborhood exploration: the sub-MILP was solved to
/// optimality (with a strictly better solution), proven to hold no better
/// solution, or hit its limit with/without an improvement.
enum class LbIterationStatus : std::uint8_t { optimal, infeasible, improved, not_improved };

const char* to_string(LbIterationStatus status);

struct LbIterationOutcome {
  LbIterationStatus status = LbIterationStatus::not_improved;
  std::optional<milp::Assignment> new_incumbent;
  double elapsed = 0.0;          // budget units
  double obj_improvement = 0.0;  // max(0, prev_obj - new_obj)
  long long nodes = 0;
  bool error = false;  // a solver node failed inside the iteration
};

struct LbIterationRecord {
  double k = 0.0;  // integral neighborhood radius actually emitted
  double t = 0.0;  // per-iteration budget granted, budget units
  LbIterationOutcome outcome;
  double incumbent_obj = 0.0;   // after the iteration
  double elapsed_total = 0.0;   // after the iteration
};

/// Ball excluded by a reversed (right) constraint after recentering.
struct LbExclusion {
  std::vector<double> center;
  double radius = 0.0;
};

struct LbRunRecord {
  std::string algorithm = "lb-base";
  std::vector<LbIterationRecord> iterations;
  double t_max = 0.0;
  double initial_obj = 0.0;
  double final_obj = 0.0;
  double elapsed_total = 0.0;
  std::vector<double> final_values;  // empty when never improved
  std::vector<LbExclusion> exclusions;
};

struct LbConfig {
  double k0_default = 20.0;
  double node_time_limit_default = 10.0;  // t, budget units per iteration
  double global_time_limit = 60.0;        // t_max, budget units
  double k_step = 0.5;
  double t_step = 2.0;
  double t_min = 1.0;
  LbConstraintForm constraint_form = LbConstraintForm::symmetric;
  Budget budget = Budget::wall();
  long max_iterations = 10000;

  void validate() const;
};

/// JSON-lines serialization: a meta object first, one line per iteration.
std::string record_to_jsonl(const LbRunRecord& record);
LbRunRecord record_from_jsonl(const std::string& text);
void write_record(const LbRunRecord& record, const std::string& path);
LbRunRecord read_record(const std::string& path);

}  // namespace lbforge::lb
