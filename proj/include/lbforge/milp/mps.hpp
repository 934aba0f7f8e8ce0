/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>
#include <string>

#include "lbforge/milp/instance.hpp"

namespace lbforge::milp {

struct MpsError : std::runtime_error {
  MpsError(const std::string& msg, int line)
      : std::runtime_error("mps:" + std::to_string(line) + ": " + msg), line_number(line) {}
  int line_number;
};

/// Reads the ROWS/COLUMNS/RHS/RANGES/BOUNDS subset (fixed or free format,
/// INTORG/INTEND markers, OBJSENSE). Maximization problems are normalized
/// to minimization by negating the objective.
MilpInstance read_mps(const std::string& path);

/// Writes free-format MPS with 17 significant digits so that a
/// write -> read round trip reproduces the instance exactly.
void write_mps(const MilpInstance& inst, const std::string& path);

}  // namespace lbforge::milp
