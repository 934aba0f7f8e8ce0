/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <span>

#include "lbforge/milp/instance.hpp"

namespace lbforge::lb {

/// Symmetric counts flips in both directions over the binaries; asymmetric
/// only 1 -> 0 flips on the reference support (suited to solutions with a
/// small support).
enum class LbConstraintForm : std::uint8_t { symmetric, asymmetric };

const char* to_string(LbConstraintForm form);

enum class LbDirection : std::uint8_t { left_leq, right_geq };

/// Branching distance of x from the reference solution. Fractional x is
/// allowed (the LP relaxation distance k' uses it).
double hamming_delta(const milp::MilpInstance& inst, std::span<const double> x,
                     const milp::Assignment& x_ref, LbConstraintForm form);

/// Integral neighborhood radius actually emitted for a continuous k.
long lb_radius(double k);

/// Returns a copy of the instance with one extra row: distance <= k (left)
/// or distance >= k + 1 (right), the distance expanded over the binary
/// variables with the constant folded into the right-hand side.
milp::MilpInstance add_lb_constraint(const milp::MilpInstance& inst,
                                     const milp::Assignment& x_ref, double k,
                                     LbDirection direction,
                                     LbConstraintForm form = LbConstraintForm::symmetric);

}  // namespace lbforge::lb
