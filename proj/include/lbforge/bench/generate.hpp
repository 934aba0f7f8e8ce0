/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <string>

#include "lbforge/milp/instance.hpp"

namespace lbforge::bench {

enum class Family : std::uint8_t {
  set_covering,
  max_independent_set,
  combinatorial_auction,
  gisp_like,  // weighted independent set stand-in, labelled as such
};

Family family_from_string(const std::string& name);
const char* to_string(Family family);

struct GeneratorSpec {
  Family family = Family::set_covering;
  int rows = 200;      // set covering
  int cols = 100;      // set covering
  double density = 0.1;
  int cost_levels = 100;  // SC costs live on a 1/cost_levels grid in (0,1]
  int nodes = 60;      // (weighted) independent set
  int attach = 3;      // preferential-attachment degree
  int items = 100;     // combinatorial auction
  int bids = 50;       // combinatorial auction
  std::uint64_t seed = 0;

  // optional upper ends for heterogeneous datasets: when max > base the
  // actual value is drawn uniformly from [base, max] per instance seed
  int rows_max = 0;
  int cols_max = 0;
  double density_max = 0.0;
  int nodes_max = 0;
  int bids_max = 0;

  void validate() const;
};

/// Seed-deterministic instance generation, normalized to minimization.
/// set_covering: min c x, A x >= 1, x binary, every row covered by >= 2
/// columns, unit-range costs. max_independent_set: edge constraints
/// x_u + x_v <= 1 on a Barabasi-Albert graph, unit profits.
/// combinatorial_auction: winner determination with item-disjointness
/// rows. gisp_like: independent set with random vertex profits.
milp::MilpInstance generate(const GeneratorSpec& spec);

}  // namespace lbforge::bench
