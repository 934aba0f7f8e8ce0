/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/bench/generate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "lbforge/util/rng.hpp"

namespace lbforge::bench {

using milp::MilpInstance;
using milp::RowSense;
using milp::VarKind;

Family family_from_string(const std::string& name) {
  if (name == "sc" || name == "set_covering") return Family::set_covering;
  if (name == "mis" || name == "max_independent_set") return Family::max_independent_set;
  if (name == "ca" || name == "combinatorial_auction") return Family::combinatorial_auction;
  if (name == "gisp-like" || name == "gisp_like") return Family::gisp_like;
  throw std::invalid_argument("unknown instance family '" + name + "'");
}

const char* to_string(Family family) {
  switch (family) {
    case Family::set_covering: return "sc";
    case Family::max_independent_set: return "mis";
    case Family::combinatorial_auction: return "ca";
    case Family::gisp_like: return "gisp-like";
  }
  return "unknown";
}

void GeneratorSpec::validate() const {
  switch (family) {
    case Family::set_covering:
      if (rows <= 0 || cols <= 1) throw std::invalid_argument("sc: need rows > 0, cols > 1");
      if (density <= 0.0 || density > 1.0) throw std::invalid_argument("sc: density in (0,1]");
      break;
    case Family::max_independent_set:
    case Family::gisp_like:
      if (nodes < 2 || attach < 1 || attach >= nodes) {
        throw std::invalid_argument("mis: need nodes >= 2 and 1 <= attach < nodes");
      }
      break;
    case Family::combinatorial_auction:
      if (items < 2 || bids <= 0) throw std::invalid_argument("ca: need items >= 2, bids > 0");
      break;
  }
}

namespace {

int draw_size(int base, int max, Rng& rng) {
  if (max <= base) return base;
  return base + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(max - base) + 1));
}

double draw_density(double base, double max, Rng& rng) {
  if (max <= base) return base;
  return rng.uniform(base, max);
}

double unit_cost(int levels, Rng& rng) {
  // strictly positive costs on a 1/levels grid within (0, 1]
  return static_cast<double>(1 + rng.uniform_int(static_cast<std::uint64_t>(levels))) /
         static_cast<double>(levels);
}

MilpInstance generate_set_covering(const GeneratorSpec& spec, Rng& rng) {
  const int rows = draw_size(spec.rows, spec.rows_max, rng);
  const int cols = draw_size(spec.cols, spec.cols_max, rng);
  const double density = draw_density(spec.density, spec.density_max, rng);
  std::vector<std::set<int>> row_cols(static_cast<std::size_t>(rows));
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      if (rng.bernoulli(density)) row_cols[i].insert(j);
    }
  }
  for (int i = 0; i < rows; ++i) {
    while (static_cast<int>(row_cols[i].size()) < 2) {
      row_cols[i].insert(rng.uniform_index(cols));
    }
  }

  MilpInstance inst = MilpInstance::create(cols, "sc");
  for (int j = 0; j < cols; ++j) {
    inst.objective[j] = unit_cost(spec.cost_levels, rng);
    inst.kind[j] = VarKind::binary;
    inst.lower[j] = 0.0;
    inst.upper[j] = 1.0;
  }
  for (int i = 0; i < rows; ++i) {
    std::vector<std::pair<int, double>> entries;
    entries.reserve(row_cols[i].size());
    for (int j : row_cols[i]) entries.emplace_back(j, 1.0);
    inst.add_constraint(entries, RowSense::ge, 1.0);
  }
  return inst;
}

/// Barabasi-Albert preferential attachment; returns the edge list.
std::vector<std::pair<int, int>> barabasi_albert(int nodes, int attach, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> endpoints;  // node repeated once per incident edge
  const int seed_nodes = attach + 1;
  for (int u = 0; u < seed_nodes; ++u) {
    for (int v = u + 1; v < seed_nodes; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  for (int u = seed_nodes; u < nodes; ++u) {
    std::set<int> targets;
    while (static_cast<int>(targets.size()) < attach) {
      const int pick = endpoints[rng.uniform_index(static_cast<int>(endpoints.size()))];
      targets.insert(pick);
    }
    for (int v : targets) {
      edges.emplace_back(v, u);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return edges;
}

MilpInstance generate_independent_set(const GeneratorSpec& spec, Rng& rng, bool weighted) {
  const int nodes = draw_size(spec.nodes, spec.nodes_max, rng);
  const auto edges = barabasi_albert(nodes, spec.attach, rng);
  MilpInstance inst = MilpInstance::create(nodes, weighted ? "gisp-like" : "mis");
  std::vector<int> degree(static_cast<std::size_t>(nodes), 0);
  for (const auto& [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  for (int v = 0; v < nodes; ++v) {
    // maximize profits, normalized to minimization; gisp-like profits grow
    // with vertex degree, which keeps the LP bound loose
    if (weighted) {
      inst.objective[v] = -(0.5 + 0.5 * degree[v]) * (0.9 + 0.2 * rng.uniform());
    } else {
      inst.objective[v] = -1.0;
    }
    inst.kind[v] = VarKind::binary;
    inst.lower[v] = 0.0;
    inst.upper[v] = 1.0;
  }
  for (const auto& [u, v] : edges) {
    inst.add_constraint({{u, 1.0}, {v, 1.0}}, RowSense::le, 1.0);
  }
  return inst;
}

MilpInstance generate_combinatorial_auction(const GeneratorSpec& spec, Rng& rng) {
  const int bids = draw_size(spec.bids, spec.bids_max, rng);
  MilpInstance inst = MilpInstance::create(bids, "ca");
  std::vector<std::vector<int>> item_bids(static_cast<std::size_t>(spec.items));
  for (int b = 0; b < bids; ++b) {
    const int size = 3 + static_cast<int>(rng.uniform_int(6));  // 3..8 items
    std::set<int> bundle;
    while (static_cast<int>(bundle.size()) < std::min(size, spec.items)) {
      bundle.insert(rng.uniform_index(spec.items));
    }
    for (int item : bundle) item_bids[item].push_back(b);
    // near-additive prices with small noise keep bids competitive
    const double price =
        std::pow(static_cast<double>(bundle.size()), 1.1) * (0.95 + 0.1 * rng.uniform());
    inst.objective[b] = -price;  // winner determination maximizes
    inst.kind[b] = VarKind::binary;
    inst.lower[b] = 0.0;
    inst.upper[b] = 1.0;
  }
  for (int item = 0; item < spec.items; ++item) {
    if (item_bids[item].empty()) continue;
    std::vector<std::pair<int, double>> entries;
    for (int b : item_bids[item]) entries.emplace_back(b, 1.0);
    inst.add_constraint(entries, RowSense::le, 1.0);
  }
  return inst;
}

}  // namespace

MilpInstance generate(const GeneratorSpec& spec) {
  spec.validate();
  Rng rng(spec.seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(spec.family));
  MilpInstance inst;
  switch (spec.family) {
    case Family::set_covering: inst = generate_set_covering(spec, rng); break;
    case Family::max_independent_set: inst = generate_independent_set(spec, rng, false); break;
    case Family::gisp_like: inst = generate_independent_set(spec, rng, true); break;
    case Family::combinatorial_auction: inst = generate_combinatorial_auction(spec, rng); break;
  }
  inst.name = std::string(to_string(spec.family)) + "-" + std::to_string(spec.seed);
  inst.validate();
  return inst;
}

}  // namespace lbforge::bench
