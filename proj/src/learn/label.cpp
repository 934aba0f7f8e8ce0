/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/learn/label.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "lbforge/lb/runner.hpp"
#include "lbforge/milp/simplex.hpp"
#include "lbforge/util/log.hpp"

namespace lbforge::learn {

namespace fs = std::filesystem;
using nlohmann::json;

std::optional<LabeledSample> generate_label(const milp::MilpInstance& inst,
                                            const milp::Assignment& incumbent,
                                            const lb::LbConfig& cfg, const LabelParams& params) {
  if (!incumbent.feasible) throw std::invalid_argument("generate_label: incumbent not feasible");
  if (params.resolution <= 0.0 || params.resolution >= 1.0) {
    throw std::invalid_argument("generate_label: resolution must be in (0,1)");
  }

  const milp::LpResult lp = milp::solve_lp_relaxation(inst);
  if (lp.status != milp::LpStatus::optimal) {
    LBFORGE_LOG_INFO("label: skipping %s (lp status %s)", inst.name.c_str(),
                     milp::to_string(lp.status));
    return std::nullopt;
  }
  const double k_prime = lb::hamming_delta(inst, lp.x, incumbent, cfg.constraint_form);
  if (k_prime <= milp::kIntTol) {
    LBFORGE_LOG_INFO("label: skipping %s (k' = 0)", inst.name.c_str());
    return std::nullopt;
  }

  struct GridEval {
    double elapsed = 0.0;
    double obj = 0.0;
    bool solved = false;
  };
  // identical integral radii reuse the same sub-solve
  std::map<long, GridEval> by_radius;

  struct GridPoint {
    double phi;
    long radius;
  };
  std::vector<GridPoint> grid;
  for (double phi = params.resolution; phi < 1.0 - 1e-12; phi += params.resolution) {
    grid.push_back(GridPoint{phi, lb::lb_radius(std::max(1.0, phi * k_prime))});
  }

  for (const GridPoint& p : grid) {
    if (by_radius.count(p.radius) != 0) continue;
    const lb::LbIterationOutcome outcome =
        lb::lb_iterate(inst, incumbent, static_cast<double>(p.radius), params.t_limit, cfg.budget,
                       cfg.constraint_form);
    GridEval eval;
    eval.elapsed = outcome.elapsed;
    eval.obj = outcome.new_incumbent ? outcome.new_incumbent->objective : incumbent.objective;
    eval.solved = outcome.status == lb::LbIterationStatus::optimal ||
                  outcome.status == lb::LbIterationStatus::infeasible;
    by_radius[p.radius] = eval;
  }

  double best_obj = incumbent.objective;
  double worst_obj = incumbent.objective;
  for (const auto& [radius, eval] : by_radius) {
    best_obj = std::min(best_obj, eval.obj);
    worst_obj = std::max(worst_obj, eval.obj);
  }

  LabeledSample sample;
  sample.state = feat::extract_bipartite(inst, incumbent);
  sample.k_prime = k_prime;
  sample.source = inst.name;
  sample.cost_curve.reserve(grid.size());
  for (const GridPoint& p : grid) {
    const GridEval& eval = by_radius.at(p.radius);
    CostCurvePoint point;
    point.phi = p.phi;
    point.solved = eval.solved;
    point.cost = cost_metric(eval.elapsed, params.t_limit, eval.obj, {best_obj, worst_obj},
                             params.cost);
    sample.cost_curve.push_back(point);
  }

  double min_cost = milp::kInfinity;
  for (const auto& point : sample.cost_curve) min_cost = std::min(min_cost, point.cost);
  // ties: largest solved phi at minimal cost, otherwise smallest phi
  int chosen = -1;
  for (int i = 0; i < static_cast<int>(sample.cost_curve.size()); ++i) {
    const auto& point = sample.cost_curve[i];
    if (point.cost > min_cost + 1e-12) continue;
    if (point.solved) chosen = i;  // grid is ordered by phi, keep the last solved
  }
  if (chosen < 0) {
    for (int i = 0; i < static_cast<int>(sample.cost_curve.size()); ++i) {
      if (sample.cost_curve[i].cost <= min_cost + 1e-12) {
        chosen = i;
        break;
      }
    }
  }
  sample.phi0_star = sample.cost_curve[chosen].phi;
  sample.k0_star = sample.phi0_star * k_prime;
  return sample;
}

void write_sample(const LabeledSample& sample, const std::string& dir, int index) {
  fs::create_directories(dir);
  char stem[32];
  std::snprintf(stem, sizeof stem, "%05d", index);
  feat::write_bipartite(sample.state, (fs::path(dir) / (std::string(stem) + ".state")).string());
  json j;
  j["k_prime"] = sample.k_prime;
  j["k0_star"] = sample.k0_star;
  j["phi0_star"] = sample.phi0_star;
  j["source"] = sample.source;
  auto& curve = j["cost_curve"] = json::array();
  for (const auto& p : sample.cost_curve) {
    curve.push_back({{"phi", p.phi}, {"cost", p.cost}, {"solved", p.solved}});
  }
  std::ofstream os(fs::path(dir) / (std::string(stem) + ".label.json"));
  if (!os) throw std::runtime_error("cannot write sample " + std::string(stem));
  os << j.dump(2) << "\n";
}

LabeledSample read_sample(const std::string& dir, int index) {
  char stem[32];
  std::snprintf(stem, sizeof stem, "%05d", index);
  LabeledSample sample;
  sample.state = feat::read_bipartite((fs::path(dir) / (std::string(stem) + ".state")).string());
  std::ifstream is(fs::path(dir) / (std::string(stem) + ".label.json"));
  if (!is) throw std::runtime_error("cannot read sample " + std::string(stem));
  json j = json::parse(is);
  sample.k_prime = j.at("k_prime").get<double>();
  sample.k0_star = j.at("k0_star").get<double>();
  sample.phi0_star = j.at("phi0_star").get<double>();
  sample.source = j.value("source", "");
  for (const auto& p : j.value("cost_curve", json::array())) {
    sample.cost_curve.push_back(CostCurvePoint{p.at("phi").get<double>(),
                                               p.at("cost").get<double>(),
                                               p.at("solved").get<bool>()});
  }
  return sample;
}

std::vector<LabeledSample> read_dataset(const std::string& dir) {
  std::vector<int> indices;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() >= 11 && name.substr(name.size() - 11) == ".label.json") {
      indices.push_back(std::stoi(name.substr(0, 5)));
    }
  }
  std::sort(indices.begin(), indices.end());
  std::vector<LabeledSample> samples;
  samples.reserve(indices.size());
  for (int i : indices) samples.push_back(read_sample(dir, i));
  return samples;
}

}  // namespace lbforge::learn
