/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <thread>

#include "lbforge/lb/runner.hpp"
#include "lbforge/milp/mps.hpp"
#include "lbforge/milp/solver.hpp"
#include "lbforge/nn/checkpoint.hpp"
#include "lbforge/util/log.hpp"

namespace lbforge::bench {

namespace fs = std::filesystem;
using milp::Assignment;
using milp::MilpInstance;

InitMode init_mode_from_string(const std::string& name) {
  if (name == "first") return InitMode::first;
  if (name == "root") return InitMode::root;
  throw std::invalid_argument("unknown init mode '" + name + "'");
}

const char* to_string(InitMode mode) { return mode == InitMode::first ? "first" : "root"; }

namespace {

struct PreparedInstance {
  std::string path;
  MilpInstance inst;
  Assignment initial;
  double opt_obj = 0.0;
};

struct LoadedModels {
  std::optional<nn::GnnModel> reg_sr;
  std::optional<nn::GnnModel> reg_srm;
  std::optional<nn::PolicyModel> pi_k;
  std::optional<nn::PolicyModel> pi_t;
};

bool needs_key(const std::vector<std::string>& algorithms, const char* algo) {
  return std::find(algorithms.begin(), algorithms.end(), algo) != algorithms.end();
}

LoadedModels load_models(const ExperimentConfig& config) {
  LoadedModels models;
  auto path_of = [&](const char* key) {
    auto it = config.model_paths.find(key);
    if (it == config.model_paths.end()) {
      throw std::invalid_argument(std::string("bench: missing model path '") + key + "'");
    }
    return it->second;
  };
  const auto& algos = config.algorithms;
  if (needs_key(algos, "lb-sr")) models.reg_sr = nn::load_gnn(path_of("reg_sr"));
  if (needs_key(algos, "lb-srm") || needs_key(algos, "lb-srmrl") ||
      needs_key(algos, "lb-srmrl-adapt-t")) {
    models.reg_srm = nn::load_gnn(path_of("reg_srm"));
  }
  if (needs_key(algos, "lb-rl") || needs_key(algos, "lb-srmrl") ||
      needs_key(algos, "lb-srmrl-adapt-t")) {
    models.pi_k = nn::load_policy(path_of("pi_k"));
  }
  if (needs_key(algos, "lb-srmrl-adapt-t")) models.pi_t = nn::load_policy(path_of("pi_t"));
  return models;
}

std::optional<Assignment> initial_solution(const MilpInstance& inst, InitMode mode,
                                           long long root_budget) {
  milp::SolverLimits limits;
  milp::SolverOptions options;
  if (mode == InitMode::first) {
    options.use_root_dive = false;
    options.solution_limit = 1;
  } else {
    options.use_root_dive = true;
    limits.node_limit = root_budget;
  }
  const milp::SolveResult result = milp::solve_milp(inst, limits, std::nullopt, nullptr, options);
  return result.best;
}

lb::LbRunRecord dispatch_run(const std::string& algorithm, const PreparedInstance& prepared,
                             const lb::LbConfig& cfg, const LoadedModels& models, Rng& rng) {
  auto reg_fn = [](const nn::GnnModel* model) {
    return [model](const feat::BipartiteState& s) { return nn::gnn_forward(*model, s); };
  };
  if (algorithm == "lb-base") {
    return lb::run_lb_baseline(prepared.inst, prepared.initial, cfg);
  }
  if (algorithm == "lb-sr") {
    return lb::run_lb_with_regression(prepared.inst, prepared.initial, cfg,
                                      reg_fn(&*models.reg_sr));
  }
  if (algorithm == "lb-srm") {
    lb::LbRunRecord record = lb::run_lb_with_regression(prepared.inst, prepared.initial, cfg,
                                                        reg_fn(&*models.reg_srm));
    record.algorithm = "lb-srm";
    return record;
  }
  if (algorithm == "lb-rl") {
    return lb::run_lb_rl(prepared.inst, prepared.initial, cfg, nn::make_policy_fn(*models.pi_k),
                         lb::KZeroSource::config_default, nullptr, &rng);
  }
  if (algorithm == "lb-srmrl") {
    return lb::run_lb_rl(prepared.inst, prepared.initial, cfg, nn::make_policy_fn(*models.pi_k),
                         lb::KZeroSource::regression, reg_fn(&*models.reg_srm), &rng);
  }
  if (algorithm == "lb-srmrl-adapt-t") {
    return lb::run_lb_rl_hybrid(prepared.inst, prepared.initial, cfg,
                                nn::make_policy_fn(*models.pi_k), nn::make_policy_fn(*models.pi_t),
                                lb::KZeroSource::regression, reg_fn(&*models.reg_srm), &rng);
  }
  throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

double ExperimentReport::geo_pi_of(const std::string& algorithm) const {
  for (const auto& [name, value] : geo_pi) {
    if (name == algorithm) return value;
  }
  throw std::out_of_range("no aggregate for algorithm '" + algorithm + "'");
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  if (config.algorithms.empty()) throw std::invalid_argument("bench: no algorithms");
  if (config.instances.empty()) throw std::invalid_argument("bench: no instances");
  if (config.t_max <= 0.0) throw std::invalid_argument("bench: t_max must be > 0");

  const LoadedModels models = load_models(config);
  lb::LbConfig cfg = config.lb;
  cfg.global_time_limit = config.t_max;
  cfg.validate();

  ExperimentReport report;

  // sequential preparation: proven optimum + shared initial incumbent
  std::vector<PreparedInstance> prepared;
  for (const std::string& path : config.instances) {
    PreparedInstance p;
    p.path = path;
    p.inst = milp::read_mps(path);
    milp::SolverLimits opt_limits;
    opt_limits.node_limit = config.opt_node_limit;
    const milp::SolveResult opt = milp::solve_milp(p.inst, opt_limits);
    if (opt.status != milp::SolveStatus::optimal) {
      LBFORGE_LOG_WARN("bench: skipping %s (optimum not proven within the node budget)",
                       path.c_str());
      report.skipped_instances.push_back(path);
      continue;
    }
    p.opt_obj = opt.best->objective;
    std::optional<Assignment> initial =
        initial_solution(p.inst, config.init_mode, config.root_node_budget);
    if (!initial) {
      LBFORGE_LOG_WARN("bench: skipping %s (no initial solution)", path.c_str());
      report.skipped_instances.push_back(path);
      continue;
    }
    p.initial = std::move(*initial);
    prepared.push_back(std::move(p));
  }
  if (prepared.empty()) throw std::runtime_error("bench: no usable instances");

  struct Job {
    int algo;
    int inst;
    int seed;
  };
  std::vector<Job> jobs;
  for (int a = 0; a < static_cast<int>(config.algorithms.size()); ++a) {
    for (int i = 0; i < static_cast<int>(prepared.size()); ++i) {
      for (int s = 0; s < static_cast<int>(config.seeds.size()); ++s) {
        jobs.push_back(Job{a, i, s});
      }
    }
  }

  std::vector<RunRow> rows(jobs.size());
  std::vector<MetricSeries> series(jobs.size());

  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t at = cursor.fetch_add(1);
      if (at >= jobs.size()) return;
      const Job& job = jobs[at];
      const PreparedInstance& p = prepared[job.inst];
      RunRow& row = rows[at];
      row.algorithm = config.algorithms[job.algo];
      row.instance = fs::path(p.path).filename().string();
      row.seed = config.seeds[job.seed];
      try {
        // independent stream per (algorithm, instance, seed)
        Rng rng(row.seed * 0x9e3779b97f4a7c15ull + 1315423911ull * (job.algo + 1) +
                0x100000001b3ull * (job.inst + 1));
        const lb::LbRunRecord record = dispatch_run(row.algorithm, p, cfg, models, rng);
        series[at] = series_from_record(record, p.opt_obj);
        row.pi = primal_integral(series[at]);
        row.final_gap_pct = primal_gap_pct(record.final_obj, p.opt_obj);
        row.iters = static_cast<long>(record.iterations.size());
        row.best_obj = record.final_obj;
        row.opt_obj = p.opt_obj;
        row.wall_s = record.elapsed_total;
      } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
        LBFORGE_LOG_WARN("bench: run failed (%s on %s, seed %llu): %s", row.algorithm.c_str(),
                         row.instance.c_str(), static_cast<unsigned long long>(row.seed), e.what());
      }
    }
  };
  const int thread_count = std::max(1, std::min<int>(config.jobs, static_cast<int>(jobs.size())));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // pairwise exclusion of failed (instance, seed) combinations
  std::set<std::pair<std::string, std::uint64_t>> excluded;
  for (const RunRow& row : rows) {
    if (row.failed) excluded.insert({row.instance, row.seed});
  }

  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const RunRow& ra = rows[a];
    const RunRow& rb = rows[b];
    if (ra.algorithm != rb.algorithm) return ra.algorithm < rb.algorithm;
    if (ra.instance != rb.instance) return ra.instance < rb.instance;
    return ra.seed < rb.seed;
  });

  constexpr int kCurveBuckets = 60;
  for (const std::string& algo : config.algorithms) {
    std::vector<double> pis, gaps;
    std::vector<std::size_t> used;
    for (std::size_t i : order) {
      const RunRow& row = rows[i];
      if (row.algorithm != algo || row.failed) continue;
      if (excluded.count({row.instance, row.seed}) != 0) continue;
      pis.push_back(row.pi);
      gaps.push_back(row.final_gap_pct);
      used.push_back(i);
    }
    report.geo_pi.emplace_back(algo, shifted_geometric_mean(pis));
    report.geo_gap.emplace_back(algo, shifted_geometric_mean(gaps));
    for (int b = 1; b <= kCurveBuckets; ++b) {
      const double t_bucket = config.t_max * static_cast<double>(b) / kCurveBuckets;
      std::vector<double> ps;
      ps.reserve(used.size());
      for (std::size_t i : used) ps.push_back(primal_integral_until(series[i], t_bucket));
      report.curve.push_back(CurvePoint{algo, t_bucket, shifted_geometric_mean(ps)});
    }
  }

  report.rows.reserve(rows.size());
  for (std::size_t i : order) report.rows.push_back(std::move(rows[i]));
  return report;
}

std::string ExperimentReport::rows_csv() const {
  std::string out = "algorithm,instance,seed,pi,final_gap_pct,iters,best_obj,opt_obj,wall_s\n";
  for (const RunRow& row : rows) {
    if (row.failed) continue;
    out += row.algorithm + "," + row.instance + "," + std::to_string(row.seed) + "," +
           format_double(row.pi) + "," + format_double(row.final_gap_pct) + "," +
           std::to_string(row.iters) + "," + format_double(row.best_obj) + "," +
           format_double(row.opt_obj) + "," + format_double(row.wall_s) + "\n";
  }
  return out;
}

std::string ExperimentReport::summary_csv() const {
  std::string out = "algorithm,geo_pi,geo_final_gap_pct\n";
  for (std::size_t i = 0; i < geo_pi.size(); ++i) {
    out += geo_pi[i].first + "," + format_double(geo_pi[i].second) + "," +
           format_double(geo_gap[i].second) + "\n";
  }
  return out;
}

std::string ExperimentReport::curve_csv() const {
  std::string out = "algorithm,t_bucket,geo_mean_p\n";
  for (const CurvePoint& p : curve) {
    out += p.algorithm + "," + format_double(p.t_bucket) + "," + format_double(p.geo_mean_p) + "\n";
  }
  return out;
}

void write_report(const ExperimentReport& report, const std::string& dir) {
  fs::create_directories(dir);
  auto dump = [&](const std::string& name, const std::string& content) {
    std::ofstream os(fs::path(dir) / name);
    if (!os) throw std::runtime_error("cannot write report file " + name);
    os << content;
  };
  dump("rows.csv", report.rows_csv());
  dump("summary.csv", report.summary_csv());
  dump("curve.csv", report.curve_csv());
}

}  // namespace lbforge::bench
