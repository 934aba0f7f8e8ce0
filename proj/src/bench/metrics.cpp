/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/bench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lbforge::bench {

double scaled_primal_gap(double obj, double opt) {
  if (opt == 0.0 && obj == 0.0) return 0.0;
  if (opt * obj < 0.0) return 1.0;
  return std::abs(opt - obj) / std::max(std::abs(opt), std::abs(obj));
}

double primal_gap_pct(double obj, double opt) {
  if (opt == 0.0) return scaled_primal_gap(obj, opt) * 100.0;
  return std::abs(opt - obj) / std::abs(opt) * 100.0;
}

double primal_gap_function(const MetricSeries& series, double t) {
  double obj = 0.0;
  bool have = false;
  for (const auto& [time, value] : series.events) {
    if (time > t) break;
    obj = value;
    have = true;
  }
  if (!have) return 1.0;
  return scaled_primal_gap(obj, series.opt_obj);
}

double primal_integral_until(const MetricSeries& series, double t_end) {
  if (t_end < 0.0) throw std::invalid_argument("primal integral: negative horizon");
  double acc = 0.0;
  double prev_time = 0.0;
  double prev_p = 1.0;  // no incumbent yet
  for (const auto& [time, value] : series.events) {
    if (time >= t_end) break;
    const double clipped = std::max(time, 0.0);
    acc += prev_p * (clipped - prev_time);
    prev_time = clipped;
    prev_p = scaled_primal_gap(value, series.opt_obj);
  }
  acc += prev_p * (t_end - prev_time);
  return acc;
}

double primal_integral(const MetricSeries& series) {
  if (series.t_max <= 0.0) throw std::invalid_argument("primal integral: t_max must be > 0");
  return primal_integral_until(series, series.t_max);
}

MetricSeries series_from_record(const lb::LbRunRecord& record, double opt_obj) {
  MetricSeries series;
  series.opt_obj = opt_obj;
  series.t_max = record.t_max;
  series.events.emplace_back(0.0, record.initial_obj);
  for (const auto& it : record.iterations) {
    if (it.outcome.new_incumbent) {
      series.events.emplace_back(it.elapsed_total, it.incumbent_obj);
    }
  }
  return series;
}

double shifted_geometric_mean(std::span<const double> values, double shift) {
  if (values.empty()) return 0.0;
  double acc = 0.0;
  for (double v : values) {
    if (v + shift <= 0.0) {
      throw std::invalid_argument("geometric mean: value + shift must be positive");
    }
    acc += std::log(v + shift);
  }
  return std::exp(acc / static_cast<double>(values.size())) - shift;
}

}  // namespace lbforge::bench
