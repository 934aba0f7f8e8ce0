/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lbforge/lb/record.hpp"

namespace lbforge::bench {

/// |opt - obj| / |opt| * 100. With opt = 0 the definition breaks down; the
/// scaled primal gap (times 100) is reported instead.
double primal_gap_pct(double obj, double opt);

/// 0 when both objectives are 0, 1 when they have opposite signs,
/// |opt - obj| / max(|opt|, |obj|) otherwise. Always in [0,1].
double scaled_primal_gap(double obj, double opt);

/// Incumbent-objective step function of a run.
struct MetricSeries {
  std::vector<std::pair<double, double>> events;  // (time, incumbent objective)
  double opt_obj = 0.0;
  double t_max = 0.0;
};

/// p(t): 1 before the first incumbent, scaled primal gap of the incumbent
/// at time t afterwards.
double primal_gap_function(const MetricSeries& series, double t);

/// Integral of p over [0, t_max] (exact, the integrand is a step function).
double primal_integral(const MetricSeries& series);
double primal_integral_until(const MetricSeries& series, double t);

/// Event series of an LB run: the initial incumbent at time 0 plus one
/// event per improving iteration.
MetricSeries series_from_record(const lb::LbRunRecord& record, double opt_obj);

/// exp(mean(log(x_i + shift))) - shift; the shift absorbs zeros.
double shifted_geometric_mean(std::span<const double> values, double shift = 1.0);

}  // namespace lbforge::bench
