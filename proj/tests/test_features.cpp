/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lbforge/bench/generate.hpp"
#include "lbforge/features/bipartite.hpp"
#include "lbforge/features/rl_state.hpp"
#include "oracles.hpp"

using namespace lbforge;
using milp::MilpInstance;
using milp::RowSense;
using milp::VarKind;

TEST_CASE("tiny instance maps to the expected graph") {
  MilpInstance inst = MilpInstance::create(2);
  inst.objective = {2.0, -1.0};
  inst.kind = {VarKind::binary, VarKind::continuous};
  inst.upper = {1.0, 5.0};
  inst.add_constraint({{0, 1.0}, {1, 2.0}}, RowSense::le, 4.0);
  const milp::Assignment inc = milp::make_assignment(inst, {1.0, 0.5});
  const feat::BipartiteState s = feat::extract_bipartite(inst, inc);

  CHECK(s.num_vars == 2);
  CHECK(s.num_cons == 1);
  CHECK(s.edges.size() == 2);
  const double scale = std::sqrt(1.0 + 4.0 + 16.0);
  CHECK(s.con_at(0, 0) == doctest::Approx(4.0 / scale));
  CHECK(s.edges[0].coef == doctest::Approx(1.0 / scale));
  CHECK(s.edges[1].coef == doctest::Approx(2.0 / scale));
  // objective scaled by max |c| = 2
  CHECK(s.var_at(0, 0) == doctest::Approx(1.0));
  CHECK(s.var_at(1, 0) == doctest::Approx(-0.5));
  // type indicators one-hot
  for (int j = 0; j < 2; ++j) {
    double sum = 0.0;
    for (int f = 1; f <= 4; ++f) sum += s.var_at(j, f);
    CHECK(sum == doctest::Approx(1.0));
  }
  CHECK(s.var_at(0, 1) == doctest::Approx(1.0));  // binary
  CHECK(s.var_at(1, 4) == doctest::Approx(1.0));  // continuous
  CHECK(s.var_at(0, 9) == doctest::Approx(1.0));  // sol_val
  CHECK(s.var_at(1, 9) == doctest::Approx(0.5));
}

TEST_CASE("edges mirror the sparsity pattern exactly") {
  Rng rng(17);
  const MilpInstance inst = test::random_binary_instance(12, 8, rng);
  const milp::Assignment inc = milp::make_assignment(inst, std::vector<double>(12, 0.0));
  const feat::BipartiteState s = feat::extract_bipartite(inst, inc);
  CHECK(static_cast<int>(s.edges.size()) == inst.matrix.nnz());
  std::size_t at = 0;
  for (int i = 0; i < inst.num_cons; ++i) {
    for (int p = inst.matrix.row_start[i]; p < inst.matrix.row_start[i + 1]; ++p, ++at) {
      CHECK(s.edges[at].con == i);
      CHECK(s.edges[at].var == inst.matrix.col[p]);
      CHECK(std::abs(s.edges[at].coef) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("extraction is pure") {
  bench::GeneratorSpec spec;
  spec.family = bench::Family::set_covering;
  spec.rows = 30;
  spec.cols = 20;
  spec.seed = 3;
  const MilpInstance inst = bench::generate(spec);
  const milp::Assignment inc = milp::make_assignment(inst, std::vector<double>(20, 1.0));
  const feat::BipartiteState a = feat::extract_bipartite(inst, inc);
  const feat::BipartiteState b = feat::extract_bipartite(inst, inc);
  CHECK(a.var_feats == b.var_feats);
  CHECK(a.con_feats == b.con_feats);
  CHECK(a.edges.size() == b.edges.size());
}

TEST_CASE("variable permutation permutes rows consistently") {
  Rng rng(88);
  const MilpInstance inst = test::random_binary_instance(10, 6, rng);
  // permuted copy: reverse variable order
  MilpInstance perm = MilpInstance::create(inst.num_vars, inst.name);
  const int n = inst.num_vars;
  auto pos = [n](int j) { return n - 1 - j; };
  for (int j = 0; j < n; ++j) {
    perm.objective[pos(j)] = inst.objective[j];
    perm.kind[pos(j)] = inst.kind[j];
    perm.lower[pos(j)] = inst.lower[j];
    perm.upper[pos(j)] = inst.upper[j];
  }
  for (int i = 0; i < inst.num_cons; ++i) {
    std::vector<std::pair<int, double>> entries;
    for (int p = inst.matrix.row_start[i]; p < inst.matrix.row_start[i + 1]; ++p) {
      entries.emplace_back(pos(inst.matrix.col[p]), inst.matrix.val[p]);
    }
    perm.add_constraint(entries, inst.sense[i], inst.rhs[i]);
  }
  std::vector<double> x(n), px(n);
  for (int j = 0; j < n; ++j) x[j] = rng.bernoulli(0.5) ? 1.0 : 0.0;
  for (int j = 0; j < n; ++j) px[pos(j)] = x[j];

  const feat::BipartiteState a = feat::extract_bipartite(inst, milp::make_assignment(inst, x));
  const feat::BipartiteState b =
      feat::extract_bipartite(perm, milp::make_assignment(perm, px));
  for (int j = 0; j < n; ++j) {
    for (int f = 0; f < a.var_dim; ++f) {
      CHECK(a.var_at(j, f) == doctest::Approx(b.var_at(pos(j), f)));
    }
  }
}

TEST_CASE("compact layout agrees with the full one on shared columns") {
  Rng rng(55);
  const MilpInstance inst = test::random_binary_instance(9, 5, rng);
  std::vector<double> x(9);
  for (auto& v : x) v = rng.bernoulli(0.4) ? 1.0 : 0.0;
  const milp::Assignment inc = milp::make_assignment(inst, x);
  const feat::BipartiteState full = feat::extract_bipartite(inst, inc, feat::FeatureLayout::full);
  const feat::BipartiteState compact =
      feat::extract_bipartite(inst, inc, feat::FeatureLayout::compact);
  CHECK(compact.var_dim == 3);
  for (int j = 0; j < 9; ++j) {
    CHECK(compact.var_at(j, 0) == full.var_at(j, 0));  // coef
    CHECK(compact.var_at(j, 1) == full.var_at(j, 9));  // sol_val
    CHECK(compact.var_at(j, 2) == (x[j] > 0.5 ? 1.0 : 0.0));
  }
  MilpInstance mixed = inst;
  mixed.kind[0] = VarKind::continuous;
  const milp::Assignment inc2 = milp::make_assignment(mixed, x);
  CHECK_THROWS_AS((void)feat::extract_bipartite(mixed, inc2, feat::FeatureLayout::compact),
                  std::invalid_argument);
}

TEST_CASE("bipartite state round trips through the tensor container") {
  bench::GeneratorSpec spec;
  spec.family = bench::Family::combinatorial_auction;
  spec.items = 20;
  spec.bids = 15;
  spec.seed = 9;
  const MilpInstance inst = bench::generate(spec);
  const milp::Assignment inc = milp::make_assignment(inst, std::vector<double>(inst.num_vars, 0.0));
  const feat::BipartiteState s = feat::extract_bipartite(inst, inc);
  feat::write_bipartite(s, "/tmp/lbforge_state.bin");
  const feat::BipartiteState back = feat::read_bipartite("/tmp/lbforge_state.bin");
  CHECK(back.var_feats == s.var_feats);
  CHECK(back.con_feats == s.con_feats);
  REQUIRE(back.edges.size() == s.edges.size());
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    CHECK(back.edges[e].con == s.edges[e].con);
    CHECK(back.edges[e].var == s.edges[e].var);
    CHECK(back.edges[e].coef == s.edges[e].coef);
  }
  CHECK(back.var_columns == s.var_columns);
}

TEST_CASE("rl state indicators and scalings") {
  lb::LbIterationOutcome outcome;
  outcome.status = lb::LbIterationStatus::optimal;
  outcome.elapsed = 4.0;
  outcome.obj_improvement = 12.0;

  SUBCASE("optimal one-hot") {
    const feat::RlState s = feat::extract_rl_state(outcome, 10.0, 100.0, false);
    CHECK(s.optimal == 1.0);
    CHECK(s.infeasible + s.improved + s.not_improved == 0.0);
    CHECK(s.t_available == doctest::Approx(0.6));
    CHECK(s.obj_improve == doctest::Approx(0.12));
  }
  SUBCASE("limit hit without solution") {
    outcome.status = lb::LbIterationStatus::not_improved;
    outcome.elapsed = 10.0;
    outcome.obj_improvement = 0.0;
    const feat::RlState s = feat::extract_rl_state(outcome, 10.0, 100.0, false);
    CHECK(s.not_improved == 1.0);
    CHECK(s.t_available == doctest::Approx(0.0));
    CHECK(s.obj_improve == doctest::Approx(0.0));
  }
  SUBCASE("small objectives use the unit floor") {
    const feat::RlState s = feat::extract_rl_state(outcome, 10.0, 0.5, true);
    CHECK(s.diverse == 1.0);
    CHECK(s.obj_improve == doctest::Approx(12.0));  // denominator max(0.5, 1)
  }
  SUBCASE("record overload uses the last iteration") {
    lb::LbRunRecord record;
    record.initial_obj = 100.0;
    lb::LbIterationRecord it;
    it.t = 10.0;
    it.outcome = outcome;
    record.iterations.push_back(it);
    const feat::RlState s = feat::extract_rl_state(record, false);
    CHECK(s.optimal == 1.0);
    CHECK(s.t_available == doctest::Approx(0.6));
    lb::LbRunRecord empty;
    CHECK_THROWS_AS((void)feat::extract_rl_state(empty, false), std::invalid_argument);
  }
}
