/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lbforge/milp/mps.hpp"
#include "lbforge/milp/simplex.hpp"
#include "lbforge/milp/solver.hpp"
#include "oracles.hpp"

using namespace lbforge;
using milp::MilpInstance;
using milp::RowSense;
using milp::VarKind;

namespace {

MilpInstance two_var_cover() {
  // min x1 + x2  s.t.  x1 + x2 >= 1,  x in [0,1]^2
  MilpInstance inst = MilpInstance::create(2);
  inst.objective = {1.0, 1.0};
  inst.upper = {1.0, 1.0};
  inst.add_constraint({{0, 1.0}, {1, 1.0}}, RowSense::ge, 1.0);
  return inst;
}

MilpInstance tiny_knapsack() {
  // max 3 x1 + 2 x2  s.t. x1 + x2 <= 1, binary -> min -3 x1 - 2 x2
  MilpInstance inst = MilpInstance::create(2);
  inst.objective = {-3.0, -2.0};
  inst.kind = {VarKind::binary, VarKind::binary};
  inst.upper = {1.0, 1.0};
  inst.add_constraint({{0, 1.0}, {1, 1.0}}, RowSense::le, 1.0);
  return inst;
}

}  // namespace

TEST_CASE("lp relaxation solves a symmetric cover") {
  const milp::LpResult r = milp::solve_lp_relaxation(two_var_cover());
  REQUIRE(r.status == milp::LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.x[0] + r.x[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("lp relaxation detects infeasibility") {
  MilpInstance inst = MilpInstance::create(1);
  inst.objective = {1.0};
  inst.upper = {0.0};
  inst.add_constraint({{0, 1.0}}, RowSense::ge, 1.0);
  const milp::LpResult r = milp::solve_lp_relaxation(inst);
  CHECK(r.status == milp::LpStatus::infeasible);
}

TEST_CASE("lp relaxation detects unboundedness") {
  MilpInstance inst = MilpInstance::create(1);
  inst.objective = {-1.0};  // min -x, x >= 0 unbounded above
  const milp::LpResult r = milp::solve_lp_relaxation(inst);
  CHECK(r.status == milp::LpStatus::unbounded);
}

TEST_CASE("random lps agree with an independent tableau simplex") {
  Rng rng(20260801);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const MilpInstance inst = test::random_lp_instance(10, 20, rng);
    const test::TableauLpResult oracle = test::tableau_simplex(inst);
    const milp::LpResult mine = milp::solve_lp_relaxation(inst);
    if (oracle.status == test::TableauLpResult::Status::optimal) {
      REQUIRE(mine.status == milp::LpStatus::optimal);
      CHECK(mine.objective == doctest::Approx(oracle.objective).epsilon(1e-7));
      ++solved;
    } else if (oracle.status == test::TableauLpResult::Status::infeasible) {
      CHECK(mine.status == milp::LpStatus::infeasible);
    } else {
      CHECK(mine.status == milp::LpStatus::unbounded);
    }
  }
  CHECK(solved > 30);  // the generator plants interior points, most are solvable
}

TEST_CASE("knapsack solves to its known optimum") {
  const milp::SolveResult r = milp::solve_milp(tiny_knapsack(), {});
  REQUIRE(r.status == milp::SolveStatus::optimal);
  CHECK(r.best->objective == doctest::Approx(-3.0));
  CHECK(r.best->values[0] == doctest::Approx(1.0));
  CHECK(r.best->values[1] == doctest::Approx(0.0));
  CHECK(std::abs(r.best->objective - r.bound) <= 1e-9);
}

TEST_CASE("warm start keeps incumbent monotonicity") {
  const MilpInstance inst = tiny_knapsack();
  milp::Assignment warm = milp::make_assignment(inst, {0.0, 1.0});
  REQUIRE(warm.feasible);
  const milp::SolveResult r = milp::solve_milp(inst, {}, warm);
  REQUIRE(r.best.has_value());
  CHECK(r.best->objective <= warm.objective + 1e-12);
}

TEST_CASE("random binaries match brute force enumeration") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + rng.uniform_index(10);  // up to 13 binaries
    const MilpInstance inst = test::random_binary_instance(n, 3 + rng.uniform_index(6), rng);
    const test::BruteForceResult oracle = test::brute_force_binary(inst);
    const milp::SolveResult mine = milp::solve_milp(inst, {});
    if (oracle.feasible) {
      REQUIRE(mine.status == milp::SolveStatus::optimal);
      CHECK(mine.best->objective == doctest::Approx(oracle.objective).epsilon(1e-9));
    } else {
      CHECK(mine.status == milp::SolveStatus::infeasible);
    }
  }
}

TEST_CASE("node limits produce deterministic results") {
  Rng rng(99);
  const MilpInstance inst = test::random_binary_instance(12, 8, rng);
  milp::SolverLimits limits;
  limits.node_limit = 5;
  const milp::SolveResult a = milp::solve_milp(inst, limits);
  const milp::SolveResult b = milp::solve_milp(inst, limits);
  CHECK(a.status == b.status);
  CHECK(a.nodes == b.nodes);
  CHECK(a.bound == b.bound);
  CHECK(a.best.has_value() == b.best.has_value());
  if (a.best) {
    CHECK(a.best->objective == b.best->objective);
    CHECK(a.best->values == b.best->values);
  }
}

TEST_CASE("lp bound never exceeds the milp optimum") {
  Rng rng(123);
  for (int trial = 0; trial < 15; ++trial) {
    const MilpInstance inst = test::random_binary_instance(10, 6, rng);
    const milp::LpResult lp = milp::solve_lp_relaxation(inst);
    const milp::SolveResult ip = milp::solve_milp(inst, {});
    if (lp.status == milp::LpStatus::optimal && ip.status == milp::SolveStatus::optimal) {
      CHECK(lp.objective <= ip.best->objective + 1e-7);
    }
  }
}

TEST_CASE("check_feasibility reports violations") {
  const MilpInstance inst = tiny_knapsack();
  SUBCASE("feasible vertex") {
    const auto rep = milp::check_feasibility(inst, {1.0, 0.0});
    CHECK(rep.feasible);
    CHECK(rep.worst_violation == doctest::Approx(0.0));
  }
  SUBCASE("violated row") {
    MilpInstance relaxed = inst;
    relaxed.kind = {VarKind::continuous, VarKind::continuous};
    const auto rep = milp::check_feasibility(relaxed, {1.0, 0.5});
    CHECK_FALSE(rep.feasible);
    CHECK(rep.worst_violation == doctest::Approx(0.5));
  }
  SUBCASE("agrees with direct evaluation on all assignments") {
    Rng rng(5);
    const MilpInstance random = test::random_binary_instance(10, 5, rng);
    std::vector<double> x(10, 0.0);
    for (long long mask = 0; mask < (1 << 10); ++mask) {
      for (int j = 0; j < 10; ++j) x[j] = (mask >> j) & 1 ? 1.0 : 0.0;
      bool direct = true;
      for (int i = 0; i < random.num_cons && direct; ++i) {
        double lhs = 0.0;
        for (int p = random.matrix.row_start[i]; p < random.matrix.row_start[i + 1]; ++p) {
          lhs += random.matrix.val[p] * x[random.matrix.col[p]];
        }
        switch (random.sense[i]) {
          case RowSense::le: direct = lhs <= random.rhs[i] + milp::kFeasTol; break;
          case RowSense::ge: direct = lhs >= random.rhs[i] - milp::kFeasTol; break;
          case RowSense::eq: direct = std::abs(lhs - random.rhs[i]) <= milp::kFeasTol; break;
        }
      }
      CHECK(milp::check_feasibility(random, x).feasible == direct);
    }
  }
}

TEST_CASE("hand-written mps parses to the expected matrix") {
  const char* text =
      "NAME tiny\n"
      "ROWS\n"
      " N  COST\n"
      " L  LIM1\n"
      "COLUMNS\n"
      "    X1 COST 1.0 LIM1 2.0\n"
      "    X2 COST -1.5 LIM1 1.0\n"
      "RHS\n"
      "    RHS LIM1 10\n"
      "BOUNDS\n"
      " UP BND X1 4\n"
      "ENDATA\n";
  const std::string path = "/tmp/lbforge_tiny.mps";
  {
    std::ofstream os(path);
    os << text;
  }
  const MilpInstance inst = milp::read_mps(path);
  CHECK(inst.num_vars == 2);
  CHECK(inst.num_cons == 1);
  CHECK(inst.objective[0] == doctest::Approx(1.0));
  CHECK(inst.objective[1] == doctest::Approx(-1.5));
  CHECK(inst.sense[0] == RowSense::le);
  CHECK(inst.rhs[0] == doctest::Approx(10.0));
  CHECK(inst.upper[0] == doctest::Approx(4.0));
  CHECK(inst.matrix.nnz() == 2);
}

TEST_CASE("mps round trip is stable") {
  Rng rng(31);
  const MilpInstance inst = test::random_binary_instance(9, 6, rng);
  const std::string p1 = "/tmp/lbforge_rt1.mps";
  const std::string p2 = "/tmp/lbforge_rt2.mps";
  milp::write_mps(inst, p1);
  const MilpInstance back = milp::read_mps(p1);
  milp::write_mps(back, p2);
  const MilpInstance again = milp::read_mps(p2);

  REQUIRE(back.num_vars == inst.num_vars);
  REQUIRE(back.num_cons == inst.num_cons);
  CHECK(back.objective == inst.objective);
  CHECK(back.rhs == inst.rhs);
  CHECK(back.matrix.val == inst.matrix.val);
  CHECK(back.matrix.col == inst.matrix.col);
  CHECK(again.objective == back.objective);
  CHECK(again.matrix.val == back.matrix.val);

  const milp::SolveResult a = milp::solve_milp(inst, {});
  const milp::SolveResult b = milp::solve_milp(back, {});
  REQUIRE(a.status == b.status);
  if (a.best) CHECK(a.best->objective == doctest::Approx(b.best->objective));
}

TEST_CASE("mps reader reports parse errors with line numbers") {
  const std::string path = "/tmp/lbforge_bad.mps";
  {
    std::ofstream os(path);
    os << "NAME bad\nROWS\n N COST\n L R1\nCOLUMNS\n    X1 R1 abc\nRHS\nENDATA\n";
  }
  CHECK_THROWS_AS((void)milp::read_mps(path), milp::MpsError);
  try {
    (void)milp::read_mps(path);
  } catch (const milp::MpsError& e) {
    CHECK(e.line_number == 6);
  }
}

TEST_CASE("mps reader rejects unsupported sections") {
  const std::string path = "/tmp/lbforge_unsup.mps";
  {
    std::ofstream os(path);
    os << "NAME x\nROWS\n N COST\nSOS\nENDATA\n";
  }
  CHECK_THROWS_WITH_AS((void)milp::read_mps(path),
                       doctest::Contains("unsupported section"), milp::MpsError);
}

TEST_CASE("maximization normalizes to minimization on load") {
  const std::string path = "/tmp/lbforge_max.mps";
  {
    std::ofstream os(path);
    os << "NAME maxi\nOBJSENSE\n    MAX\nROWS\n N OBJ\n L R1\nCOLUMNS\n"
          "    MARKER0 'MARKER' 'INTORG'\n"
          "    X1 OBJ 3 R1 1\n    X2 OBJ 2 R1 1\n"
          "    MARKER1 'MARKER' 'INTEND'\n"
          "RHS\n    RHS R1 1\nBOUNDS\n BV BND X1\n BV BND X2\nENDATA\n";
  }
  const MilpInstance inst = milp::read_mps(path);
  CHECK(inst.objective[0] == doctest::Approx(-3.0));
  const milp::SolveResult r = milp::solve_milp(inst, {});
  REQUIRE(r.status == milp::SolveStatus::optimal);
  CHECK(r.best->objective == doctest::Approx(-3.0));
}

TEST_CASE("dive heuristic returns a feasible point") {
  Rng rng(2026);
  for (int trial = 0; trial < 10; ++trial) {
    const MilpInstance inst = test::random_binary_instance(10, 6, rng);
    const auto dive = milp::dive_heuristic(inst);
    const auto oracle = test::brute_force_binary(inst);
    if (dive) {
      CHECK(dive->feasible);
      CHECK(dive->objective >= oracle.objective - 1e-9);
    }
  }
}
