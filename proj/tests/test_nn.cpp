/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lbforge/bench/generate.hpp"
#include "lbforge/nn/checkpoint.hpp"
#include "lbforge/nn/gnn.hpp"
#include "lbforge/nn/policy.hpp"
#include "oracles.hpp"

using namespace lbforge;

namespace {

feat::BipartiteState random_state(int n_vars, int n_cons, Rng& rng) {
  feat::BipartiteState s;
  s.num_vars = n_vars;
  s.num_cons = n_cons;
  s.var_dim = 10;
  s.con_dim = 1;
  s.var_feats.resize(static_cast<std::size_t>(n_vars) * 10);
  for (auto& v : s.var_feats) v = rng.uniform(-1.0, 1.0);
  s.con_feats.resize(static_cast<std::size_t>(n_cons));
  for (auto& v : s.con_feats) v = rng.uniform(-1.0, 1.0);
  for (int i = 0; i < n_cons; ++i) {
    for (int j = 0; j < n_vars; ++j) {
      if (rng.bernoulli(0.5)) s.edges.push_back({i, j, rng.uniform(-1.0, 1.0)});
    }
  }
  return s;
}

feat::RlState random_rl_state(Rng& rng) {
  feat::RlState s;
  const int hot = rng.uniform_index(4);
  s.optimal = hot == 0;
  s.infeasible = hot == 1;
  s.improved = hot == 2;
  s.not_improved = hot == 3;
  s.diverse = rng.bernoulli(0.5) ? 1.0 : 0.0;
  s.t_available = rng.uniform();
  s.obj_improve = rng.uniform();
  return s;
}

}  // namespace

TEST_CASE("zero weights produce sigmoid(0)") {
  Rng rng(1);
  const feat::BipartiteState s = random_state(5, 3, rng);
  nn::GnnModel model = nn::GnnModel::init(10, 1, 16, 7);
  model = nn::GnnModel::zeros_like(model);
  CHECK(nn::gnn_forward(model, s) == doctest::Approx(0.5));
}

TEST_CASE("output stays strictly inside (0,1)") {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const feat::BipartiteState s = random_state(3 + rng.uniform_index(10),
                                                1 + rng.uniform_index(6), rng);
    const nn::GnnModel model = nn::GnnModel::init(10, 1, 64, 1000 + trial);
    const double phi = nn::gnn_forward(model, s);
    CHECK(phi > 0.0);
    CHECK(phi < 1.0);
  }
}

TEST_CASE("node permutations leave the output unchanged") {
  Rng rng(3);
  const nn::GnnModel model = nn::GnnModel::init(10, 1, 64, 42);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 4 + rng.uniform_index(8);
    const int m = 2 + rng.uniform_index(5);
    const feat::BipartiteState s = random_state(n, m, rng);

    std::vector<int> vperm(n), cperm(m);
    for (int j = 0; j < n; ++j) vperm[j] = j;
    for (int i = 0; i < m; ++i) cperm[i] = i;
    rng.shuffle(vperm);
    rng.shuffle(cperm);

    feat::BipartiteState p = s;
    for (int j = 0; j < n; ++j) {
      for (int f = 0; f < 10; ++f) {
        p.var_feats[static_cast<std::size_t>(vperm[j]) * 10 + f] = s.var_at(j, f);
      }
    }
    for (int i = 0; i < m; ++i) p.con_feats[cperm[i]] = s.con_feats[i];
    for (auto& e : p.edges) {
      e.con = cperm[e.con];
      e.var = vperm[e.var];
    }
    const double a = nn::gnn_forward(model, s);
    const double b = nn::gnn_forward(model, p);
    CHECK(std::abs(a - b) <= 1e-9);
  }
}

TEST_CASE("single node with hand-set weights matches a paper-and-pencil pass") {
  // one variable node, no constraints, hidden width 1, every weight fixed
  feat::BipartiteState s;
  s.num_vars = 1;
  s.num_cons = 0;
  s.var_dim = 1;
  s.con_dim = 1;
  s.var_feats = {0.4};

  nn::GnnModel m = nn::GnnModel::zeros_like(nn::GnnModel::init(1, 1, 1, 0));
  m.var_l1.W(0, 0) = 2.0;   // z1 = 0.8
  m.var_l1.b(0) = -0.3;     // a1 = relu(0.5) = 0.5
  m.var_l2.W(0, 0) = 3.0;   // hv = relu(1.5) = 1.5
  m.upd_c2v.W(0, 0) = 1.0;  // u2 = [hv, agg=0] -> zv2 = 1.5
  m.out_hidden.W(0, 0) = 2.0;  // o1 = relu(3.0) = 3.0
  m.out_final.W(0, 0) = 0.5;   // out = 1.5
  const double phi = nn::gnn_forward(m, s);
  CHECK(phi == doctest::Approx(1.0 / (1.0 + std::exp(-1.5))).epsilon(1e-12));
}

TEST_CASE("analytic gradients match central differences") {
  Rng rng(4);
  const double h = 1e-5;
  for (int graph = 0; graph < 5; ++graph) {
    const feat::BipartiteState s = random_state(3 + graph, 2 + graph % 3, rng);
    nn::GnnModel model = nn::GnnModel::init(10, 1, 8, 500 + graph);
    nn::GnnCache cache;
    nn::gnn_forward(model, s, cache);
    const nn::GnnModel grads = nn::gnn_backward(model, s, cache, 1.0);

    // walk every parameter tensor in lockstep
    std::vector<Eigen::MatrixXd*> params, grad_mats;
    std::vector<Eigen::VectorXd*> biases, grad_vecs;
    model.visit([&](const char*, nn::Dense& d) {
      params.push_back(&d.W);
      biases.push_back(&d.b);
    });
    const_cast<nn::GnnModel&>(grads).visit([&](const char*, nn::Dense& d) {
      grad_mats.push_back(&d.W);
      grad_vecs.push_back(&d.b);
    });

    int checked = 0;
    int failed = 0;
    auto check_entry = [&](double* value, double analytic) {
      const double saved = *value;
      *value = saved + h;
      const double up = nn::gnn_forward(model, s);
      *value = saved - h;
      const double down = nn::gnn_forward(model, s);
      *value = saved;
      const double fd = (up - down) / (2.0 * h);
      const double denom = std::max({std::abs(fd), std::abs(analytic), 1e-8});
      if (std::abs(fd - analytic) / denom > 1e-4) ++failed;
      ++checked;
    };
    for (std::size_t t = 0; t < params.size(); ++t) {
      for (Eigen::Index i = 0; i < params[t]->size(); ++i) {
        check_entry(params[t]->data() + i, grad_mats[t]->data()[i]);
      }
      for (Eigen::Index i = 0; i < biases[t]->size(); ++i) {
        check_entry(biases[t]->data() + i, grad_vecs[t]->data()[i]);
      }
    }
    CHECK(checked > 500);
    CHECK(failed == 0);
  }
}

TEST_CASE("gradient flows through real extracted states") {
  bench::GeneratorSpec spec;
  spec.family = bench::Family::set_covering;
  spec.rows = 15;
  spec.cols = 12;
  spec.seed = 21;
  const milp::MilpInstance inst = bench::generate(spec);
  const milp::Assignment inc =
      milp::make_assignment(inst, std::vector<double>(inst.num_vars, 1.0));
  const feat::BipartiteState s = feat::extract_bipartite(inst, inc);
  nn::GnnModel model = nn::GnnModel::init(10, 1, 64, 77);
  const double before = nn::gnn_forward(model, s);
  // one descent step on (phi - target)^2 moves the output toward the target
  const double target = before < 0.5 ? 0.9 : 0.1;
  const nn::GnnModel g = nn::gnn_backward(model, s, 2.0 * (before - target));
  nn::sgd_step(model, g, 1e-2);
  const double after = nn::gnn_forward(model, s);
  CHECK(std::abs(after - target) < std::abs(before - target));
}

TEST_CASE("sgd step is a plain axpy") {
  nn::GnnModel model = nn::GnnModel::init(10, 1, 8, 5);
  const nn::GnnModel snapshot = model;
  nn::GnnModel grads = nn::GnnModel::zeros_like(model);
  grads.var_l1.W(0, 0) = 2.0;
  nn::sgd_step(model, grads, 0.0);
  CHECK(model.var_l1.W(0, 0) == snapshot.var_l1.W(0, 0));  // lr 0 is the identity
  nn::sgd_step(model, grads, 0.1);
  CHECK(model.var_l1.W(0, 0) == doctest::Approx(snapshot.var_l1.W(0, 0) - 0.2));
}

TEST_CASE("uniform policy yields equal probabilities") {
  const nn::PolicyModel policy = nn::PolicyModel::zeros();
  Rng rng(6);
  const feat::RlState s = random_rl_state(rng);
  const Eigen::Vector4d p = nn::policy_forward(policy, s);
  for (int a = 0; a < 4; ++a) CHECK(p(a) == doctest::Approx(0.25));
}

TEST_CASE("softmax sums to one and shifts are invariant") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    nn::PolicyModel policy = nn::PolicyModel::init(trial);
    const feat::RlState s = random_rl_state(rng);
    const Eigen::Vector4d p = nn::policy_forward(policy, s);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-9));
    for (int a = 0; a < 4; ++a) CHECK(p(a) > 0.0);
    const int before = nn::policy_greedy(policy, s);
    policy.bias.array() += 13.7;  // constant logit shift
    CHECK(nn::policy_greedy(policy, s) == before);
  }
}

TEST_CASE("score function identity: expected grad log p vanishes") {
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const nn::PolicyModel policy = nn::PolicyModel::init(100 + trial);
    const feat::RlState s = random_rl_state(rng);
    const Eigen::Vector4d p = nn::policy_forward(policy, s);
    Eigen::MatrixXd acc_w = Eigen::MatrixXd::Zero(4, 7);
    Eigen::VectorXd acc_b = Eigen::VectorXd::Zero(4);
    for (int a = 0; a < 4; ++a) {
      const nn::PolicyModel g = nn::policy_grad_logp(policy, s, a);
      acc_w += p(a) * g.weights;
      acc_b += p(a) * g.bias;
    }
    CHECK(acc_w.cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(acc_b.cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("policy grad log p matches finite differences") {
  Rng rng(9);
  const double h = 1e-6;
  nn::PolicyModel policy = nn::PolicyModel::init(55);
  const feat::RlState s = random_rl_state(rng);
  for (int action = 0; action < 4; ++action) {
    const nn::PolicyModel g = nn::policy_grad_logp(policy, s, action);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 7; ++c) {
        const double saved = policy.weights(r, c);
        policy.weights(r, c) = saved + h;
        const double up = std::log(nn::policy_forward(policy, s)(action));
        policy.weights(r, c) = saved - h;
        const double down = std::log(nn::policy_forward(policy, s)(action));
        policy.weights(r, c) = saved;
        CHECK(g.weights(r, c) == doctest::Approx((up - down) / (2 * h)).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("checkpoints round trip bit-exactly") {
  const nn::GnnModel model = nn::GnnModel::init(10, 1, 16, 2024);
  nlohmann::json meta = {{"seed", 2024}, {"epoch", 17}};
  nn::save_gnn(model, "/tmp/lbforge_gnn.ckpt", meta);
  nlohmann::json meta_back;
  const nn::GnnModel back = nn::load_gnn("/tmp/lbforge_gnn.ckpt", &meta_back);
  CHECK(meta_back.at("epoch") == 17);
  bool same = true;
  model.visit([&](const char* name, const nn::Dense& d) {
    back.visit([&](const char* bname, const nn::Dense& bd) {
      if (std::string(name) == bname) {
        same = same && d.W == bd.W && d.b == bd.b;
      }
    });
  });
  CHECK(same);
  Rng rng(10);
  const feat::BipartiteState s = random_state(6, 4, rng);
  CHECK(nn::gnn_forward(model, s) == nn::gnn_forward(back, s));

  const nn::PolicyModel policy = nn::PolicyModel::init(13);
  nn::save_policy(policy, "/tmp/lbforge_policy.ckpt");
  const nn::PolicyModel pback = nn::load_policy("/tmp/lbforge_policy.ckpt");
  CHECK(policy.weights == pback.weights);
  CHECK(policy.bias == pback.bias);
  CHECK_THROWS((void)nn::load_policy("/tmp/lbforge_gnn.ckpt"));
}
