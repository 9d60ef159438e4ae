#include <doctest.h>

#include <cmath>

#include "imexdc/baselines.hpp"
#include "imexdc/data_io.hpp"
#include "imexdc/diagnostics.hpp"
#include "imexdc/rng.hpp"
#include "imexdc/scad.hpp"
#include "support/oracles.hpp"

using namespace imexdc;

namespace {
const ScadParams kPaper{0.033, 10.0, 0.0165};
}

TEST_CASE("dca_step: prox of zero is zero") {
  DcSplitting split;
  split.argmin_g1_linear = [](const Vec& v) {
    Vec x(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double a = std::abs(v[i]) - 1.0;
      x[i] = a > 0 ? std::copysign(a, v[i]) : 0.0;
    }
    return x;
  };
  split.grad_g2 = [](const Vec& x) { return Vec::Zero(x.size()).eval(); };
  CHECK(dca_step(Vec::Constant(3, 5.0), split).norm() == 0.0);
}

TEST_CASE("dca on the 1-D unpenalized instance reaches x* = 1") {
  Mat A = Mat::Identity(1, 1);
  Vec b = Vec::Constant(1, 1.0);
  auto data = make_lsq_data(A, b);
  const Problem prob = build_scad_ls(data, ScadParams{0.0, 10.0, 0.01}, PenaltyKind::l1);
  const TerminationRule rule{TerminationKind::relative_step, 1e-13, {}};
  const RunRecord rec = run_dca(prob, rule, 1000, Vec::Zero(1));
  CHECK(rec.status == RunStatus::converged);
  CHECK(rec.final_x[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("dca steps never increase the energy") {
  rng::StreamRng gen(44, rng::Stream::matrix);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst =
        gen_random_instance({10, 16, 3, 0.01, static_cast<std::uint64_t>(trial + 1)});
    auto data = make_lsq_data(inst.A, inst.b);
    const PenaltyKind variant = trial % 2 == 0 ? PenaltyKind::l1 : PenaltyKind::huber;
    const Problem prob = build_scad_ls(data, kPaper, variant);
    const DcSplitting split = make_dc_splitting(prob);
    Vec x(16);
    for (int i = 0; i < 16; ++i) x[i] = 0.5 * gen.normal();
    const Vec x_next = dca_step(x, split);
    CHECK(prob.energy(x_next) <= prob.energy(x) + 1e-10);
  }
}

TEST_CASE("bdca line search follows the hand-simulated backtracking") {
  // E(x) = x^2, y~ = 1, d = -3 (a DCA point past the minimum from x = 4):
  // accept once (1 - 3 lam)^2 <= 1 - 0.2 * 9 lam^2, i.e. lam <= 5/9;
  // the sequence 3.09 * 0.8^j first satisfies it at j = 8.
  DcSplitting split;
  split.argmin_g1_linear = {};
  split.grad_g2 = {};
  split.energy = [](const Vec& x) { return x.squaredNorm(); };

  const Vec y_tilde = Vec::Constant(1, 1.0);
  const Vec d = Vec::Constant(1, -3.0);
  LineSearchParams ls;  // lambda_max 5, lambda 3.09, alpha 0.2, beta 0.8
  double lam = ls.lambda_init;
  int taken = 0;
  while (split.energy(y_tilde + lam * d) >
         split.energy(y_tilde) - ls.alpha_ls * lam * lam * d.squaredNorm()) {
    lam *= ls.beta_ls;
    ++taken;
  }
  CHECK(taken == 8);
  CHECK(lam == doctest::Approx(3.09 * std::pow(0.8, 8)));
  CHECK(lam <= 5.0 / 9.0 + 1e-12);
  CHECK(lam > 5.0 / 9.0 * 0.8);  // the previous candidate failed

  // bdca_step with a splitting whose DCA point is y~ = 1 from x = 4
  split.argmin_g1_linear = [](const Vec& v) { return v.eval(); };
  split.grad_g2 = [](const Vec&) { return Vec::Constant(1, 1.0).eval(); };
  const Vec x_next = bdca_step(Vec::Constant(1, 4.0), split, ls);
  CHECK(x_next[0] == doctest::Approx(1.0 - 3.0 * lam).epsilon(1e-14));
}

TEST_CASE("bdca returns the DCA point when the direction vanishes") {
  DcSplitting split;
  split.argmin_g1_linear = [](const Vec& v) { return v.eval(); };
  split.grad_g2 = [](const Vec& x) { return x.eval(); };  // fixed point everywhere
  split.energy = [](const Vec& x) { return x.squaredNorm(); };
  const Vec x = Vec::Constant(2, 0.7);
  CHECK((bdca_step(x, split, {}) - x).norm() == 0.0);
}

TEST_CASE("bdca never loses to its own DCA point") {
  const Instance inst = gen_random_instance({12, 20, 4, 0.01, 33});
  auto data = make_lsq_data(inst.A, inst.b);
  const Problem prob = build_scad_ls(data, kPaper, PenaltyKind::huber);
  const DcSplitting split = make_dc_splitting(prob);
  rng::StreamRng gen(3, rng::Stream::matrix);
  for (int trial = 0; trial < 50; ++trial) {
    Vec x(20);
    for (int i = 0; i < 20; ++i) x[i] = 0.4 * gen.normal();
    const Vec y_tilde = dca_step(x, split);
    const Vec x_next = bdca_step(x, split, {});
    CHECK(prob.energy(x_next) <= prob.energy(y_tilde) + 1e-12);
  }
}

TEST_CASE("bapdca linearization and step bound") {
  IterState st;
  st.x_n = Vec::Constant(1, 1.0);
  st.x_nm1 = Vec::Zero(1);
  st.f_n = st.f_nm1 = Vec::Zero(1);
  CHECK(bapdca_g2(st, 1.0)[0] == doctest::Approx(2.0 / 3.0));

  CHECK(bapdca_step_bound(1.0 / 9.0) == doctest::Approx(6.0));

  const Instance inst = gen_random_instance({10, 14, 3, 0.01, 5});
  auto data = make_lsq_data(inst.A, inst.b);
  const Problem prob = build_scad_ls(data, kPaper, PenaltyKind::l1);
  SolverConfig config;
  config.delta_t = 6.5;  // above 2/(3 L) = 6
  CHECK_THROWS_WITH_AS(run_bapdca(prob, config, Vec::Zero(14)), doctest::Contains("2/(3 L)"),
                       std::invalid_argument);
}

TEST_CASE("bapdca stays at a critical point with collapsed history") {
  Mat A = 0.01 * Mat::Identity(3, 3);
  Vec b = Vec::Constant(3, 0.1);
  auto data = make_lsq_data(A, b);
  const Problem prob = build_scad_ls(data, ScadParams{0.5, 10.0, 0.25}, PenaltyKind::l1);
  SolverConfig config;
  config.termination = {TerminationKind::step_norm, 1e-14, {}};
  const RunRecord rec = run_bapdca(prob, config, Vec::Zero(3));
  CHECK(rec.status == RunStatus::converged);
  CHECK(rec.iterations == 1);
  CHECK(rec.final_x.norm() == 0.0);
}

TEST_CASE("all five algorithms find critical points of a 2-D toy problem") {
  const Instance inst = gen_random_instance({6, 2, 1, 0.01, 77});
  auto data = make_lsq_data(inst.A, inst.b);
  const Problem prob = build_scad_ls(data, ScadParams{0.1, 10.0, 0.05}, PenaltyKind::l1);

  SolverConfig config;
  config.termination.tolerance = 1e-8;
  config.max_iter = 50000;

  for (Algorithm a : {Algorithm::dca, Algorithm::bdca, Algorithm::bapdca,
                      Algorithm::threebapdca, Algorithm::threebapdca_e}) {
    const RunRecord rec = run_algorithm(a, prob, config, Vec::Zero(2));
    CAPTURE(algorithm_name(a));
    CHECK(rec.status == RunStatus::converged);
    const double res = criticality_residual(prob, rec.final_x);
    CHECK(res <= 1e-6);

    // the residual has a local minimum there: every axis perturbation is worse
    for (int i = 0; i < 2; ++i) {
      for (double h : {1e-3, -1e-3}) {
        Vec probe = rec.final_x;
        probe[i] += h;
        CHECK(criticality_residual(prob, probe) >= res - 1e-9);
      }
    }

    // and it beats an exhaustive grid scan of the neighborhood
    const Vec grid_best = oracle::nested_grid_min_2d(
        [&](const Vec& x) { return prob.energy(x); },
        (rec.final_x.array() - 0.05).matrix(), (rec.final_x.array() + 0.05).matrix(), 51, 1e-5);
    CHECK(prob.energy(rec.final_x) <= prob.energy(grid_best) + 1e-8);
  }
}

TEST_CASE("algorithm names round-trip") {
  for (Algorithm a : {Algorithm::dca, Algorithm::bdca, Algorithm::bapdca,
                      Algorithm::threebapdca, Algorithm::threebapdca_e}) {
    CHECK(algorithm_from_name(algorithm_name(a)) == a);
  }
  CHECK_THROWS_AS(algorithm_from_name("nope"), std::invalid_argument);
}
