#include <doctest.h>

#include <cmath>

#include "imexdc/data_io.hpp"
#include "imexdc/graph_gl.hpp"
#include "imexdc/problem.hpp"
#include "imexdc/rng.hpp"
#include "support/oracles.hpp"

using namespace imexdc;

namespace {

GraphGL two_node_model(double eps) {
  GraphGL g;
  g.W = SpMat(2, 2);
  g.W.insert(0, 1) = 1.0;
  g.W.insert(1, 0) = 1.0;
  g.W.makeCompressed();
  g.Lambda = Vec::Zero(2);
  g.y_prior = Vec::Zero(2);
  g.eps = eps;
  g.eta = 10.0;
  return g;
}

}  // namespace

TEST_CASE("kernel weights: identical features give weight one") {
  Mat feats(4, 2);
  feats << 0, 0, 0, 0, 3, 3, 3, 3;  // two identical pairs
  const SpMat W = build_graph_weights(feats, 1.0, 1);
  CHECK(W.coeff(0, 1) == 1.0);
  CHECK(W.coeff(2, 3) == 1.0);
  // distance sigma gives weight exp(-1)
  Mat feats2(3, 1);
  feats2 << 0.0, 0.5, 10.0;
  const SpMat W2 = build_graph_weights(feats2, 0.5, 1);
  CHECK(W2.coeff(0, 1) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("weights are symmetric with zero diagonal") {
  const auto [img, truth] = gen_synthetic_image(8, 8, ShapeKind::disk, 0.1, 3);
  const Mat feats = extract_patch_features(img, 1);
  const SpMat W = build_graph_weights(feats, 0.7, 5);
  const SpMat diff = SpMat(W.transpose()) - W;
  CHECK(diff.squaredNorm() == 0.0);
  for (int i = 0; i < W.rows(); ++i) CHECK(W.coeff(i, i) == 0.0);
}

TEST_CASE("degenerate features fall back to uniform weights") {
  Mat feats = Mat::Constant(6, 3, 0.5);
  const SpMat W = build_graph_weights(feats, 1.0, 2);
  for (int j = 0; j < W.outerSize(); ++j)
    for (SpMat::InnerIterator it(W, j); it; ++it) CHECK(it.value() == 1.0);
  CHECK(W.nonZeros() > 0);
}

TEST_CASE("two-node graph energy and gradient match the hand expansion") {
  const GraphGL g = two_node_model(10.0);
  const Problem prob = build_graph_gl(g);
  Vec x(2);
  x << 1.0, 0.0;
  // ordered pairs: 2 * (eps/2) * w * (1 - 0)^2 = eps = 10
  CHECK(prob.eval_H(x) == doctest::Approx(10.0));
  const Vec grad = prob.grad_H(x);
  CHECK(grad[0] == doctest::Approx(20.0));
  CHECK(grad[1] == doctest::Approx(-20.0));
}

TEST_CASE("constant vectors are in the kernel of the graph term") {
  const GraphGL g = two_node_model(7.0);
  const Problem prob = build_graph_gl(g);
  const Vec x = Vec::Constant(2, 3.25);
  CHECK(prob.eval_H(x) == 0.0);
  CHECK(prob.grad_H(x).norm() <= 1e-14);
}

TEST_CASE("double-well gradient vanishes at the wells and the origin") {
  const GraphGL g = two_node_model(10.0);
  const Problem prob = build_graph_gl(g);
  CHECK(prob.grad_F(Vec::Constant(2, 1.0)).norm() == 0.0);
  CHECK(prob.grad_F(Vec::Constant(2, -1.0)).norm() == 0.0);
  CHECK(prob.grad_F(Vec::Zero(2)).norm() == 0.0);
}

TEST_CASE("gl_lipschitz covers the double-well slope on the box") {
  CHECK(gl_lipschitz(10.0, 1.1) == doctest::Approx(0.263));
  CHECK(gl_lipschitz(10.0, 0.5) == doctest::Approx(0.1));  // max(3 c^2 - 1, 1) floor
}

TEST_CASE("double-well gradient matches finite differences") {
  const GraphGL g = two_node_model(10.0);
  const Problem prob = build_graph_gl(g);
  rng::StreamRng gen(9, rng::Stream::matrix);
  for (int trial = 0; trial < 300; ++trial) {
    Vec x(2);
    x << 1.2 * gen.normal(), 1.2 * gen.normal();
    const Vec grad = prob.grad_F(x);
    for (int i = 0; i < 2; ++i) {
      auto slice = [&](double t) {
        Vec xx = x;
        xx[i] = t;
        return prob.eval_F(xx);
      };
      CHECK(std::abs(oracle::central_diff(slice, x[i]) - grad[i]) <= 1e-5);
    }
  }
}

TEST_CASE("graph operator 2 eps L is positive semi-definite") {
  const auto [img, truth] = gen_synthetic_image(8, 8, ShapeKind::disk, 0.1, 4);
  const Mat feats = extract_patch_features(img, 0);
  GraphGL g;
  g.W = build_graph_weights(feats, 0.1, 4);
  g.Lambda = Vec::Zero(64);
  g.y_prior = Vec::Zero(64);
  const Problem prob = build_graph_gl(g);
  const auto& quad = std::get<QuadraticSpec>(prob.backend);
  rng::StreamRng gen(12, rng::Stream::matrix);
  for (int trial = 0; trial < 1000; ++trial) {
    Vec x(64);
    for (int i = 0; i < 64; ++i) x[i] = gen.normal();
    CHECK(x.dot(quad.A_op * x) >= -1e-10 * x.squaredNorm());
  }
}

TEST_CASE("H + F matches the monolithic double-sum evaluator") {
  const auto [img, truth] = gen_synthetic_image(8, 8, ShapeKind::disk, 0.1, 5);
  const Mat feats = extract_patch_features(img, 1);
  GraphGL g;
  g.W = build_graph_weights(feats, 1.0, 4);
  g.Lambda = Vec::Zero(64);
  g.y_prior = Vec::Zero(64);
  for (int i = 0; i < 5; ++i) {
    g.Lambda[i * 7] = 1.0;
    g.y_prior[i * 7] = i % 2 == 0 ? 1.0 : -1.0;
  }
  const Problem prob = build_graph_gl(g);
  rng::StreamRng gen(13, rng::Stream::matrix);
  for (int trial = 0; trial < 25; ++trial) {
    Vec x(64);
    for (int i = 0; i < 64; ++i) x[i] = gen.normal();
    const double mono = gl_energy_monolithic(g, x);
    CHECK(prob.energy(x) == doctest::Approx(mono).epsilon(1e-12));
    // grad H consistency with the quadratic backend
    const auto& quad = std::get<QuadraticSpec>(prob.backend);
    CHECK((prob.grad_H(x) - (quad.A_op * x - quad.b0)).norm() <= 1e-12);
  }
}

TEST_CASE("asymmetric weights and nonzero diagonals are rejected") {
  GraphGL g;
  g.W = SpMat(2, 2);
  g.W.insert(0, 1) = 1.0;  // missing the mirrored entry
  g.W.makeCompressed();
  g.Lambda = Vec::Zero(2);
  g.y_prior = Vec::Zero(2);
  CHECK_THROWS_AS(build_graph_gl(g), std::invalid_argument);

  GraphGL g2 = two_node_model(10.0);
  SpMat W = g2.W;
  W.coeffRef(0, 0) = 0.5;
  g2.W = W;
  CHECK_THROWS_AS(build_graph_gl(g2), std::invalid_argument);
}

TEST_CASE("estimate_lambda_max on the identity is 1 within the inflation") {
  const Mat I = Mat::Identity(6, 6);
  CHECK(std::abs(estimate_lambda_max(I) - 1.0) <= 1.1e-6);
}

TEST_CASE("median_knn_distance reflects the feature spread") {
  Mat feats(4, 1);
  feats << 0.0, 1.0, 2.0, 3.0;
  CHECK(median_knn_distance(feats, 1) == doctest::Approx(1.0));
}
