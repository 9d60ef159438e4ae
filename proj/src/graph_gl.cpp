#include "imexdc/graph_gl.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <vector>

namespace imexdc {

namespace {

// Indices of the k nearest rows to row i by squared feature distance,
// ties broken by index so the construction is deterministic.
std::vector<std::vector<int>> knn_lists(const Mat& features, int k_nn) {
  const int n = static_cast<int>(features.rows());
  if (k_nn < 1 || k_nn >= n)
    throw std::invalid_argument("build_graph_weights: need 1 <= k_nn < node count");

  std::vector<std::vector<int>> nbrs(n);
  std::vector<std::pair<double, int>> cand(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      cand[j] = {(features.row(i) - features.row(j)).squaredNorm(), j};
    cand[i].first = std::numeric_limits<double>::infinity();  // exclude self
    std::partial_sort(cand.begin(), cand.begin() + k_nn, cand.end());
    nbrs[i].reserve(k_nn);
    for (int t = 0; t < k_nn; ++t) nbrs[i].push_back(cand[t].second);
  }
  return nbrs;
}

}  // namespace

double median_knn_distance(const Mat& features, int k_nn) {
  const auto nbrs = knn_lists(features, k_nn);
  std::vector<double> dists;
  dists.reserve(nbrs.size() * k_nn);
  for (size_t i = 0; i < nbrs.size(); ++i)
    for (int j : nbrs[i])
      dists.push_back((features.row(static_cast<int>(i)) - features.row(j)).norm());
  auto mid = dists.begin() + dists.size() / 2;
  std::nth_element(dists.begin(), mid, dists.end());
  return *mid;
}

SpMat build_graph_weights(const Mat& features, double sigma, int k_nn) {
  if (!(sigma > 0.0)) throw std::invalid_argument("build_graph_weights: sigma must be positive");
  const int n = static_cast<int>(features.rows());
  const auto nbrs = knn_lists(features, k_nn);

  double max_sq = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j : nbrs[i])
      max_sq = std::max(max_sq, (features.row(i) - features.row(j)).squaredNorm());
  const bool degenerate = max_sq == 0.0;
  if (degenerate)
    std::cerr << "build_graph_weights: all features identical, using uniform weights\n";

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(n) * k_nn * 2);
  // symmetrized proximity: edge whenever either endpoint lists the other
  std::vector<std::vector<char>> seen(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j : nbrs[i]) {
      seen[i][j] = seen[j][i] = 1;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!seen[i][j] || i == j) continue;
      const double w =
          degenerate ? 1.0
                     : std::exp(-(features.row(i) - features.row(j)).squaredNorm() /
                                (sigma * sigma));
      trips.emplace_back(i, j, w);
    }
  }
  SpMat W(n, n);
  W.setFromTriplets(trips.begin(), trips.end());
  W.makeCompressed();
  return W;
}

double gl_lipschitz(double eps, double box_c) {
  return std::max(3.0 * box_c * box_c - 1.0, 1.0) / eps;
}

Problem build_graph_gl(const GraphGL& g) {
  const int n = static_cast<int>(g.W.rows());
  if (g.W.cols() != n) throw std::invalid_argument("build_graph_gl: W not square");
  SpMat diff = SpMat(g.W.transpose()) - g.W;
  if (diff.squaredNorm() > 1e-24 * (1.0 + g.W.squaredNorm()))
    throw std::invalid_argument("build_graph_gl: asymmetric W");
  for (int i = 0; i < n; ++i)
    if (g.W.coeff(i, i) != 0.0) throw std::invalid_argument("build_graph_gl: nonzero diagonal");
  if (g.Lambda.size() != n || g.y_prior.size() != n)
    throw std::invalid_argument("build_graph_gl: prior size mismatch");

  Vec degree = Vec::Zero(n);
  for (int j = 0; j < g.W.outerSize(); ++j)
    for (SpMat::InnerIterator it(g.W, j); it; ++it) degree[it.row()] += it.value();

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(g.W.nonZeros() + n);
  for (int j = 0; j < g.W.outerSize(); ++j)
    for (SpMat::InnerIterator it(g.W, j); it; ++it)
      trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                         -2.0 * g.eps * it.value());
  for (int i = 0; i < n; ++i)
    trips.emplace_back(i, i, 2.0 * g.eps * degree[i] + g.eta * g.Lambda[i]);

  QuadraticSpec spec;
  spec.A_op = SpMat(n, n);
  spec.A_op.setFromTriplets(trips.begin(), trips.end());
  spec.A_op.makeCompressed();
  spec.b0 = g.eta * g.Lambda.cwiseProduct(g.y_prior);

  auto model = std::make_shared<GraphGL>(g);

  Problem prob;
  prob.dim = n;
  prob.lipschitz = gl_lipschitz(g.eps, g.box_c);
  prob.eval_H = [model](const Vec& x) {
    double graph = 0.0;
    for (int j = 0; j < model->W.outerSize(); ++j)
      for (SpMat::InnerIterator it(model->W, j); it; ++it) {
        const double d = x[it.row()] - x[it.col()];
        graph += 0.5 * model->eps * it.value() * d * d;
      }
    const Vec dev = x - model->y_prior;
    double prior = 0.0;
    for (int i = 0; i < x.size(); ++i)
      prior += 0.5 * model->eta * model->Lambda[i] * dev[i] * dev[i];
    return graph + prior;
  };
  prob.eval_F = [eps = g.eps](const Vec& x) {
    return (x.array().square() - 1.0).square().sum() / (4.0 * eps);
  };
  prob.grad_F = [eps = g.eps](const Vec& x) {
    return ((x.array().cube() - x.array()) / eps).matrix().eval();
  };
  const SpMat A_op = spec.A_op;
  const Vec b0 = spec.b0;
  prob.grad_H = [A_op, b0](const Vec& x) { return (A_op * x - b0).eval(); };
  prob.subdiff_dist = [A_op, b0](const Vec& x, const Vec& v) {
    return (A_op * x - b0 + v).norm();
  };
  prob.backend = std::move(spec);
  return prob;
}

double gl_energy_monolithic(const GraphGL& g, const Vec& x) {
  double e = 0.0;
  for (int j = 0; j < g.W.outerSize(); ++j)
    for (SpMat::InnerIterator it(g.W, j); it; ++it) {
      const double d = x[it.row()] - x[it.col()];
      e += 0.5 * g.eps * it.value() * d * d;
    }
  e += (x.array().square() - 1.0).square().sum() / (4.0 * g.eps);
  for (int i = 0; i < x.size(); ++i) {
    const double d = x[i] - g.y_prior[i];
    e += 0.5 * g.eta * g.Lambda[i] * d * d;
  }
  return e;
}

}  // namespace imexdc
