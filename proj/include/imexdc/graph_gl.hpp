#pragma once

#include "imexdc/problem.hpp"
#include "imexdc/types.hpp"

namespace imexdc {

// Graph Ginzburg-Landau model
//   E(x) = sum_{i,j} (eps/2) w_ij (x_i - x_j)^2 + (1/eps) W(x)
//          + (eta/2) sum_i Lambda_i (x_i - y_i)^2
// with the double well W(x) = (1/4) sum (x_i^2 - 1)^2. The pair sum runs over
// ordered pairs, so the quadratic part is eps x^T L x with L = D - W.
struct GraphGL {
  SpMat W;      // symmetric nonnegative weights, zero diagonal
  Vec Lambda;   // 0/1 prior mask
  Vec y_prior;  // +-1 on labeled nodes, 0 elsewhere
  double eps = 10.0;
  double eta = 10.0;
  double box_c = 1.1;  // Lipschitz box: |x_i| <= c along the run
};

// w_ij = K(i,j) N(i,j) with K = exp(-||P_i - P_j||^2 / sigma^2) and N the
// symmetrized k-nearest-neighbor indicator over the feature rows.
// All-identical features degrade to uniform weights with a warning.
SpMat build_graph_weights(const Mat& features, double sigma, int k_nn);

// Median distance over the k-nearest-neighbor pairs; 0 for degenerate input.
double median_knn_distance(const Mat& features, int k_nn);

// (1/eps) max(3 c^2 - 1, 1): bound for the double-well gradient on [-c, c].
double gl_lipschitz(double eps, double box_c);

// H quadratic with A = 2 eps L + eta diag(Lambda), b0 = eta (Lambda . y);
// F = (1/eps) W with f(x) = (1/eps)(x^3 - x); backend: quadratic.
Problem build_graph_gl(const GraphGL& g);

// Direct evaluation of the ordered-pair double sum (independent route for
// consistency checks against the Laplacian form).
double gl_energy_monolithic(const GraphGL& g, const Vec& x);

}  // namespace imexdc
