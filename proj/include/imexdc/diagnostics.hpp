#pragma once

#include <functional>

#include "imexdc/problem.hpp"
#include "imexdc/solver.hpp"
#include "imexdc/types.hpp"

namespace imexdc {

using LinearOp = std::function<Vec(const Vec&)>;

// Constants of the per-step descent estimate; M2 > 0 characterizes the
// feasible step-size regime dt < 8/(77 L).
struct DescentConstants {
  double M1 = 0.0;        // (1 - beta_n) / 2
  double M2 = 0.0;        // 4/(11 dt) - (7/2) L
  double coeff_xy = 0.0;  // 9/(11 dt) + (3/2) L
  double coeff_yz = 0.0;  // 2/(11 dt) + L/2

  static DescentConstants from(double delta_t, double L, double beta_n = 0.0);
};

// A(x,y,z) = E(x) + (9/(11 dt) + 3L/2) ||x-y||^2 + (2/(11 dt) + L/2) ||y-z||^2
//            + ||x-y||_M^2 / 2. Non-increasing along feasible runs.
double aux_energy_A(const Vec& x, const Vec& y, const Vec& z, const Problem& problem,
                    double delta_t, const LinearOp& M_op);

// dist(0, dH(x+) + (12/(11 dt))[(11/6) x+ - 3 x^n + (3/2) x^{n-1} - (1/3) x^{n-2}]
//        + M (x+ - y^n) + 3 f(x^n) - 3 f(x^{n-1}) + f(x^{n-2}))
// using the f values cached in the state.
double optimality_residual(const Vec& x_plus, const IterState& state, const Problem& problem,
                           const LinearOp& M_op, const Vec& y_n, double delta_t);

// dist(0, dH(x) + f(x)): criticality of E at x.
double criticality_residual(const Problem& problem, const Vec& x);

BinVec binarize(const Vec& x, double threshold = 0.0);  // x > threshold -> 1

// 2 |X cap Y| / (|X| + |Y|); 1 when both masks are empty.
double dice(const BinVec& seg, const BinVec& truth);

// Count of |x_i| > rel_tol * max_j |x_j|; rel_tol = 0 counts exact nonzeros.
int sparsity_count(const Vec& x, double rel_tol);

}  // namespace imexdc
