#pragma once

#include <functional>
#include <string>

#include "imexdc/problem.hpp"
#include "imexdc/solver.hpp"
#include "imexdc/types.hpp"

namespace imexdc {

struct LineSearchParams {
  double lambda_max = 5.0;
  double lambda_init = 0.618 * 5.0;
  double alpha_ls = 0.2;  // in (0,1)
  double beta_ls = 0.8;   // in (0,1)
  int max_backtracks = 50;
};

// Explicit DC splitting E = G1 - G2 with a closed-form (or factorized)
// linearized step x = argmin G1(x) - <v, x>.
struct DcSplitting {
  std::function<Vec(const Vec&)> argmin_g1_linear;
  std::function<Vec(const Vec&)> grad_g2;
  std::function<double(const Vec&)> energy;
};

// SCAD least squares: G1 = mu r(x) + (lambda_A/2)||x||^2 (coordinatewise prox),
// G2 = (lambda_A/2)||x||^2 + tilde_P(x) - ||Ax-b||^2/2.
// Graph GL: G1 = H + (L/2)||x||^2 (factorized solve),
// G2 = (L/2)||x||^2 - (1/eps) W(x).
DcSplitting make_dc_splitting(const Problem& problem);

Vec dca_step(const Vec& x_n, const DcSplitting& split);

// DCA point, then an Armijo-type backtracking along d = y~ - x^n:
// accept y~ + lambda d once E(y~ + lambda d) <= E(y~) - alpha_ls lambda^2 ||d||^2,
// falling back to y~ when backtracks run out.
Vec bdca_step(const Vec& x_n, const DcSplitting& split, const LineSearchParams& ls);

// Second-order linearization
// g2^n = (2/(3 dt))(x^n - x^{n-1}) - 2 f(x^n) + f(x^{n-1}).
Vec bapdca_g2(const IterState& state, double delta_t);
double bapdca_step_bound(double L);  // 2/(3 L)

RunRecord run_dca(const Problem& problem, const TerminationRule& rule, int max_iter,
                  const Vec& x0, bool record_energy = true);
RunRecord run_bdca(const Problem& problem, const TerminationRule& rule, int max_iter,
                   const Vec& x0, const LineSearchParams& ls = {}, bool record_energy = true);

// Preconditioned second-order scheme: y^n = x^n (no extrapolation, no restart),
// same subproblem backends as the third-order loop, dt < 2/(3 L).
RunRecord run_bapdca(const Problem& problem, const SolverConfig& config, const Vec& x0);

enum class Algorithm { dca, bdca, bapdca, threebapdca, threebapdca_e };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

// Uniform entry point used by the CLI and the benchmark harness. For
// dca/bdca only the termination rule and iteration cap of the config apply.
RunRecord run_algorithm(Algorithm a, const Problem& problem, SolverConfig config, const Vec& x0,
                        const LineSearchParams& ls = {});

}  // namespace imexdc
