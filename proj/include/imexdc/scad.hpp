#pragma once

#include <memory>

#include "imexdc/problem.hpp"
#include "imexdc/types.hpp"

namespace imexdc {

struct ScadParams {
  double mu = 0.033;
  double theta = 10.0;   // > 2
  double gamma = 0.0165; // Huber knee (huber variant); table presets use 0.5 mu
  void validate() const; // theta > 2, mu >= 0, gamma > 0
};

// Smooth correction of the SCAD penalty, tilde_P(x) = mu ||x||_1 - P(x):
//   0                        if |x| <= mu
//   (|x| - mu)^2 / (2(theta-1))   if mu < |x| < theta mu
//   mu |x| - mu^2 (theta+1)/2      if |x| >= theta mu
// with gradient sign(x) [min{theta mu, |x|} - mu]_+ / (theta - 1).
double tilde_p_scalar(double x, const ScadParams& p);
double tilde_P_eval(const Vec& x, const ScadParams& p);
double tilde_p_grad_scalar(double x, const ScadParams& p);
Vec tilde_P_grad(const Vec& x, const ScadParams& p);

// Huber function: x^2/(2 gamma) for |x| <= gamma, |x| - gamma/2 otherwise.
double huber_scalar(double x, double gamma);
double huber_eval(const Vec& x, double gamma);
double huber_grad_scalar(double x, double gamma);

// Closed piecewise form of the SCAD penalty P (the mu ||x||_1 - tilde_P route
// is the library path; this one exists as an independent evaluator).
double scad_penalty_scalar(double x, const ScadParams& p);
double scad_penalty_eval(const Vec& x, const ScadParams& p);

// Four-branch modified penalty p_M = mu Huber_gamma - tilde_P, valid in the
// gamma < mu regime; constant mu (mu (theta+1) - gamma)/2 beyond theta mu.
double huber_scad_scalar(double x, const ScadParams& p);
double huber_scad_eval(const Vec& x, const ScadParams& p);

double scad_lipschitz(const ScadParams& p);  // 1/(theta - 1)

// H(x) = mu r(x) + ||Ax - b||^2 / 2 (r = l1 or Huber), F(x) = -tilde_P(x),
// backend: separable with M = lambda_max I - A^T A.
Problem build_scad_ls(std::shared_ptr<const LsqData> data, const ScadParams& p,
                      PenaltyKind variant);

}  // namespace imexdc
