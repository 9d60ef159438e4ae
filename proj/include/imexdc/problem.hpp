#pragma once

#include <functional>
#include <memory>
#include <variant>

#include "imexdc/types.hpp"

namespace imexdc {

enum class PenaltyKind { l1, huber };

// Separable convex penalty mu * r(x), r = l1 norm or Huber with knee gamma.
struct SeparablePenalty {
  PenaltyKind kind = PenaltyKind::l1;
  double mu = 0.0;
  double gamma = 0.0;  // huber only
};

// Dense least-squares data with the cached largest eigenvalue of A^T A.
struct LsqData {
  Mat A;
  Vec b;
  double lambda_max = 0.0;
  Vec atb;  // A^T b
};

// Backend descriptor: the subproblem of each iteration is solved either in
// closed form (penalized least squares, M = lambda_max I - A^T A) or by a
// preconditioned linear iteration (quadratic H with grad H = A_op x - b0).
struct SeparableSpec {
  SeparablePenalty penalty;
  std::shared_ptr<const LsqData> data;
};

struct QuadraticSpec {
  SpMat A_op;  // symmetric positive semi-definite
  Vec b0;
};

// A composite objective E = H + F with H proper closed convex and F L-smooth.
// All callables are reentrant and the object is immutable after construction,
// so one Problem may be shared across concurrent solves.
struct Problem {
  int dim = 0;
  double lipschitz = 0.0;  // L of grad F

  std::function<double(const Vec&)> eval_H;
  std::function<double(const Vec&)> eval_F;
  std::function<Vec(const Vec&)> grad_F;  // f
  std::function<Vec(const Vec&)> grad_H;  // empty when H is nonsmooth

  // dist(0, dH(x) + v); exact for smooth H, interval arithmetic for l1.
  std::function<double(const Vec&, const Vec&)> subdiff_dist;

  std::variant<SeparableSpec, QuadraticSpec> backend;

  double energy(const Vec& x) const { return eval_H(x) + eval_F(x); }
  bool smooth() const { return static_cast<bool>(grad_H); }
};

// Largest eigenvalue of A^T A by power iteration (relative tolerance, then
// inflated by 1 + 1e-6 so lambda_max I - A^T A stays PSD). Deterministic
// start vector. Throws if the iteration fails to settle within the cap.
double estimate_lambda_max(const Mat& A, double rel_tol = 1e-8, int max_iter = 20000);

// Builds LsqData with lambda_max and A^T b cached.
std::shared_ptr<const LsqData> make_lsq_data(Mat A, Vec b);

}  // namespace imexdc
