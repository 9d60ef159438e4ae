#include "imexdc/subproblem.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

#include "imexdc/solver.hpp"

namespace imexdc {

namespace {

double inf_norm(const SpMat& T) {
  Vec row_sum = Vec::Zero(T.rows());
  for (int j = 0; j < T.outerSize(); ++j)
    for (SpMat::InnerIterator it(T, j); it; ++it) row_sum[it.row()] += std::abs(it.value());
  return T.rows() == 0 ? 0.0 : row_sum.maxCoeff();
}

// max_i sum_{j != i} |T_ij|
double gershgorin_offdiag(const SpMat& T) {
  Vec row_sum = Vec::Zero(T.rows());
  for (int j = 0; j < T.outerSize(); ++j)
    for (SpMat::InnerIterator it(T, j); it; ++it)
      if (it.row() != it.col()) row_sum[it.row()] += std::abs(it.value());
  return T.rows() == 0 ? 0.0 : row_sum.maxCoeff();
}

Vec sparse_diagonal(const SpMat& T) {
  Vec d = Vec::Zero(T.rows());
  for (int j = 0; j < T.outerSize(); ++j)
    for (SpMat::InnerIterator it(T, j); it; ++it)
      if (it.row() == it.col()) d[it.row()] = it.value();
  return d;
}

}  // namespace

double prox_l1(double v, double t) {
  const double shrunk = std::abs(v) - t;
  return shrunk > 0.0 ? std::copysign(shrunk, v) : 0.0;
}

double prox_huber(double v, double t, double gamma) {
  if (std::abs(v) <= gamma + t) return v / (1.0 + t / gamma);
  return v - std::copysign(t, v);
}

Preconditioner Preconditioner::build(PrecondKind kind, const SpMat& T, double param) {
  if (T.rows() != T.cols()) throw std::invalid_argument("preconditioner: T not square");
  Preconditioner p;
  p.kind_ = kind;
  p.T_ = T;
  switch (kind) {
    case PrecondKind::exact: {
      p.factor_ = std::make_shared<Eigen::SimplicialLDLT<SpMat>>(T);
      if (p.factor_->info() != Eigen::Success)
        throw std::runtime_error("preconditioner: singular T in exact solve");
      break;
    }
    case PrecondKind::richardson: {
      p.param_ = param >= 0.0 ? param : inf_norm(T);  // Gershgorin upper bound on lambda_max(T)
      if (p.param_ <= 0.0) throw std::invalid_argument("preconditioner: richardson lambda <= 0");
      p.mbb_diag_ = Vec::Constant(T.rows(), p.param_);
      break;
    }
    case PrecondKind::jacobi_perturbed: {
      p.param_ = param >= 0.0 ? param : gershgorin_offdiag(T);
      p.mbb_diag_ = sparse_diagonal(T).array() + p.param_;
      if ((p.mbb_diag_.array() <= 0.0).any())
        throw std::runtime_error("preconditioner: nonpositive Mbb diagonal");
      break;
    }
    case PrecondKind::sgs: {
      p.dinv_ = sparse_diagonal(T);
      if ((p.dinv_.array() <= 0.0).any())
        throw std::runtime_error("preconditioner: SGS needs a positive diagonal");
      p.dinv_ = p.dinv_.cwiseInverse();
      break;
    }
    case PrecondKind::explicit_M:
      throw std::invalid_argument("preconditioner: explicit_M requires build_explicit");
  }
  return p;
}

Preconditioner Preconditioner::build_explicit(const SpMat& T, const SpMat& M) {
  if (T.rows() != M.rows() || T.cols() != M.cols())
    throw std::invalid_argument("preconditioner: M shape mismatch");
  Preconditioner p;
  p.kind_ = PrecondKind::explicit_M;
  p.T_ = T;
  p.explicit_M_ = M;
  SpMat mbb = T + M;
  p.factor_ = std::make_shared<Eigen::SimplicialLDLT<SpMat>>(mbb);
  if (p.factor_->info() != Eigen::Success)
    throw std::runtime_error("preconditioner: singular Mbb = T + M");
  return p;
}

Vec Preconditioner::solve_mbb(const Vec& r) const {
  switch (kind_) {
    case PrecondKind::exact:
    case PrecondKind::explicit_M:
      return factor_->solve(r);
    case PrecondKind::richardson:
    case PrecondKind::jacobi_perturbed:
      return r.cwiseQuotient(mbb_diag_);
    case PrecondKind::sgs: {
      // Mbb = (D + L) D^{-1} (D + L^T)
      Vec w = T_.triangularView<Eigen::Lower>().solve(r);
      w = w.cwiseQuotient(dinv_);  // multiply by D
      return T_.triangularView<Eigen::Upper>().solve(w);
    }
  }
  return r;
}

Vec Preconditioner::apply_T(const Vec& v) const { return T_ * v; }

Vec Preconditioner::apply_M(const Vec& v) const {
  switch (kind_) {
    case PrecondKind::exact:
      return Vec::Zero(v.size());
    case PrecondKind::richardson:
    case PrecondKind::jacobi_perturbed:
      return mbb_diag_.cwiseProduct(v) - T_ * v;
    case PrecondKind::sgs: {
      // M = Mbb - T = L D^{-1} L^T
      Vec u = T_.triangularView<Eigen::StrictlyUpper>() * v;
      u = u.cwiseProduct(dinv_);
      return T_.triangularView<Eigen::StrictlyLower>() * u;
    }
    case PrecondKind::explicit_M:
      return explicit_M_ * v;
  }
  return v;
}

Mat Preconditioner::dense_M() const {
  const int n = dim();
  Mat M(n, n);
  Vec e = Vec::Zero(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    M.col(j) = apply_M(e);
    e[j] = 0.0;
  }
  return M;
}

SpMat build_T(const QuadraticSpec& quad, double delta_t) {
  const int n = static_cast<int>(quad.A_op.rows());
  SpMat ident(n, n);
  ident.setIdentity();
  SpMat T = quad.A_op + SpMat((2.0 / delta_t) * ident);
  T.makeCompressed();
  return T;
}

Vec build_rhs(const Vec& b0, const IterState& state, double delta_t) {
  return b0 + linearize_Fn_at_xn(state, delta_t) + (2.0 / delta_t) * state.x_n;
}

std::pair<SpMat, Vec> build_T_and_rhs(const QuadraticSpec& quad, const IterState& state,
                                      double delta_t) {
  return {build_T(quad, delta_t), build_rhs(quad.b0, state, delta_t)};
}

Vec solve_quadratic_preconditioned(const Preconditioner& P, const Vec& b_n, const Vec& y_n,
                                   int inner_iters) {
  if (inner_iters < 1) throw std::invalid_argument("solve_quadratic: inner_iters < 1");
  Vec z = y_n;
  for (int j = 0; j < inner_iters; ++j) {
    Vec r = b_n - P.apply_T(z);
    z += P.solve_mbb(r);
    if (!z.allFinite()) throw std::runtime_error("solve_quadratic: non-finite sweep value");
  }
  return z;
}

Vec solve_separable(const SeparablePenalty& penalty, const LsqData& data, const Vec& x_n,
                    const Vec& y_n, const Vec& g_n, double delta_t) {
  const Eigen::Index k = data.A.cols();
  if (x_n.size() != k || y_n.size() != k || g_n.size() != k)
    throw std::invalid_argument("solve_separable: dimension mismatch");

  const double kappa = data.lambda_max + 2.0 / delta_t;
  // M y = lambda_max y - A^T (A y); the A^T A parts of H and the M-weighted
  // proximal term cancel, leaving a diagonal quadratic.
  Vec c = g_n + data.atb + data.lambda_max * y_n - data.A.transpose() * (data.A * y_n) +
          (2.0 / delta_t) * x_n;

  const double t = penalty.mu / kappa;
  Vec x(k);
  if (penalty.kind == PenaltyKind::l1) {
    for (Eigen::Index i = 0; i < k; ++i) x[i] = prox_l1(c[i] / kappa, t);
  } else {
    for (Eigen::Index i = 0; i < k; ++i) x[i] = prox_huber(c[i] / kappa, t, penalty.gamma);
  }
  if (!x.allFinite()) throw std::runtime_error("solve_separable: non-finite output");
  return x;
}

bool psd_gap_check(const Preconditioner& P, const SpMat& T) {
  if (P.kind() == PrecondKind::jacobi_perturbed) {
    // Gershgorin sufficiency: omega at least the max off-diagonal row sum
    // makes Mbb - T diagonally dominant with nonnegative diagonal.
    if (P.param() >= gershgorin_offdiag(T) * (1.0 - 1e-12)) return true;
  }
  Mat M = P.dense_M();
  M = 0.5 * (M + M.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return false;
  const double min_eig = es.eigenvalues().minCoeff();
  return min_eig >= -1e-10 * inf_norm(T);
}

}  // namespace imexdc
