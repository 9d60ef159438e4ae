#include "imexdc/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace imexdc {

DescentConstants DescentConstants::from(double delta_t, double L, double beta_n) {
  DescentConstants c;
  c.M1 = 0.5 * (1.0 - beta_n);
  c.M2 = 4.0 / (11.0 * delta_t) - 3.5 * L;
  c.coeff_xy = 9.0 / (11.0 * delta_t) + 1.5 * L;
  c.coeff_yz = 2.0 / (11.0 * delta_t) + 0.5 * L;
  return c;
}

double aux_energy_A(const Vec& x, const Vec& y, const Vec& z, const Problem& problem,
                    double delta_t, const LinearOp& M_op) {
  const auto c = DescentConstants::from(delta_t, problem.lipschitz);
  const Vec xy = x - y;
  const Vec yz = y - z;
  double a = problem.energy(x) + c.coeff_xy * xy.squaredNorm() + c.coeff_yz * yz.squaredNorm();
  if (M_op) a += 0.5 * xy.dot(M_op(xy));
  return a;
}

double optimality_residual(const Vec& x_plus, const IterState& state, const Problem& problem,
                           const LinearOp& M_op, const Vec& y_n, double delta_t) {
  const double c = 12.0 / (11.0 * delta_t);
  Vec v = c * ((11.0 / 6.0) * x_plus - 3.0 * state.x_n + 1.5 * state.x_nm1 -
               (1.0 / 3.0) * state.x_nm2) +
          3.0 * state.f_n - 3.0 * state.f_nm1 + state.f_nm2;
  if (M_op) v += M_op(x_plus - y_n);
  return problem.subdiff_dist(x_plus, v);
}

double criticality_residual(const Problem& problem, const Vec& x) {
  return problem.subdiff_dist(x, problem.grad_F(x));
}

BinVec binarize(const Vec& x, double threshold) {
  BinVec out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = x[i] > threshold ? 1 : 0;
  return out;
}

double dice(const BinVec& seg, const BinVec& truth) {
  if (seg.size() != truth.size()) throw std::invalid_argument("dice: size mismatch");
  long inter = 0, total = 0;
  for (Eigen::Index i = 0; i < seg.size(); ++i) {
    const bool a = seg[i] != 0;
    const bool b = truth[i] != 0;
    inter += (a && b) ? 1 : 0;
    total += (a ? 1 : 0) + (b ? 1 : 0);
  }
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(total);
}

int sparsity_count(const Vec& x, double rel_tol) {
  if (rel_tol < 0.0) throw std::invalid_argument("sparsity_count: rel_tol < 0");
  if (x.size() == 0) return 0;
  const double cut = rel_tol * x.cwiseAbs().maxCoeff();
  int count = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > cut) ++count;
  return count;
}

}  // namespace imexdc
