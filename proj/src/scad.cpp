#include "imexdc/scad.hpp"

#include <cmath>
#include <stdexcept>

namespace imexdc {

void ScadParams::validate() const {
  if (!(theta > 2.0)) throw std::invalid_argument("scad: theta must exceed 2");
  if (mu < 0.0) throw std::invalid_argument("scad: mu must be nonnegative");
  if (!(gamma > 0.0)) throw std::invalid_argument("scad: gamma must be positive");
}

double tilde_p_scalar(double x, const ScadParams& p) {
  const double a = std::abs(x);
  if (a <= p.mu) return 0.0;
  if (a < p.theta * p.mu) {
    const double d = a - p.mu;
    return d * d / (2.0 * (p.theta - 1.0));
  }
  return p.mu * a - p.mu * p.mu * (p.theta + 1.0) / 2.0;
}

double tilde_P_eval(const Vec& x, const ScadParams& p) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) sum += tilde_p_scalar(x[i], p);
  return sum;
}

double tilde_p_grad_scalar(double x, const ScadParams& p) {
  const double clipped = std::min(p.theta * p.mu, std::abs(x)) - p.mu;
  if (clipped <= 0.0) return 0.0;
  return std::copysign(clipped / (p.theta - 1.0), x);
}

Vec tilde_P_grad(const Vec& x, const ScadParams& p) {
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = tilde_p_grad_scalar(x[i], p);
  return g;
}

double huber_scalar(double x, double gamma) {
  const double a = std::abs(x);
  if (a <= gamma) return a * a / (2.0 * gamma);
  return a - gamma / 2.0;
}

double huber_eval(const Vec& x, double gamma) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) sum += huber_scalar(x[i], gamma);
  return sum;
}

double huber_grad_scalar(double x, double gamma) {
  if (std::abs(x) <= gamma) return x / gamma;
  return x > 0.0 ? 1.0 : -1.0;
}

double scad_penalty_scalar(double x, const ScadParams& p) {
  const double a = std::abs(x);
  if (a <= p.mu) return p.mu * a;
  if (a < p.theta * p.mu)
    return (2.0 * p.theta * p.mu * a - a * a - p.mu * p.mu) / (2.0 * (p.theta - 1.0));
  return p.mu * p.mu * (p.theta + 1.0) / 2.0;
}

double scad_penalty_eval(const Vec& x, const ScadParams& p) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) sum += scad_penalty_scalar(x[i], p);
  return sum;
}

double huber_scad_scalar(double x, const ScadParams& p) {
  if (p.gamma > p.mu)
    throw std::invalid_argument("huber_scad: the four-branch form needs gamma <= mu");
  const double a = std::abs(x);
  if (a <= p.gamma) return p.mu * a * a / (2.0 * p.gamma);
  if (a <= p.mu) return p.mu * (a - p.gamma / 2.0);
  if (a < p.theta * p.mu) {
    const double d = a - p.mu;
    return p.mu * (a - p.gamma / 2.0) - d * d / (2.0 * (p.theta - 1.0));
  }
  return p.mu * (p.mu * (p.theta + 1.0) - p.gamma) / 2.0;
}

double huber_scad_eval(const Vec& x, const ScadParams& p) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) sum += huber_scad_scalar(x[i], p);
  return sum;
}

double scad_lipschitz(const ScadParams& p) { return 1.0 / (p.theta - 1.0); }

Problem build_scad_ls(std::shared_ptr<const LsqData> data, const ScadParams& p,
                      PenaltyKind variant) {
  p.validate();
  if (!data) throw std::invalid_argument("build_scad_ls: null data");

  Problem prob;
  prob.dim = static_cast<int>(data->A.cols());
  prob.lipschitz = scad_lipschitz(p);

  const double mu = p.mu;
  const double gamma = p.gamma;

  if (variant == PenaltyKind::l1) {
    prob.eval_H = [data, mu](const Vec& x) {
      return mu * x.lpNorm<1>() + 0.5 * (data->A * x - data->b).squaredNorm();
    };
    prob.subdiff_dist = [data, mu](const Vec& x, const Vec& v) {
      const Vec u = data->A.transpose() * (data->A * x - data->b) + v;
      double sq = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        double d;
        if (x[i] != 0.0) {
          d = u[i] + std::copysign(mu, x[i]);
        } else {
          d = std::max(std::abs(u[i]) - mu, 0.0);  // dist to [-mu, mu]
        }
        sq += d * d;
      }
      return std::sqrt(sq);
    };
  } else {
    prob.eval_H = [data, mu, gamma](const Vec& x) {
      return mu * huber_eval(x, gamma) + 0.5 * (data->A * x - data->b).squaredNorm();
    };
    prob.grad_H = [data, mu, gamma](const Vec& x) {
      Vec g = data->A.transpose() * (data->A * x - data->b);
      for (Eigen::Index i = 0; i < x.size(); ++i) g[i] += mu * huber_grad_scalar(x[i], gamma);
      return g;
    };
    prob.subdiff_dist = [grad = prob.grad_H](const Vec& x, const Vec& v) {
      return (grad(x) + v).norm();
    };
  }

  prob.eval_F = [p](const Vec& x) { return -tilde_P_eval(x, p); };
  prob.grad_F = [p](const Vec& x) { return (-tilde_P_grad(x, p)).eval(); };

  SeparableSpec spec;
  spec.penalty = SeparablePenalty{variant, mu, gamma};
  spec.data = std::move(data);
  prob.backend = std::move(spec);
  return prob;
}

}  // namespace imexdc
