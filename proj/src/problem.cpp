#include "imexdc/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace imexdc {

double estimate_lambda_max(const Mat& A, double rel_tol, int max_iter) {
  const Eigen::Index k = A.cols();
  if (k == 0) throw std::invalid_argument("estimate_lambda_max: empty matrix");

  Vec v = Vec::Ones(k) / std::sqrt(static_cast<double>(k));
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vec w = A.transpose() * (A * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;  // A^T A v = 0 with v spanning ones: rank-deficient corner
    w /= norm;
    const double lambda_new = w.dot(A.transpose() * (A * w));
    if (it > 0 && std::abs(lambda_new - lambda) <= rel_tol * std::abs(lambda_new)) {
      return lambda_new * (1.0 + 1e-6);
    }
    lambda = lambda_new;
    v = w;
  }
  throw std::runtime_error("estimate_lambda_max: power iteration did not settle");
}

std::shared_ptr<const LsqData> make_lsq_data(Mat A, Vec b) {
  if (A.rows() != b.size()) throw std::invalid_argument("make_lsq_data: A rows != b size");
  auto data = std::make_shared<LsqData>();
  data->lambda_max = estimate_lambda_max(A);
  data->atb = A.transpose() * b;
  data->A = std::move(A);
  data->b = std::move(b);
  return data;
}

}  // namespace imexdc
