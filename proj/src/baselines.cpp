#include "imexdc/baselines.hpp"

#include <Eigen/SparseCholesky>

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "imexdc/subproblem.hpp"

namespace imexdc {

DcSplitting make_dc_splitting(const Problem& problem) {
  DcSplitting split;
  split.energy = [&problem](const Vec& x) { return problem.energy(x); };

  if (const auto* sep = std::get_if<SeparableSpec>(&problem.backend)) {
    const auto data = sep->data;
    const SeparablePenalty pen = sep->penalty;
    const double lam = data->lambda_max;
    // G1 = mu r(x) + (lam/2)||x||^2, G2 = (lam/2)||x||^2 - F(x) - ||Ax-b||^2/2
    split.argmin_g1_linear = [data, pen, lam](const Vec& v) {
      Vec x(v.size());
      const double t = pen.mu / lam;
      if (pen.kind == PenaltyKind::l1) {
        for (Eigen::Index i = 0; i < v.size(); ++i) x[i] = prox_l1(v[i] / lam, t);
      } else {
        for (Eigen::Index i = 0; i < v.size(); ++i) x[i] = prox_huber(v[i] / lam, t, pen.gamma);
      }
      return x;
    };
    split.grad_g2 = [data, lam, f = problem.grad_F](const Vec& x) {
      return (lam * x - f(x) - data->A.transpose() * (data->A * x - data->b)).eval();
    };
    return split;
  }

  const auto& quad = std::get<QuadraticSpec>(problem.backend);
  // G1 = H + (L/2)||x||^2 (solved through a factorization),
  // G2 = (L/2)||x||^2 - F(x), convex on the box the Lipschitz bound covers.
  const double L = problem.lipschitz;
  const int n = problem.dim;
  SpMat ident(n, n);
  ident.setIdentity();
  SpMat shifted = quad.A_op + SpMat(L * ident);
  auto factor = std::make_shared<Eigen::SimplicialLDLT<SpMat>>(shifted);
  if (factor->info() != Eigen::Success)
    throw std::runtime_error("make_dc_splitting: singular shifted operator");
  const Vec b0 = quad.b0;
  split.argmin_g1_linear = [factor, b0](const Vec& v) { return factor->solve(b0 + v).eval(); };
  split.grad_g2 = [L, f = problem.grad_F](const Vec& x) { return (L * x - f(x)).eval(); };
  return split;
}

Vec dca_step(const Vec& x_n, const DcSplitting& split) {
  return split.argmin_g1_linear(split.grad_g2(x_n));
}

Vec bdca_step(const Vec& x_n, const DcSplitting& split, const LineSearchParams& ls) {
  if (ls.lambda_init > ls.lambda_max)
    throw std::invalid_argument("bdca: lambda_init exceeds lambda_max");
  Vec y_tilde = dca_step(x_n, split);
  const Vec d = y_tilde - x_n;
  const double dn2 = d.squaredNorm();
  if (dn2 == 0.0) return y_tilde;

  const double e_tilde = split.energy(y_tilde);
  double lam = ls.lambda_init;
  for (int j = 0; j <= ls.max_backtracks; ++j) {
    const Vec cand = y_tilde + lam * d;
    if (split.energy(cand) <= e_tilde - ls.alpha_ls * lam * lam * dn2) return cand;
    lam *= ls.beta_ls;
  }
  return y_tilde;  // safe descent fallback
}

Vec bapdca_g2(const IterState& state, double delta_t) {
  return (2.0 / (3.0 * delta_t)) * (state.x_n - state.x_nm1) - 2.0 * state.f_n + state.f_nm1;
}

double bapdca_step_bound(double L) {
  if (L <= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 / (3.0 * L);
}

namespace {

RunRecord run_dc_family(const Problem& problem, const TerminationRule& rule, int max_iter,
                        const Vec& x0, bool line_search, const LineSearchParams& ls,
                        bool record_energy) {
  if (x0.size() != problem.dim) throw std::invalid_argument("dca: x0 dimension mismatch");
  const auto t0 = std::chrono::steady_clock::now();
  const DcSplitting split = make_dc_splitting(problem);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  RunRecord rec;
  Vec x = x0;
  rec.max_abs_iterate = x0.size() ? x0.cwiseAbs().maxCoeff() : 0.0;
  for (int n = 0; n < max_iter; ++n) {
    Vec x_new = line_search ? bdca_step(x, split, ls) : dca_step(x, split);
    if (!x_new.allFinite()) throw std::runtime_error("dca: non-finite iterate");
    TraceRow row;
    row.step_norm = (x_new - x).norm();
    row.energy = record_energy ? problem.energy(x_new) : nan;
    row.aux_energy = nan;
    const bool stop = termination_fired(rule, x, x_new, problem);
    rec.max_abs_iterate = std::max(rec.max_abs_iterate, x_new.cwiseAbs().maxCoeff());
    x = std::move(x_new);
    rec.trace.push_back(row);
    if (stop) {
      rec.status = RunStatus::converged;
      rec.terminated_by = termination_kind_name(rule.kind);
      break;
    }
  }
  rec.iterations = static_cast<int>(rec.trace.size());
  rec.final_x = std::move(x);
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace

RunRecord run_dca(const Problem& problem, const TerminationRule& rule, int max_iter, const Vec& x0,
                  bool record_energy) {
  return run_dc_family(problem, rule, max_iter, x0, false, LineSearchParams{}, record_energy);
}

RunRecord run_bdca(const Problem& problem, const TerminationRule& rule, int max_iter, const Vec& x0,
                   const LineSearchParams& ls, bool record_energy) {
  return run_dc_family(problem, rule, max_iter, x0, true, ls, record_energy);
}

RunRecord run_bapdca(const Problem& problem, const SolverConfig& config, const Vec& x0) {
  if (x0.size() != problem.dim) throw std::invalid_argument("bapdca: x0 dimension mismatch");
  const double L = problem.lipschitz;
  const double bound = bapdca_step_bound(L);
  const double dt = config.delta_t > 0.0
                        ? config.delta_t
                        : (std::isfinite(bound) ? bound * (1.0 - 1e-12) : 1.0);
  if (!(dt > 0.0) || dt >= bound) {
    std::ostringstream msg;
    msg << "bapdca: delta_t = " << dt << " violates delta_t < 2/(3 L) = " << bound;
    throw std::invalid_argument(msg.str());
  }

  const auto* sep = std::get_if<SeparableSpec>(&problem.backend);
  const auto* quad = std::get_if<QuadraticSpec>(&problem.backend);
  Preconditioner precond;
  if (quad) precond = Preconditioner::build(config.precond, build_T(*quad, dt), config.precond_param);

  const auto t0 = std::chrono::steady_clock::now();
  IterState st = IterState::collapsed(x0, problem.grad_F(x0));
  const double nan = std::numeric_limits<double>::quiet_NaN();

  RunRecord rec;
  rec.max_abs_iterate = x0.size() ? x0.cwiseAbs().maxCoeff() : 0.0;
  for (int n = 0; n < config.max_iter; ++n) {
    const Vec g2 = bapdca_g2(st, dt);
    Vec x_new;
    if (sep) {
      x_new = solve_separable(sep->penalty, *sep->data, st.x_n, st.x_n, g2, dt);
    } else {
      const Vec b_n = quad->b0 + g2 + (2.0 / dt) * st.x_n;
      x_new = solve_quadratic_preconditioned(precond, b_n, st.x_n, config.inner_iters);
    }
    if (!x_new.allFinite()) throw std::runtime_error("bapdca: non-finite iterate");

    TraceRow row;
    row.step_norm = (x_new - st.x_n).norm();
    row.energy = config.record_energy ? problem.energy(x_new) : nan;
    row.aux_energy = nan;
    const bool stop = termination_fired(config.termination, st.x_n, x_new, problem);
    rec.max_abs_iterate = std::max(rec.max_abs_iterate, x_new.cwiseAbs().maxCoeff());
    st.push(std::move(x_new), Vec());
    st.f_n = problem.grad_F(st.x_n);
    rec.trace.push_back(row);
    if (stop) {
      rec.status = RunStatus::converged;
      rec.terminated_by = termination_kind_name(config.termination.kind);
      break;
    }
  }
  rec.iterations = static_cast<int>(rec.trace.size());
  rec.final_x = st.x_n;
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::dca: return "dca";
    case Algorithm::bdca: return "bdca";
    case Algorithm::bapdca: return "bapdca";
    case Algorithm::threebapdca: return "3bapdca";
    case Algorithm::threebapdca_e: return "3bapdca_e";
  }
  return "unknown";
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "dca") return Algorithm::dca;
  if (name == "bdca") return Algorithm::bdca;
  if (name == "bapdca") return Algorithm::bapdca;
  if (name == "3bapdca") return Algorithm::threebapdca;
  if (name == "3bapdca_e") return Algorithm::threebapdca_e;
  throw std::invalid_argument("unknown algorithm: " + name);
}

RunRecord run_algorithm(Algorithm a, const Problem& problem, SolverConfig config, const Vec& x0,
                        const LineSearchParams& ls) {
  switch (a) {
    case Algorithm::dca:
      return run_dca(problem, config.termination, config.max_iter, x0, config.record_energy);
    case Algorithm::bdca:
      return run_bdca(problem, config.termination, config.max_iter, x0, ls, config.record_energy);
    case Algorithm::bapdca:
      return run_bapdca(problem, config, x0);
    case Algorithm::threebapdca:
      config.extrapolation = Extrapolation::none;
      return run(problem, config, x0);
    case Algorithm::threebapdca_e:
      config.extrapolation = Extrapolation::nesterov_restart;
      return run(problem, config, x0);
  }
  throw std::invalid_argument("run_algorithm: bad algorithm");
}

}  // namespace imexdc
