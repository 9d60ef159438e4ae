#include "imexdc/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "imexdc/diagnostics.hpp"
#include "imexdc/subproblem.hpp"

namespace imexdc {

IterState IterState::collapsed(const Vec& x0, const Vec& f0) {
  IterState st;
  st.x_n = st.x_nm1 = st.x_nm2 = x0;
  st.f_n = st.f_nm1 = st.f_nm2 = f0;
  return st;
}

void IterState::push(Vec x_new, Vec f_new) {
  x_nm2 = std::move(x_nm1);
  x_nm1 = std::move(x_n);
  x_n = std::move(x_new);
  f_nm2 = std::move(f_nm1);
  f_nm1 = std::move(f_n);
  f_n = std::move(f_new);
  ++n;
}

double step_size_bound(double L) {
  if (L <= 0.0) return std::numeric_limits<double>::infinity();
  return 8.0 / (77.0 * L);
}

double default_delta_t(double L) {
  const double bound = step_size_bound(L);
  if (!std::isfinite(bound)) return 1.0;
  return bound * (1.0 - 1e-12);
}

Vec linearize_Fn_at_xn(const IterState& state, double delta_t) {
  const double c1 = 14.0 / (11.0 * delta_t);
  const double c2 = 4.0 / (11.0 * delta_t);
  return c1 * (state.x_n - state.x_nm1) - c2 * (state.x_nm1 - state.x_nm2) - 3.0 * state.f_n +
         3.0 * state.f_nm1 - state.f_nm2;
}

ExtrapolationStep extrapolate(const IterState& state) {
  ExtrapolationStep out;
  out.beta_n = (state.theta_nm1 - 1.0) / state.theta_n;
  out.y_n = state.x_n + out.beta_n * (state.x_n - state.x_nm1);
  return out;
}

void advance_theta(IterState& state) {
  const double next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * state.theta_n * state.theta_n));
  state.theta_nm1 = state.theta_n;
  state.theta_n = next;
}

bool maybe_restart(IterState& state, const Vec& y_n, const Vec& x_np1, RestartRule rule) {
  const double trigger = rule == RestartRule::paper_literal
                             ? (y_n - state.x_n).dot(state.x_n - state.x_nm1)
                             : (y_n - x_np1).dot(x_np1 - state.x_n);
  if (trigger > 0.0) {
    state.theta_nm1 = state.theta_n = 1.0;
    return true;
  }
  return false;
}

bool termination_fired(const TerminationRule& rule, const Vec& x_prev, const Vec& x_next,
                       const Problem& problem) {
  switch (rule.kind) {
    case TerminationKind::relative_step: {
      const double step = (x_next - x_prev).norm();
      return step / std::max(1.0, x_next.norm()) < rule.tolerance;
    }
    case TerminationKind::step_norm:
      return (x_next - x_prev).norm() < rule.tolerance;
    case TerminationKind::grad_norm: {
      const Vec grad = problem.grad_H(x_next) + problem.grad_F(x_next);
      return grad.norm() < rule.tolerance;
    }
    case TerminationKind::dice_bound:
      return dice(binarize(x_next), rule.truth) >= rule.tolerance;
  }
  return false;
}

bool check_termination(const TerminationRule& rule, const IterState& state, const Vec& x_np1,
                       const Problem& problem) {
  return termination_fired(rule, state.x_n, x_np1, problem);
}

const char* termination_kind_name(TerminationKind kind) {
  switch (kind) {
    case TerminationKind::relative_step: return "relative_step";
    case TerminationKind::step_norm: return "step_norm";
    case TerminationKind::grad_norm: return "grad_norm";
    case TerminationKind::dice_bound: return "dice_bound";
  }
  return "unknown";
}

namespace {

void validate_termination(const TerminationRule& rule, const Problem& problem) {
  if (rule.kind == TerminationKind::grad_norm && !problem.smooth())
    throw std::invalid_argument("grad_norm termination requires a smooth objective");
  if (rule.kind == TerminationKind::dice_bound && rule.truth.size() != problem.dim)
    throw std::invalid_argument("dice_bound termination requires a truth mask of problem size");
}

}  // namespace

RunRecord run(const Problem& problem, const SolverConfig& config, const Vec& x0) {
  if (x0.size() != problem.dim) throw std::invalid_argument("run: x0 dimension mismatch");
  if (!(config.alpha > 4.0 / 77.0)) throw std::invalid_argument("run: alpha must exceed 4/77");

  const double L = problem.lipschitz;
  const double bound = step_size_bound(L);
  const double dt = config.delta_t > 0.0 ? config.delta_t : default_delta_t(L);
  if (!(dt > 0.0) || dt >= bound) {
    std::ostringstream msg;
    msg << "run: delta_t = " << dt << " violates delta_t < 8/(77 L) = " << bound;
    throw std::invalid_argument(msg.str());
  }
  validate_termination(config.termination, problem);

  const auto* sep = std::get_if<SeparableSpec>(&problem.backend);
  const auto* quad = std::get_if<QuadraticSpec>(&problem.backend);

  Preconditioner precond;
  if (quad) {
    if (quad->A_op.rows() != problem.dim)
      throw std::invalid_argument("run: backend operator dimension mismatch");
    precond = Preconditioner::build(config.precond, build_T(*quad, dt), config.precond_param);
  }

  LinearOp M_op;
  if (config.aux_energy_M_zero) {
    M_op = [](const Vec& v) { return Vec::Zero(v.size()); };
  } else if (sep) {
    const auto data = sep->data;
    M_op = [data](const Vec& v) {
      return (data->lambda_max * v - data->A.transpose() * (data->A * v)).eval();
    };
  } else {
    M_op = [&precond](const Vec& v) { return precond.apply_M(v); };
  }

  auto solve_step = [&](const IterState& st, const Vec& y, const Vec& g) {
    if (sep) return solve_separable(sep->penalty, *sep->data, st.x_n, y, g, dt);
    Vec b_n = build_rhs(quad->b0, st, dt);
    return solve_quadratic_preconditioned(precond, b_n, y, config.inner_iters);
  };

  const auto t0 = std::chrono::steady_clock::now();

  IterState st = IterState::collapsed(x0, problem.grad_F(x0));
  if (!st.f_n.allFinite()) throw std::runtime_error("run: non-finite gradient at x0");

  RunRecord rec;
  rec.max_abs_iterate = x0.size() ? x0.cwiseAbs().maxCoeff() : 0.0;
  if (config.record_iterates) rec.iterates.push_back(x0);
  rec.trace.reserve(std::min(config.max_iter, 4096));

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const bool momentum = config.extrapolation == Extrapolation::nesterov_restart;

  for (int n = 0; n < config.max_iter; ++n) {
    ExtrapolationStep ex;
    if (momentum) {
      ex = extrapolate(st);
    } else {
      ex.y_n = st.x_n;
      ex.beta_n = 0.0;
    }
    const Vec g = linearize_Fn_at_xn(st, dt);
    Vec x_new = solve_step(st, ex.y_n, g);
    if (!x_new.allFinite()) throw std::runtime_error("run: non-finite iterate (divergence)");

    bool restarted = false;
    if (momentum) {
      restarted = maybe_restart(st, ex.y_n, x_new, config.restart_rule);
      if (restarted && config.redo_step_on_restart) {
        x_new = solve_step(st, st.x_n, g);
        if (!x_new.allFinite()) throw std::runtime_error("run: non-finite iterate (divergence)");
      }
      advance_theta(st);
    }

    TraceRow row;
    row.step_norm = (x_new - st.x_n).norm();
    row.restarted = restarted;
    if (config.record_energy) {
      row.energy = problem.energy(x_new);
      row.aux_energy = aux_energy_A(x_new, st.x_n, st.x_nm1, problem, dt, M_op);
    } else {
      row.energy = nan;
      row.aux_energy = nan;
    }

    const bool stop = termination_fired(config.termination, st.x_n, x_new, problem);

    rec.max_abs_iterate = std::max(rec.max_abs_iterate, x_new.cwiseAbs().maxCoeff());
    if (config.record_iterates) rec.iterates.push_back(x_new);
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

}  // namespace imexdc
