#pragma once

#include <string>
#include <vector>

#include "imexdc/problem.hpp"
#include "imexdc/types.hpp"

namespace imexdc {

enum class Extrapolation { none, nesterov_restart };

// paper_literal: restart iff <y^n - x^n, x^n - x^{n-1}> > 0, which equals
// beta_n ||x^n - x^{n-1}||^2 > 0 and fires on every momentum step.
// post_step (default): restart iff <y^n - x^{n+1}, x^{n+1} - x^n> > 0.
enum class RestartRule { paper_literal, post_step };

enum class TerminationKind { relative_step, step_norm, grad_norm, dice_bound };

enum class PrecondKind { exact, richardson, jacobi_perturbed, sgs, explicit_M };

struct TerminationRule {
  TerminationKind kind = TerminationKind::relative_step;
  double tolerance = 1e-12;  // dice_bound: the required DICE value (0.98)
  BinVec truth;              // dice_bound only
};

struct SolverConfig {
  double delta_t = 0.0;  // <= 0 picks (8/(77 L)) * (1 - 1e-12)
  double alpha = 2.0;    // must exceed 4/77; does not affect the iterates
  Extrapolation extrapolation = Extrapolation::nesterov_restart;
  RestartRule restart_rule = RestartRule::post_step;
  int max_iter = 100000;
  TerminationRule termination;
  int inner_iters = 1;  // preconditioned sweeps per subproblem
  PrecondKind precond = PrecondKind::exact;
  double precond_param = -1.0;  // richardson lambda / jacobi shift; < 0 uses the Gershgorin default
  bool redo_step_on_restart = false;  // recompute x^{n+1} with momentum reset instead of keeping it
  bool record_energy = true;          // fill E and A columns of the trace
  bool record_iterates = false;
  bool aux_energy_M_zero = false;  // account A(x,y,z) with M = 0 instead of the k=1 sweep weight
};

// Rolling three-point history of Algorithm iterates with cached f values and
// the extrapolation recursion state.
struct IterState {
  Vec x_n, x_nm1, x_nm2;
  Vec f_n, f_nm1, f_nm2;
  double theta_n = 1.0;
  double theta_nm1 = 1.0;
  int n = 0;

  static IterState collapsed(const Vec& x0, const Vec& f0);
  void push(Vec x_new, Vec f_new);  // shift history by one step
};

struct TraceRow {
  double energy = 0.0;      // E(x^{n+1})
  double aux_energy = 0.0;  // A(x^{n+1}, x^n, x^{n-1}); NaN when not recorded
  double step_norm = 0.0;   // ||x^{n+1} - x^n||
  bool restarted = false;
};

enum class RunStatus { converged, iteration_cap };

struct RunRecord {
  RunStatus status = RunStatus::iteration_cap;
  int iterations = 0;
  double wall_time = 0.0;
  std::vector<TraceRow> trace;
  Vec final_x;
  double max_abs_iterate = 0.0;          // over x^0..x^N, for box-bound Lipschitz guards
  std::vector<Vec> iterates;             // filled when record_iterates
  std::string terminated_by = "max_iter";
};

// Upper bounds on the step size; infinity when L = 0.
double step_size_bound(double L);          // 8 / (77 L)
double default_delta_t(double L);          // bound * (1 - 1e-12)

// grad F^n at x^n:
//   g^n = (14/(11 dt)) (x^n - x^{n-1}) - (4/(11 dt)) (x^{n-1} - x^{n-2})
//         - 3 f(x^n) + 3 f(x^{n-1}) - f(x^{n-2}).
// The alpha quadratic term of F^n has zero gradient at x^n, so g^n does not
// depend on alpha.
Vec linearize_Fn_at_xn(const IterState& state, double delta_t);

// y^n = x^n + beta_n (x^n - x^{n-1}), beta_n = (theta_{n-1} - 1)/theta_n.
struct ExtrapolationStep {
  Vec y_n;
  double beta_n = 0.0;
};
ExtrapolationStep extrapolate(const IterState& state);

// Advances theta_{n+1} = (1 + sqrt(1 + 4 theta_n^2)) / 2.
void advance_theta(IterState& state);

// Returns true and resets theta_{n-1} = theta_n = 1 when the rule fires.
bool maybe_restart(IterState& state, const Vec& y_n, const Vec& x_np1, RestartRule rule);

bool check_termination(const TerminationRule& rule, const IterState& state, const Vec& x_np1,
                       const Problem& problem);
bool termination_fired(const TerminationRule& rule, const Vec& x_prev, const Vec& x_next,
                       const Problem& problem);

// The main loop: extrapolate, linearize F^n, solve the subproblem through the
// problem's backend, apply the restart rule, stop on the termination rule or
// the iteration cap. Throws on dimension mismatch, infeasible delta_t, or a
// non-finite iterate.
RunRecord run(const Problem& problem, const SolverConfig& config, const Vec& x0);

const char* termination_kind_name(TerminationKind kind);

}  // namespace imexdc
