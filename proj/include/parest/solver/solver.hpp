#ifndef PAREST_SOLVER_SOLVER_HPP_
#define PAREST_SOLVER_SOLVER_HPP_

#include <string>
#include <vector>

#include "parest/solver/merit.hpp"
#include "parest/solver/rollout.hpp"

namespace parest {

struct SolverConfig {
  int max_iter = 100;
  RolloutKind rollout = RolloutKind::Multiple;
  ArrivalMethod arrival = ArrivalMethod::Nullspace;
  int linesearch_steps = 11;  // alpha in {1, 1/2, ..., 2^-10}
  double mu_init = 1e-9;
  double mu_min = 1e-9;
  double mu_max = 1e9;
  double mu_increase = 10.0;
  double mu_decrease = 0.5;
  double rho = 0.3;          // penalty balance, in (0, 1)
  double beta_nu = 0.5;      // penalty decrease factor, in (0, 1)
  double nu_init = 1.0;
  int nonmonotone_memory = 5;
  double armijo_c1 = 1e-4;
  double tol_grad = 1e-9;
  double tol_gap = 1e-9;
  double tol_step = 1e-12;
  double eps_rank = 1e-8;

  void validate() const;
};

struct TraceRow {
  int iter = 0;
  double cost = 0.0;
  double gap_l1 = 0.0;
  double dtheta_norm = 0.0;
  double alpha = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  int accepted = 0;
};

/// CSV with header iter,cost,gap_l1,dtheta_norm,alpha,mu,nu,accepted.
std::string trace_to_csv(const std::vector<TraceRow>& trace);

enum class SolveStatus { Converged, ConvergedStepTol, MaxIterReached, NumericalFailure };

std::string status_name(SolveStatus status);

struct SolveResult {
  Iterate estimate;
  std::vector<TraceRow> trace;
  SolveStatus status = SolveStatus::MaxIterReached;
  int iterations = 0;
  double final_cost = 0.0;
  double final_gap_l1 = 0.0;
  double final_gap_linf = 0.0;
  double grad_norm = 0.0;
  double step_norm = 0.0;
};

/// Multiple-shooting parametrized estimation solver: Riccati backward pass,
/// arrival resolution, configurable rollout, nonmonotone Armijo line search
/// on the merit function with Levenberg-Marquardt regularization.
SolveResult solve(const ShootingProblem& problem, const Iterate& initial_guess, const SolverConfig& config);

}  // namespace parest

#endif  // PAREST_SOLVER_SOLVER_HPP_
