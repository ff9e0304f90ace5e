#include "parest/solver/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "parest/exceptions.hpp"

namespace parest {

void SolverConfig::validate() const {
  if (max_iter < 1) throw std::invalid_argument("config: max_iter must be >= 1");
  if (rho <= 0.0 || rho >= 1.0) throw std::invalid_argument("config: rho must be in (0, 1)");
  if (beta_nu <= 0.0 || beta_nu >= 1.0) throw std::invalid_argument("config: beta_nu must be in (0, 1)");
  if (linesearch_steps < 1) throw std::invalid_argument("config: need at least one line-search step");
  if (mu_init < 0.0 || mu_max < mu_min) throw std::invalid_argument("config: invalid regularization range");
  if (eps_rank < 0.0) throw std::invalid_argument("config: eps_rank must be nonnegative");
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream out;
  out.precision(17);
  out << "iter,cost,gap_l1,dtheta_norm,alpha,mu,nu,accepted\n";
  for (const TraceRow& row : trace) {
    out << row.iter << ',' << row.cost << ',' << row.gap_l1 << ',' << row.dtheta_norm << ',' << row.alpha << ','
        << row.mu << ',' << row.nu << ',' << row.accepted << '\n';
  }
  return out.str();
}

std::string status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged:
      return "converged";
    case SolveStatus::ConvergedStepTol:
      return "converged_step_tol";
    case SolveStatus::MaxIterReached:
      return "max_iter_reached";
    case SolveStatus::NumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

namespace {

double policy_step_norm(const BackwardPass& bp, const ArrivalSolution& arrival) {
  double norm = std::max(arrival.dx0.lpNorm<Eigen::Infinity>(),
                         arrival.dtheta.size() > 0 ? arrival.dtheta.lpNorm<Eigen::Infinity>() : 0.0);
  for (const NodePolicy& p : bp.policies) {
    if (p.k.size() == 0) continue;
    const Eigen::VectorXd k_total = p.k + p.Ktheta * arrival.dtheta;
    norm = std::max(norm, k_total.lpNorm<Eigen::Infinity>());
  }
  return norm;
}

}  // namespace

SolveResult solve(const ShootingProblem& problem, const Iterate& initial_guess, const SolverConfig& config) {
  config.validate();

  SolveResult result;
  Iterate current = initial_guess;
  ProblemExpansion expansion = compute_node_expansions(problem, current);

  double mu = config.mu_init;
  double nu = config.nu_init;
  std::deque<std::pair<double, double>> memory;  // accepted (cost, gap_l1) pairs
  memory.emplace_back(expansion.total_cost, expansion.gap_l1);

  double best_merit = std::numeric_limits<double>::infinity();
  result.estimate = current;
  result.status = SolveStatus::MaxIterReached;

  for (int iter = 1; iter <= config.max_iter; ++iter) {
    // Backward pass with Levenberg-Marquardt retries.
    BackwardPass bp = backward_pass(problem, expansion, mu);
    while (!bp.ok) {
      if (mu >= config.mu_max) {
        result.status = SolveStatus::NumericalFailure;
        result.iterations = iter - 1;
        return result;
      }
      mu = std::min(std::max(mu * config.mu_increase, config.mu_min), config.mu_max);
      bp = backward_pass(problem, expansion, mu);
    }

    const ArrivalSolution arrival = solve_arrival(config.arrival, bp.values[0], config.eps_rank);

    result.grad_norm = std::max(arrival.grad_x, arrival.grad_theta);
    result.final_gap_l1 = expansion.gap_l1;
    result.final_gap_linf = expansion.gap_linf;
    result.final_cost = expansion.total_cost;
    result.step_norm = policy_step_norm(bp, arrival);

    if (result.grad_norm < config.tol_grad && expansion.gap_linf < config.tol_gap) {
      result.status = SolveStatus::Converged;
      result.estimate = current;
      result.iterations = iter - 1;
      return result;
    }
    if (result.step_norm < config.tol_step) {
      result.status = SolveStatus::ConvergedStepTol;
      result.estimate = current;
      result.iterations = iter - 1;
      return result;
    }

    const Directions dirs = propagate_direction(problem, expansion, bp, arrival);

    const double dl_full = expected_improvement(expansion, bp, arrival, dirs, 1.0);
    nu = update_penalty(nu, dl_full, expansion.gap_l1, config.rho, config.beta_nu);

    double merit_ref = -std::numeric_limits<double>::infinity();
    for (const auto& [cost, gap] : memory) merit_ref = std::max(merit_ref, merit_value(cost, gap, nu));

    bool accepted = false;
    double used_alpha = 0.0;
    EvaluatedIterate accepted_eval;
    for (int step = 0; step < config.linesearch_steps && !accepted; ++step) {
      const double alpha = std::pow(0.5, step);
      Iterate candidate;
      EvaluatedIterate eval;
      try {
        switch (config.rollout) {
          case RolloutKind::Single:
            candidate = rollout_single_shooting(problem, current, expansion, bp, arrival, alpha);
            break;
          case RolloutKind::Feasibility:
            candidate = rollout_feasibility(problem, current, expansion, bp, arrival, alpha);
            break;
          case RolloutKind::Multiple:
            candidate = rollout_multiple_shooting(problem, current, dirs, arrival, alpha);
            break;
        }
        eval = evaluate_iterate(problem, candidate);
      } catch (const std::runtime_error&) {
        continue;  // dynamics failure counts as a rejected step
      }
      if (!eval.finite) continue;
      const double merit_cand = merit_value(eval.cost, eval.gap_l1, nu);
      const double dl_alpha = expected_improvement(expansion, bp, arrival, dirs, alpha);
      if (merit_cand <= merit_ref + config.armijo_c1 * alpha * dl_alpha) {
        accepted = true;
        used_alpha = alpha;
        current = candidate;
        accepted_eval = eval;
      }
    }

    TraceRow row;
    row.iter = iter;
    row.dtheta_norm = arrival.dtheta.size() > 0 ? arrival.dtheta.norm() : 0.0;
    row.alpha = used_alpha;
    row.mu = mu;
    row.nu = nu;
    row.accepted = accepted ? 1 : 0;

    if (accepted) {
      try {
        expansion = compute_node_expansions(problem, current);
      } catch (const std::runtime_error&) {
        result.trace.push_back(row);
        result.iterations = iter;
        result.status = SolveStatus::NumericalFailure;
        return result;
      }
      row.cost = expansion.total_cost;
      row.gap_l1 = expansion.gap_l1;
      memory.emplace_back(expansion.total_cost, expansion.gap_l1);
      while (static_cast<int>(memory.size()) > config.nonmonotone_memory) memory.pop_front();
      if (used_alpha == 1.0) mu = std::max(mu * config.mu_decrease, config.mu_min);
      const double merit_now = merit_value(expansion.total_cost, expansion.gap_l1, nu);
      if (merit_now < best_merit) {
        best_merit = merit_now;
        result.estimate = current;
      }
    } else {
      row.cost = expansion.total_cost;
      row.gap_l1 = expansion.gap_l1;
      if (mu >= config.mu_max) {
        result.trace.push_back(row);
        result.iterations = iter;
        result.status = SolveStatus::NumericalFailure;
        return result;
      }
      mu = std::min(std::max(mu * config.mu_increase, config.mu_min), config.mu_max);
    }
    result.trace.push_back(row);
    result.iterations = iter;
  }

  // Report the last iterate's stationarity data.
  result.final_cost = expansion.total_cost;
  result.final_gap_l1 = expansion.gap_l1;
  result.final_gap_linf = expansion.gap_linf;
  const double final_merit = merit_value(expansion.total_cost, expansion.gap_l1, nu);
  if (final_merit <= best_merit) result.estimate = current;
  return result;
}

}  // namespace parest
