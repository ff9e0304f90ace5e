#ifndef PAREST_SOLVER_ROLLOUT_HPP_
#define PAREST_SOLVER_ROLLOUT_HPP_

#include "parest/solver/arrival.hpp"
#include "parest/solver/problem.hpp"
#include "parest/solver/riccati.hpp"

namespace parest {

enum class RolloutKind { Single, Feasibility, Multiple };

/// Full linear search direction obtained by propagating the policies from the
/// arrival step through the linearized dynamics.
struct Directions {
  std::vector<Eigen::VectorXd> dxs;  // N + 1
  std::vector<Eigen::VectorXd> dws;  // N (empty at reset nodes)
};

Directions propagate_direction(const ShootingProblem& problem, const ProblemExpansion& expansion,
                               const BackwardPass& bp, const ArrivalSolution& arrival);

/// Nonlinear rollout that shrinks the dynamics gaps by the factor (1 - alpha).
Iterate rollout_feasibility(const ShootingProblem& problem, const Iterate& it, const ProblemExpansion& expansion,
                            const BackwardPass& bp, const ArrivalSolution& arrival, double alpha);

/// Nonlinear rollout with gaps forced to zero at every step.
Iterate rollout_single_shooting(const ShootingProblem& problem, const Iterate& it, const ProblemExpansion& expansion,
                                const BackwardPass& bp, const ArrivalSolution& arrival, double alpha);

/// Linear update of states and uncertainties; gaps are re-evaluated from
/// nonlinear shoots afterwards (by evaluate_iterate / compute_gaps).
Iterate rollout_multiple_shooting(const ShootingProblem& problem, const Iterate& it, const Directions& dirs,
                                  const ArrivalSolution& arrival, double alpha);

}  // namespace parest

#endif  // PAREST_SOLVER_ROLLOUT_HPP_
