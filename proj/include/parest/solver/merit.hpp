#ifndef PAREST_SOLVER_MERIT_HPP_
#define PAREST_SOLVER_MERIT_HPP_

#include "parest/solver/arrival.hpp"
#include "parest/solver/problem.hpp"
#include "parest/solver/riccati.hpp"
#include "parest/solver/rollout.hpp"

namespace parest {

/// Expected reduction of the cost along the search direction at step length
/// alpha. The per-node policy improvements and gap deflections of the value
/// model determine the full-step change; the costate terms split it into the
/// exact linear and quadratic coefficients of the step length, so on
/// quadratic problems the prediction matches the realized cost change of a
/// multiple-shooting candidate at every alpha.
double expected_improvement(const ProblemExpansion& expansion, const BackwardPass& bp, const ArrivalSolution& arrival,
                            const Directions& dirs, double alpha);

/// Merit function: cost plus nu-weighted l1 norm of the gaps.
inline double merit_value(double cost, double gap_l1, double nu) { return cost + nu * gap_l1; }

/// Penalty update balancing optimality against feasibility; dl_full is the
/// expected improvement at alpha = 1 and gap_sum the current l1 infeasibility.
double update_penalty(double nu, double dl_full, double gap_sum, double rho, double beta_nu);

}  // namespace parest

#endif  // PAREST_SOLVER_MERIT_HPP_
