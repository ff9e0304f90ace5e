#include "parest/solver/rollout.hpp"

namespace parest {

Directions propagate_direction(const ShootingProblem& problem, const ProblemExpansion& expansion,
                               const BackwardPass& bp, const ArrivalSolution& arrival) {
  const int n = problem.horizon();
  Directions dirs;
  dirs.dxs.resize(n + 1);
  dirs.dws.resize(n);
  dirs.dxs[0] = arrival.dx0;
  for (int k = 0; k < n; ++k) {
    const NodeExpansion& e = expansion.nodes[k];
    if (problem.node(k).nw() > 0) {
      const NodePolicy& p = bp.policies[k];
      dirs.dws[k] = -p.k - p.Kx * dirs.dxs[k] - p.Ktheta * arrival.dtheta;
      dirs.dxs[k + 1] = e.fx * dirs.dxs[k] + e.fw * dirs.dws[k] + e.ftheta * arrival.dtheta + e.gap;
    } else {
      dirs.dws[k].resize(0);
      dirs.dxs[k + 1] = e.fx * dirs.dxs[k] + e.ftheta * arrival.dtheta + e.gap;
    }
  }
  return dirs;
}

namespace {

Iterate rollout_nonlinear(const ShootingProblem& problem, const Iterate& it, const ProblemExpansion& expansion,
                          const BackwardPass& bp, const ArrivalSolution& arrival, double alpha, bool keep_gaps) {
  const int n = problem.horizon();
  const StateSpace& space = problem.space();

  Iterate out;
  out.xs.resize(n + 1);
  out.ws.resize(n);
  out.theta = it.theta + alpha * arrival.dtheta;
  out.xs[0] = space.integrate(it.xs[0], alpha * arrival.dx0);

  for (int k = 0; k < n; ++k) {
    if (problem.node(k).nw() > 0) {
      const NodePolicy& p = bp.policies[k];
      const Eigen::VectorXd dx = space.difference(it.xs[k], out.xs[k]);
      // Full feed-forward term: the node policy shifted by the parameter step.
      out.ws[k] = it.ws[k] - alpha * (p.k + p.Ktheta * arrival.dtheta) - p.Kx * dx;
    } else {
      out.ws[k].resize(0);
    }
    Eigen::VectorXd next = problem.node(k).propagate(out.xs[k], out.ws[k], out.theta);
    if (keep_gaps) next = space.integrate(next, (alpha - 1.0) * expansion.nodes[k].gap);
    out.xs[k + 1] = next;
  }
  return out;
}

}  // namespace

Iterate rollout_feasibility(const ShootingProblem& problem, const Iterate& it, const ProblemExpansion& expansion,
                            const BackwardPass& bp, const ArrivalSolution& arrival, double alpha) {
  return rollout_nonlinear(problem, it, expansion, bp, arrival, alpha, true);
}

Iterate rollout_single_shooting(const ShootingProblem& problem, const Iterate& it, const ProblemExpansion& expansion,
                                const BackwardPass& bp, const ArrivalSolution& arrival, double alpha) {
  return rollout_nonlinear(problem, it, expansion, bp, arrival, alpha, false);
}

Iterate rollout_multiple_shooting(const ShootingProblem& problem, const Iterate& it, const Directions& dirs,
                                  const ArrivalSolution& arrival, double alpha) {
  const int n = problem.horizon();
  const StateSpace& space = problem.space();

  Iterate out;
  out.xs.resize(n + 1);
  out.ws.resize(n);
  out.theta = it.theta + alpha * arrival.dtheta;
  for (int k = 0; k <= n; ++k) out.xs[k] = space.integrate(it.xs[k], alpha * dirs.dxs[k]);
  for (int k = 0; k < n; ++k) {
    out.ws[k] = dirs.dws[k].size() > 0 ? Eigen::VectorXd(it.ws[k] + alpha * dirs.dws[k]) : Eigen::VectorXd();
  }
  return out;
}

}  // namespace parest
