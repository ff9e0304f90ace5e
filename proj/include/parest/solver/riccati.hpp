#ifndef PAREST_SOLVER_RICCATI_HPP_
#define PAREST_SOLVER_RICCATI_HPP_

#include <Eigen/Core>
#include <vector>

#include "parest/solver/problem.hpp"

namespace parest {

/// Quadratic value model in the state and parameter directions, plus the
/// expected-improvement accumulators of the node that produced it.
struct ValueExpansion {
  Eigen::VectorXd Vx, Vtheta;
  Eigen::MatrixXd Vxx, Vxtheta, Vthetatheta;
  double dv1 = 0.0;  // -k^T Q_w
  double dv2 = 0.0;  // k^T Q_ww k
};

/// Estimation policy of one node: dw = -(k + Ktheta dtheta) - Kx dx.
struct NodePolicy {
  Eigen::VectorXd k;
  Eigen::MatrixXd Kx, Ktheta;
};

struct BackwardPass {
  std::vector<NodePolicy> policies;    // one per node (empty at reset nodes)
  std::vector<ValueExpansion> values;  // N + 1 entries, values[0] holds the arrival quantities
  bool ok = true;
  int failed_node = -1;  // node whose regularized Q_ww was not positive definite
};

/// Parametrized Riccati recursion from the terminal node to the arrival node.
/// Q_ww is regularized by mu before inversion; on failure the result carries
/// ok = false and the caller is expected to increase mu and retry.
BackwardPass backward_pass(const ShootingProblem& problem, const ProblemExpansion& expansion, double mu);

}  // namespace parest

#endif  // PAREST_SOLVER_RICCATI_HPP_
