#ifndef PAREST_SOLVER_ARRIVAL_HPP_
#define PAREST_SOLVER_ARRIVAL_HPP_

#include <Eigen/Core>

#include "parest/solver/riccati.hpp"

namespace parest {

enum class ArrivalMethod { Schur, Nullspace };

/// Joint resolution of the arrival-state and parameter steps from the
/// quadratic value model at the first node.
struct ArrivalSolution {
  Eigen::VectorXd dx0;
  Eigen::VectorXd dtheta;
  Eigen::VectorXd k_theta;   // parameter feed-forward
  Eigen::MatrixXd K_theta;   // parameter feedback on dx0
  ArrivalMethod method = ArrivalMethod::Schur;
  int rank = 0;              // retained directions of V_thetatheta
  int null_dimension = 0;
  double grad_x = 0.0;       // |V_x| after parameter elimination
  double grad_theta = 0.0;   // |V_theta| in the retained subspace
};

/// Block elimination of the parameters. Requires the parameter Hessian to be
/// positive definite: its smallest eigenvalue must exceed eps_rank times the
/// largest one, otherwise SingularParameterHessian is thrown.
ArrivalSolution solve_arrival_schur(const ValueExpansion& value0, double eps_rank);

/// Eigenvalue-based nullspace variant: parameter steps are confined to the
/// range of V_thetatheta; works for any positive semidefinite Hessian.
ArrivalSolution solve_arrival_nullspace(const ValueExpansion& value0, double eps_rank);

ArrivalSolution solve_arrival(ArrivalMethod method, const ValueExpansion& value0, double eps_rank);

}  // namespace parest

#endif  // PAREST_SOLVER_ARRIVAL_HPP_
