#include "parest/solver/arrival.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "parest/exceptions.hpp"

namespace parest {
namespace {

Eigen::VectorXd newton_step(const Eigen::MatrixXd& hess, const Eigen::VectorXd& grad) {
  const Eigen::LLT<Eigen::MatrixXd> llt(hess);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("arrival-state Hessian is not positive definite");
  }
  return -llt.solve(grad);
}

}  // namespace

ArrivalSolution solve_arrival_schur(const ValueExpansion& value0, double eps_rank) {
  const int ntheta = static_cast<int>(value0.Vtheta.size());
  ArrivalSolution sol;
  sol.method = ArrivalMethod::Schur;

  if (ntheta == 0) {
    sol.dx0 = newton_step(value0.Vxx, value0.Vx);
    sol.dtheta.resize(0);
    sol.k_theta.resize(0);
    sol.K_theta.resize(0, value0.Vx.size());
    sol.grad_x = value0.Vx.lpNorm<Eigen::Infinity>();
    return sol;
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(value0.Vthetatheta, Eigen::EigenvaluesOnly);
  const double max_eig = eig.eigenvalues().maxCoeff();
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig <= eps_rank * std::max(max_eig, 0.0)) {
    throw SingularParameterHessian("parameter Hessian has eigenvalue " + std::to_string(min_eig) +
                                   " (largest " + std::to_string(max_eig) + ")");
  }
  sol.rank = ntheta;

  const Eigen::LLT<Eigen::MatrixXd> llt(value0.Vthetatheta);
  sol.k_theta = llt.solve(value0.Vtheta);
  sol.K_theta = llt.solve(value0.Vxtheta.transpose());
  const Eigen::VectorXd vx_hat = value0.Vx - value0.Vxtheta * sol.k_theta;
  const Eigen::MatrixXd vxx_hat = value0.Vxx - value0.Vxtheta * sol.K_theta;
  sol.dx0 = newton_step(0.5 * (vxx_hat + vxx_hat.transpose()), vx_hat);
  sol.dtheta = -sol.k_theta - sol.K_theta * sol.dx0;
  sol.grad_x = vx_hat.lpNorm<Eigen::Infinity>();
  sol.grad_theta = value0.Vtheta.lpNorm<Eigen::Infinity>();
  return sol;
}

ArrivalSolution solve_arrival_nullspace(const ValueExpansion& value0, double eps_rank) {
  const int ntheta = static_cast<int>(value0.Vtheta.size());
  ArrivalSolution sol;
  sol.method = ArrivalMethod::Nullspace;

  if (ntheta == 0) {
    sol.dx0 = newton_step(value0.Vxx, value0.Vx);
    sol.dtheta.resize(0);
    sol.k_theta.resize(0);
    sol.K_theta.resize(0, value0.Vx.size());
    sol.grad_x = value0.Vx.lpNorm<Eigen::Infinity>();
    return sol;
  }

  if (!value0.Vthetatheta.allFinite() || !value0.Vtheta.allFinite()) {
    throw NonFiniteData("parameter Hessian or gradient is not finite");
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(value0.Vthetatheta);
  const double max_eig = eig.eigenvalues().maxCoeff();
  const double threshold = eps_rank * std::max(max_eig, 0.0);

  int rank = 0;
  for (int i = 0; i < ntheta; ++i) {
    if (eig.eigenvalues()(i) > threshold) ++rank;
  }
  sol.rank = rank;
  sol.null_dimension = ntheta - rank;

  // Eigenvalues come sorted ascending: the retained range basis is the tail.
  const Eigen::MatrixXd range = eig.eigenvectors().rightCols(rank);

  if (rank == 0) {
    sol.dx0 = newton_step(value0.Vxx, value0.Vx);
    sol.dtheta = Eigen::VectorXd::Zero(ntheta);
    sol.k_theta = Eigen::VectorXd::Zero(ntheta);
    sol.K_theta = Eigen::MatrixXd::Zero(ntheta, value0.Vx.size());
    sol.grad_x = value0.Vx.lpNorm<Eigen::Infinity>();
    return sol;
  }

  const Eigen::MatrixXd vtt_y = range.transpose() * value0.Vthetatheta * range;
  const Eigen::MatrixXd vxt_y = value0.Vxtheta * range;
  const Eigen::VectorXd vt_y = range.transpose() * value0.Vtheta;

  const Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (vtt_y + vtt_y.transpose()));
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("projected parameter Hessian is not positive definite");
  }
  const Eigen::VectorXd k_y = llt.solve(vt_y);
  const Eigen::MatrixXd big_k_y = llt.solve(vxt_y.transpose());

  const Eigen::VectorXd vx_hat = value0.Vx - vxt_y * k_y;
  const Eigen::MatrixXd vxx_hat = value0.Vxx - vxt_y * big_k_y;
  sol.dx0 = newton_step(0.5 * (vxx_hat + vxx_hat.transpose()), vx_hat);
  sol.dtheta = range * (-k_y - big_k_y * sol.dx0);
  sol.k_theta = range * k_y;
  sol.K_theta = range * big_k_y;
  sol.grad_x = vx_hat.lpNorm<Eigen::Infinity>();
  sol.grad_theta = vt_y.lpNorm<Eigen::Infinity>();
  return sol;
}

ArrivalSolution solve_arrival(ArrivalMethod method, const ValueExpansion& value0, double eps_rank) {
  return method == ArrivalMethod::Schur ? solve_arrival_schur(value0, eps_rank)
                                        : solve_arrival_nullspace(value0, eps_rank);
}

}  // namespace parest
