#ifndef PAREST_INERTIAL_CHARTS_HPP_
#define PAREST_INERTIAL_CHARTS_HPP_

#include <Eigen/Core>
#include <string>

#include "parest/inertial/params.hpp"

namespace parest {

using Matrix10d = Eigen::Matrix<double, 10, 10>;

/// Smooth parametrizations pi -> theta whose image is the set of fully
/// physically consistent inertial vectors. Raw is the identity chart (no
/// consistency guarantee).
enum class ParamChart { Raw, LogCholesky, ExpEigenvalue };

std::string chart_name(ParamChart chart);
ParamChart chart_from_name(const std::string& name);

/// Log-Cholesky coordinates of the pseudo-inertia factor U, ordered
/// [alpha, d1, d2, d3, s12, s23, s13, t1, t2, t3].
struct LogCholeskyParams {
  double alpha = 0.0;
  Eigen::Vector3d d = Eigen::Vector3d::Zero();
  Eigen::Vector3d s = Eigen::Vector3d::Zero();  // (s12, s23, s13)
  Eigen::Vector3d t = Eigen::Vector3d::Zero();

  Vector10d vector() const;
  static LogCholeskyParams from_vector(const Vector10d& pi);
};

/// Exponential-eigenvalue coordinates [sigma_m, h, omega, sigma], where
/// m = exp(sigma_m), the second moments of mass are exp(sigma) elementwise and
/// the principal axes are Exp(omega).
struct ExpEigParams {
  double sigma_m = 0.0;
  Eigen::Vector3d h = Eigen::Vector3d::Zero();
  Eigen::Vector3d omega = Eigen::Vector3d::Zero();
  Eigen::Vector3d sigma = Eigen::Vector3d::Zero();

  Vector10d vector() const;
  static ExpEigParams from_vector(const Vector10d& pi);
};

/// Upper-triangular factor of the log-Cholesky chart (exp(alpha)-scaled, unit
/// bottom-right entry before scaling).
Eigen::Matrix4d logchol_factor(const LogCholeskyParams& pi);

InertialVector logchol_to_theta(const LogCholeskyParams& pi);
InertialVector expeig_to_theta(const ExpEigParams& pi);

/// Chart map on raw coordinate vectors.
InertialVector chart_to_theta(ParamChart chart, const Vector10d& pi);

/// Analytical 10x10 Jacobian d(theta)/d(pi) of the selected chart.
Matrix10d chart_jacobian(ParamChart chart, const Vector10d& pi);

/// Inverse of the exponential-eigenvalue chart. Requires strict full physical
/// consistency; eigenvalues sorted descending, |omega| in [0, pi].
/// Throws InconsistentInput otherwise.
ExpEigParams expeig_from_theta(const InertialVector& theta);

/// Inverse of the log-Cholesky chart on the canonical section where the
/// (unscaled) factor has unit bottom-right entry, i.e. alpha = log U(3,3).
/// Requires pseudo_inertia(theta) > 0; throws NotPositiveDefinite otherwise.
LogCholeskyParams logchol_from_theta(const InertialVector& theta);

/// Inverse map on raw coordinate vectors.
Vector10d theta_to_chart(ParamChart chart, const InertialVector& theta);

}  // namespace parest

#endif  // PAREST_INERTIAL_CHARTS_HPP_
