#ifndef PAREST_SO3_HPP_
#define PAREST_SO3_HPP_

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>

namespace parest {

/// Skew-symmetric matrix such that skew(a) * b = a x b.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 3> skew(const Eigen::MatrixBase<Derived>& a) {
  using S = typename Derived::Scalar;
  Eigen::Matrix<S, 3, 3> m;
  m << S(0), -a(2), a(1),  //
      a(2), S(0), -a(0),   //
      -a(1), a(0), S(0);
  return m;
}

namespace so3 {

// Below the root of this threshold the Rodrigues coefficients switch to
// their Taylor expansions.
inline constexpr double kSmallAngle = 1e-8;

/// Rotation exponential map (Rodrigues formula).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 3> exp(const Eigen::MatrixBase<Derived>& omega) {
  using S = typename Derived::Scalar;
  using std::cos;
  using std::sin;
  using std::sqrt;
  const S theta2 = omega.squaredNorm();
  S c1, c2;  // sin(t)/t and (1-cos(t))/t^2
  if (theta2 < S(kSmallAngle * kSmallAngle)) {
    c1 = S(1) - theta2 / S(6);
    c2 = S(0.5) - theta2 / S(24);
  } else {
    const S theta = sqrt(theta2);
    c1 = sin(theta) / theta;
    c2 = (S(1) - cos(theta)) / theta2;
  }
  const Eigen::Matrix<S, 3, 3> w = skew(omega);
  return Eigen::Matrix<S, 3, 3>::Identity() + c1 * w + c2 * w * w;
}

/// Rotation logarithm with |omega| in [0, pi], via the quaternion-backed
/// angle-axis extraction (stable at both ends of the angle range).
inline Eigen::Vector3d log(const Eigen::Matrix3d& r) {
  const Eigen::AngleAxisd aa(r);
  if (aa.angle() > M_PI) return (aa.angle() - 2.0 * M_PI) * aa.axis();
  return aa.angle() * aa.axis();
}

/// Right Jacobian of the exponential map: d/dt Exp(w + t*dw) = Exp(w) * skew(Jr(w)*dw).
inline Eigen::Matrix3d right_jacobian(const Eigen::Vector3d& omega) {
  const double theta2 = omega.squaredNorm();
  const Eigen::Matrix3d w = skew(omega);
  if (theta2 < kSmallAngle * kSmallAngle) {
    return Eigen::Matrix3d::Identity() - 0.5 * w + (1.0 / 6.0) * w * w;
  }
  const double theta = std::sqrt(theta2);
  const double a = (1.0 - std::cos(theta)) / theta2;
  const double b = (theta - std::sin(theta)) / (theta2 * theta);
  return Eigen::Matrix3d::Identity() - a * w + b * w * w;
}

}  // namespace so3
}  // namespace parest

#endif  // PAREST_SO3_HPP_
