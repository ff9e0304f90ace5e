#include "parest/inertial/charts.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "parest/exceptions.hpp"
#include "parest/so3.hpp"

namespace parest {
namespace {

// d(theta)/d(J) applied to a symmetric increment of the pseudo-inertia:
// m = J(3,3), h = J(0:3,3), I = tr(Sigma) 1 - Sigma.
Vector10d theta_increment_from_pseudo(const Eigen::Matrix4d& dj) {
  const Eigen::Matrix3d dsigma = dj.topLeftCorner<3, 3>();
  const Eigen::Matrix3d dinertia = dsigma.trace() * Eigen::Matrix3d::Identity() - dsigma;
  Vector10d dtheta;
  dtheta(0) = dj(3, 3);
  dtheta.segment<3>(1) = dj.topRightCorner<3, 1>();
  dtheta.tail<6>() = symmetric_to_flat(dinertia);
  return dtheta;
}

// Row/column reversal permutation; conjugating with it turns the
// upper-triangular factorization J = U U^T into a standard Cholesky problem.
const Eigen::Matrix4d& flip4() {
  static const Eigen::Matrix4d e = [] {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 4; ++i) m(i, 3 - i) = 1.0;
    return m;
  }();
  return e;
}

}  // namespace

std::string chart_name(ParamChart chart) {
  switch (chart) {
    case ParamChart::Raw:
      return "raw";
    case ParamChart::LogCholesky:
      return "logchol";
    case ParamChart::ExpEigenvalue:
      return "expeig";
  }
  return "unknown";
}

ParamChart chart_from_name(const std::string& name) {
  if (name == "raw") return ParamChart::Raw;
  if (name == "logchol") return ParamChart::LogCholesky;
  if (name == "expeig") return ParamChart::ExpEigenvalue;
  throw ParseError("unknown chart '" + name + "' (expected raw, logchol or expeig)");
}

Vector10d LogCholeskyParams::vector() const {
  Vector10d pi;
  pi << alpha, d, s, t;
  return pi;
}

LogCholeskyParams LogCholeskyParams::from_vector(const Vector10d& pi) {
  LogCholeskyParams p;
  p.alpha = pi(0);
  p.d = pi.segment<3>(1);
  p.s = pi.segment<3>(4);
  p.t = pi.segment<3>(7);
  return p;
}

Vector10d ExpEigParams::vector() const {
  Vector10d pi;
  pi << sigma_m, h, omega, sigma;
  return pi;
}

ExpEigParams ExpEigParams::from_vector(const Vector10d& pi) {
  ExpEigParams p;
  p.sigma_m = pi(0);
  p.h = pi.segment<3>(1);
  p.omega = pi.segment<3>(4);
  p.sigma = pi.segment<3>(7);
  return p;
}

Eigen::Matrix4d logchol_factor(const LogCholeskyParams& pi) {
  Eigen::Matrix4d u = Eigen::Matrix4d::Zero();
  u(0, 0) = std::exp(pi.d(0));
  u(1, 1) = std::exp(pi.d(1));
  u(2, 2) = std::exp(pi.d(2));
  u(3, 3) = 1.0;
  u(0, 1) = pi.s(0);  // s12
  u(1, 2) = pi.s(1);  // s23
  u(0, 2) = pi.s(2);  // s13
  u.topRightCorner<3, 1>() = pi.t;
  return std::exp(pi.alpha) * u;
}

InertialVector logchol_to_theta(const LogCholeskyParams& pi) {
  const Eigen::Matrix4d u = logchol_factor(pi);
  PseudoInertia p;
  p.J = u * u.transpose();
  return p.to_inertial_vector();
}

InertialVector expeig_to_theta(const ExpEigParams& pi) {
  const double m = std::exp(pi.sigma_m);
  const Eigen::Vector3d l = pi.sigma.array().exp();
  const Eigen::Vector3d d = BarycentricInertia::P() * l;
  const Eigen::Matrix3d r = so3::exp(pi.omega);
  const Eigen::Matrix3d ic = r * d.asDiagonal() * r.transpose();
  const Eigen::Matrix3d sh = skew(pi.h);
  const Eigen::Matrix3d inertia = ic + sh * sh.transpose() / m;
  return InertialVector(m, pi.h, inertia);
}

InertialVector chart_to_theta(ParamChart chart, const Vector10d& pi) {
  switch (chart) {
    case ParamChart::Raw:
      return InertialVector(pi);
    case ParamChart::LogCholesky:
      return logchol_to_theta(LogCholeskyParams::from_vector(pi));
    case ParamChart::ExpEigenvalue:
      return expeig_to_theta(ExpEigParams::from_vector(pi));
  }
  return InertialVector();
}

namespace {

Matrix10d logchol_jacobian(const LogCholeskyParams& pi) {
  const Eigen::Matrix4d u = logchol_factor(pi);
  Matrix10d jac;
  for (int k = 0; k < 10; ++k) {
    // Derivative of the factor with respect to coordinate k.
    Eigen::Matrix4d du = Eigen::Matrix4d::Zero();
    if (k == 0) {
      du = u;  // overall exp(alpha) scale
    } else if (k <= 3) {
      du(k - 1, k - 1) = u(k - 1, k - 1);  // exp(d_i) diagonal entries
    } else if (k == 4) {
      du(0, 1) = std::exp(pi.alpha);
    } else if (k == 5) {
      du(1, 2) = std::exp(pi.alpha);
    } else if (k == 6) {
      du(0, 2) = std::exp(pi.alpha);
    } else {
      du(k - 7, 3) = std::exp(pi.alpha);
    }
    const Eigen::Matrix4d dj = du * u.transpose() + u * du.transpose();
    jac.col(k) = theta_increment_from_pseudo(dj);
  }
  return jac;
}

Matrix10d expeig_jacobian(const ExpEigParams& pi) {
  const double m = std::exp(pi.sigma_m);
  const Eigen::Vector3d l = pi.sigma.array().exp();
  const Eigen::Vector3d d = BarycentricInertia::P() * l;
  const Eigen::Matrix3d r = so3::exp(pi.omega);
  const Eigen::Matrix3d jr = so3::right_jacobian(pi.omega);
  const Eigen::Matrix3d sh = skew(pi.h);

  Matrix10d jac = Matrix10d::Zero();
  // Mass column: dm = m, dI = -S(h)S(h)^T / m.
  jac(0, 0) = m;
  jac.block<6, 1>(4, 0) = symmetric_to_flat(-sh * sh.transpose() / m);
  // First-moment columns.
  for (int j = 0; j < 3; ++j) {
    const Eigen::Matrix3d se = skew(Eigen::Vector3d::Unit(j));
    jac(1 + j, 1 + j) = 1.0;
    jac.block<6, 1>(4, 1 + j) = symmetric_to_flat((se * sh.transpose() + sh * se.transpose()) / m);
  }
  // Rotation columns: dR = R * S(Jr(omega) e_j).
  for (int j = 0; j < 3; ++j) {
    const Eigen::Matrix3d dr = r * skew((jr * Eigen::Vector3d::Unit(j)).eval());
    const Eigen::Matrix3d dic = dr * d.asDiagonal() * r.transpose() + r * d.asDiagonal() * dr.transpose();
    jac.block<6, 1>(4, 4 + j) = symmetric_to_flat(dic);
  }
  // Second-moment columns: dD = P (exp(sigma_j) e_j).
  for (int j = 0; j < 3; ++j) {
    const Eigen::Vector3d dd = BarycentricInertia::P() * (l(j) * Eigen::Vector3d::Unit(j));
    jac.block<6, 1>(4, 7 + j) = symmetric_to_flat(r * dd.asDiagonal() * r.transpose());
  }
  return jac;
}

}  // namespace

Matrix10d chart_jacobian(ParamChart chart, const Vector10d& pi) {
  switch (chart) {
    case ParamChart::Raw:
      return Matrix10d::Identity();
    case ParamChart::LogCholesky:
      return logchol_jacobian(LogCholeskyParams::from_vector(pi));
    case ParamChart::ExpEigenvalue:
      return expeig_jacobian(ExpEigParams::from_vector(pi));
  }
  return Matrix10d::Identity();
}

ExpEigParams expeig_from_theta(const InertialVector& theta) {
  if (theta.mass() <= 0.0) throw InconsistentInput("expeig_from_theta: mass must be strictly positive");
  const BarycentricInertia b = barycentric_decomposition(theta);
  if (b.L.minCoeff() <= 0.0) {
    throw InconsistentInput("expeig_from_theta: second moments of mass must be strictly positive");
  }
  ExpEigParams pi;
  pi.sigma_m = std::log(theta.mass());
  pi.h = theta.first_moment();
  pi.omega = so3::log(b.R);
  pi.sigma = b.L.array().log();
  return pi;
}

LogCholeskyParams logchol_from_theta(const InertialVector& theta) {
  const Eigen::Matrix4d j = pseudo_inertia(theta).J;
  const Eigen::Matrix4d& e = flip4();
  const Eigen::LLT<Eigen::Matrix4d> llt(e * j * e);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("logchol_from_theta: pseudo-inertia is not positive definite");
  }
  const Eigen::Matrix4d u = e * Eigen::Matrix4d(llt.matrixL()) * e;

  LogCholeskyParams pi;
  pi.alpha = std::log(u(3, 3));
  const Eigen::Matrix4d u0 = u / u(3, 3);
  pi.d = u0.diagonal().head<3>().array().log();
  pi.s << u0(0, 1), u0(1, 2), u0(0, 2);
  pi.t = u0.topRightCorner<3, 1>();
  return pi;
}

Vector10d theta_to_chart(ParamChart chart, const InertialVector& theta) {
  switch (chart) {
    case ParamChart::Raw:
      return theta.vector();
    case ParamChart::LogCholesky:
      return logchol_from_theta(theta).vector();
    case ParamChart::ExpEigenvalue:
      return expeig_from_theta(theta).vector();
  }
  return theta.vector();
}

}  // namespace parest
