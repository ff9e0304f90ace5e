#include "parest/inertial/params.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "parest/exceptions.hpp"
#include "parest/so3.hpp"

namespace parest {

InertialVector::InertialVector(double mass, const Eigen::Vector3d& first_moment, const Eigen::Matrix3d& inertia) {
  data_(0) = mass;
  data_.segment<3>(1) = first_moment;
  data_.tail<6>() = symmetric_to_flat(inertia);
}

Eigen::Matrix3d InertialVector::rotational_inertia() const { return flat_to_symmetric(data_.tail<6>()); }

std::string InertialVector::to_text() const {
  std::ostringstream out;
  out.precision(17);
  for (int i = 0; i < 10; ++i) {
    if (i > 0) out << ' ';
    out << data_(i);
  }
  return out.str();
}

InertialVector InertialVector::from_text(const std::string& text) {
  std::istringstream in(text);
  Vector10d data;
  for (int i = 0; i < 10; ++i) {
    if (!(in >> data(i))) throw ParseError("inertial vector: expected 10 numbers, got " + std::to_string(i));
  }
  return InertialVector(data);
}

Eigen::Matrix<double, 6, 1> symmetric_to_flat(const Eigen::Matrix3d& m) {
  Eigen::Matrix<double, 6, 1> f;
  f << m(0, 0), m(0, 1), m(1, 1), m(0, 2), m(1, 2), m(2, 2);
  return f;
}

Eigen::Matrix3d flat_to_symmetric(const Eigen::Matrix<double, 6, 1>& f) {
  Eigen::Matrix3d m;
  m << f(0), f(1), f(3),  //
      f(1), f(2), f(4),   //
      f(3), f(4), f(5);
  return m;
}

double PseudoInertia::min_eigenvalue() const {
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(J, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

InertialVector PseudoInertia::to_inertial_vector() const {
  const Eigen::Matrix3d s = sigma();
  const Eigen::Matrix3d inertia = s.trace() * Eigen::Matrix3d::Identity() - s;
  return InertialVector(mass(), h(), inertia);
}

PseudoInertia pseudo_inertia(const InertialVector& theta) {
  const Eigen::Matrix3d inertia = theta.rotational_inertia();
  PseudoInertia p;
  p.J.topLeftCorner<3, 3>() = 0.5 * inertia.trace() * Eigen::Matrix3d::Identity() - inertia;
  p.J.topRightCorner<3, 1>() = theta.first_moment();
  p.J.bottomLeftCorner<1, 3>() = theta.first_moment().transpose();
  p.J(3, 3) = theta.mass();
  return p;
}

const Eigen::Matrix3d& BarycentricInertia::P() {
  static const Eigen::Matrix3d p = (Eigen::Matrix3d() << 0, 1, 1, 1, 0, 1, 1, 1, 0).finished();
  return p;
}

const Eigen::Matrix3d& BarycentricInertia::P_inverse() {
  static const Eigen::Matrix3d p = (Eigen::Matrix3d() << -1, 1, 1, 1, -1, 1, 1, 1, -1).finished() * 0.5;
  return p;
}

Eigen::Matrix3d inertia_at_barycenter(const InertialVector& theta) {
  const double m = theta.mass();
  if (m <= 0.0) throw NonPositiveMass("inertia_at_barycenter: mass must be positive, got " + std::to_string(m));
  const Eigen::Matrix3d sh = skew(theta.first_moment());
  return theta.rotational_inertia() - sh * sh.transpose() / m;
}

BarycentricInertia barycentric_decomposition(const InertialVector& theta) {
  BarycentricInertia b;
  b.I_c = inertia_at_barycenter(theta);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(b.I_c);
  const Eigen::Vector3d ascending = eig.eigenvalues();
  b.D << ascending(2), ascending(1), ascending(0);

  const double spread = std::abs(ascending(2) - ascending(0));
  if (spread <= 1e-12 * std::max(1.0, std::abs(ascending(2)))) {
    b.R = Eigen::Matrix3d::Identity();  // isotropic: any axes work, pick identity
  } else {
    Eigen::Vector3d c0 = eig.eigenvectors().col(2);
    Eigen::Vector3d c1 = eig.eigenvectors().col(1);
    // Deterministic signs: first significant component of the leading axes
    // positive, third axis completes a right-handed frame.
    auto fix_sign = [](Eigen::Vector3d& v) {
      for (int i = 0; i < 3; ++i) {
        if (std::abs(v(i)) > 1e-12) {
          if (v(i) < 0.0) v = -v;
          return;
        }
      }
    };
    fix_sign(c0);
    fix_sign(c1);
    b.R.col(0) = c0;
    b.R.col(1) = c1;
    b.R.col(2) = c0.cross(c1);
  }
  b.L = BarycentricInertia::P_inverse() * b.D;
  return b;
}

namespace {

InertialVector displaced(double mass, const Eigen::Matrix3d& barycentric, const Eigen::Vector3d& com) {
  const Eigen::Vector3d h = mass * com;
  const Eigen::Matrix3d shift = mass * (com.squaredNorm() * Eigen::Matrix3d::Identity() - com * com.transpose());
  return InertialVector(mass, h, barycentric + shift);
}

}  // namespace

InertialVector solid_box_inertia(double mass, const Eigen::Vector3d& dims, const Eigen::Vector3d& com) {
  const double ix = mass / 12.0 * (dims(1) * dims(1) + dims(2) * dims(2));
  const double iy = mass / 12.0 * (dims(0) * dims(0) + dims(2) * dims(2));
  const double iz = mass / 12.0 * (dims(0) * dims(0) + dims(1) * dims(1));
  return displaced(mass, Eigen::Vector3d(ix, iy, iz).asDiagonal(), com);
}

InertialVector solid_sphere_inertia(double mass, double radius, const Eigen::Vector3d& com) {
  const double i = 0.4 * mass * radius * radius;
  return displaced(mass, i * Eigen::Matrix3d::Identity(), com);
}

InertialVector point_mass_inertia(double mass, const Eigen::Vector3d& position) {
  return displaced(mass, Eigen::Matrix3d::Zero(), position);
}

ConsistencyReport is_fully_consistent(const InertialVector& theta, double tol) {
  ConsistencyReport report;
  const double m = theta.mass();
  if (m < -tol) {
    report.consistent = false;
    report.violation = "mass";
    return report;
  }

  Eigen::Matrix3d ic;
  if (m > 0.0) {
    const Eigen::Matrix3d sh = skew(theta.first_moment());
    ic = theta.rotational_inertia() - sh * sh.transpose() / m;
  } else if (theta.first_moment().norm() <= tol) {
    ic = theta.rotational_inertia();  // massless limit, only valid with h = 0
  } else {
    report.consistent = false;
    report.violation = "mass";
    return report;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(ic, Eigen::EigenvaluesOnly);
  const Eigen::Vector3d d = eig.eigenvalues();
  if (d.minCoeff() < -tol) {
    report.consistent = false;
    report.violation = "barycentric inertia eigenvalue";
    return report;
  }

  // Triangle inequalities on the principal moments, in x, y, z order of the
  // flat inertia representation (d is ascending; they are symmetric in the
  // labels so we report by the violated combination).
  const char* names[3] = {"triangle inequality D_x", "triangle inequality D_y", "triangle inequality D_z"};
  const Eigen::Vector3d lhs(d(2), d(1), d(0));
  for (int i = 0; i < 3; ++i) {
    const double sum_others = d.sum() - lhs(i);
    if (lhs(i) - sum_others > tol) {
      report.consistent = false;
      // Identify which principal direction overflows by matching the sorted
      // eigenvalue back to the diagonal of I_c (largest diagonal wins).
      int axis;
      ic.diagonal().maxCoeff(&axis);
      report.violation = names[axis];
      return report;
    }
  }
  return report;
}

}  // namespace parest
