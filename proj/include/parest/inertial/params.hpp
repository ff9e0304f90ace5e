#ifndef PAREST_INERTIAL_PARAMS_HPP_
#define PAREST_INERTIAL_PARAMS_HPP_

#include <Eigen/Core>
#include <iosfwd>
#include <string>

namespace parest {

using Vector10d = Eigen::Matrix<double, 10, 1>;

/// Inertial parameters of one rigid body, serialized as
/// [m, h_x, h_y, h_z, I_xx, I_xy, I_yy, I_xz, I_yz, I_zz].
/// The first mass moment h = m*c and the rotational inertia I are expressed
/// in the body-fixed frame, about the body-frame origin.
class InertialVector {
 public:
  InertialVector() : data_(Vector10d::Zero()) {}
  explicit InertialVector(const Vector10d& data) : data_(data) {}
  InertialVector(double mass, const Eigen::Vector3d& first_moment, const Eigen::Matrix3d& inertia);

  double mass() const { return data_(0); }
  Eigen::Vector3d first_moment() const { return data_.segment<3>(1); }
  /// Symmetric 3x3 rotational inertia reconstructed from the 6 stored elements.
  Eigen::Matrix3d rotational_inertia() const;

  const Vector10d& vector() const { return data_; }
  Vector10d& vector() { return data_; }

  /// Inertial vectors of rigidly attached bodies (same frame) add up.
  InertialVector operator+(const InertialVector& other) const { return InertialVector(data_ + other.data_); }
  InertialVector operator*(double s) const { return InertialVector(s * data_); }

  /// Text form: 10 whitespace-separated decimals in serialization order.
  std::string to_text() const;
  static InertialVector from_text(const std::string& text);

 private:
  Vector10d data_;
};

/// The 6 unique elements of a symmetric 3x3 matrix in serialization order
/// (xx, xy, yy, xz, yz, zz), and its inverse.
Eigen::Matrix<double, 6, 1> symmetric_to_flat(const Eigen::Matrix3d& m);
Eigen::Matrix3d flat_to_symmetric(const Eigen::Matrix<double, 6, 1>& f);

/// 4x4 pseudo-inertia [[Sigma, h], [h^T, m]] with Sigma = tr(I)/2 * 1 - I.
/// Positive semidefiniteness of J is equivalent to full physical consistency.
struct PseudoInertia {
  Eigen::Matrix4d J;

  Eigen::Matrix3d sigma() const { return J.topLeftCorner<3, 3>(); }
  Eigen::Vector3d h() const { return J.topRightCorner<3, 1>(); }
  double mass() const { return J(3, 3); }
  double min_eigenvalue() const;

  /// Inverse assembly back to the inertial vector.
  InertialVector to_inertial_vector() const;
};

PseudoInertia pseudo_inertia(const InertialVector& theta);

/// Barycentric decomposition I_c = R diag(D) R^T with D = P L, where L are the
/// second moments of mass and P is the fixed 0/1 coupling matrix.
struct BarycentricInertia {
  Eigen::Matrix3d I_c;
  Eigen::Matrix3d R;        // principal axes, det = +1
  Eigen::Vector3d D;        // principal moments, sorted descending
  Eigen::Vector3d L;        // second moments of mass, D = P * L

  static const Eigen::Matrix3d& P();
  static const Eigen::Matrix3d& P_inverse();
};

/// Rotational inertia displaced to the barycenter by the parallel axis
/// theorem: I_c = I - S(h) S(h)^T / m. Requires m > 0.
Eigen::Matrix3d inertia_at_barycenter(const InertialVector& theta);

/// Eigen-decomposes I_c with a deterministic convention: D sorted descending,
/// det R = +1 (third axis from the cross product of the first two), and
/// identity R at fully repeated eigenvalues.
BarycentricInertia barycentric_decomposition(const InertialVector& theta);

/// Inertial vectors of homogeneous primitive solids, expressed about the body
/// frame origin with the barycenter displaced to `com`. Useful for building
/// physically consistent models.
InertialVector solid_box_inertia(double mass, const Eigen::Vector3d& dims, const Eigen::Vector3d& com);
InertialVector solid_sphere_inertia(double mass, double radius, const Eigen::Vector3d& com);
/// Point mass: zero barycentric inertia (only semidefinite-consistent).
InertialVector point_mass_inertia(double mass, const Eigen::Vector3d& position);

struct ConsistencyReport {
  bool consistent = true;
  std::string violation;  // names the first violated condition, empty if none
};

/// Full physical consistency check: m >= -tol, eigenvalues of I_c >= -tol and
/// the three triangle inequalities on the principal moments within tol.
ConsistencyReport is_fully_consistent(const InertialVector& theta, double tol);

}  // namespace parest

#endif  // PAREST_INERTIAL_PARAMS_HPP_
