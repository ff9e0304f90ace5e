#ifndef PAREST_RBD_SPATIAL_HPP_
#define PAREST_RBD_SPATIAL_HPP_

#include <Eigen/Core>

#include "parest/so3.hpp"

namespace parest {

// 6D spatial vectors are ordered angular-first: motion (omega, v), force (n, f),
// both referenced to the frame origin and expressed in frame coordinates.

template <typename S>
using Vec3t = Eigen::Matrix<S, 3, 1>;
template <typename S>
using Mat3t = Eigen::Matrix<S, 3, 3>;
template <typename S>
using Vec6t = Eigen::Matrix<S, 6, 1>;
template <typename S>
using Mat6t = Eigen::Matrix<S, 6, 6>;

/// Rigid placement mapping child coordinates into parent coordinates:
/// x_parent = R x_child + p.
template <typename S>
struct Placement {
  Mat3t<S> R = Mat3t<S>::Identity();
  Vec3t<S> p = Vec3t<S>::Zero();

  Placement() = default;
  Placement(const Mat3t<S>& rotation, const Vec3t<S>& translation) : R(rotation), p(translation) {}

  Placement operator*(const Placement& other) const { return {R * other.R, R * other.p + p}; }
  Placement inverse() const { return {R.transpose(), -(R.transpose() * p)}; }
  Vec3t<S> act(const Vec3t<S>& x) const { return R * x + p; }

  template <typename T>
  Placement<T> cast() const {
    return {R.template cast<T>(), p.template cast<T>()};
  }
};

using Placementd = Placement<double>;

/// Motion change of coordinates child -> parent.
template <typename S>
Vec6t<S> motion_to_parent(const Placement<S>& x, const Vec6t<S>& m) {
  Vec6t<S> out;
  out.template head<3>() = x.R * m.template head<3>();
  out.template tail<3>() = x.R * m.template tail<3>() + x.p.cross(Vec3t<S>(x.R * m.template head<3>()));
  return out;
}

/// Motion change of coordinates parent -> child.
template <typename S>
Vec6t<S> motion_to_child(const Placement<S>& x, const Vec6t<S>& m) {
  Vec6t<S> out;
  out.template head<3>() = x.R.transpose() * m.template head<3>();
  out.template tail<3>() = x.R.transpose() * (m.template tail<3>() - x.p.cross(m.template head<3>()));
  return out;
}

/// Motion cross product m1 x m2.
template <typename S>
Vec6t<S> cross_motion(const Vec6t<S>& a, const Vec6t<S>& b) {
  Vec6t<S> out;
  out.template head<3>() = a.template head<3>().cross(b.template head<3>());
  out.template tail<3>() = a.template head<3>().cross(b.template tail<3>()) + a.template tail<3>().cross(b.template head<3>());
  return out;
}

/// Dual (force) cross product m x* f.
template <typename S>
Vec6t<S> cross_force(const Vec6t<S>& m, const Vec6t<S>& f) {
  Vec6t<S> out;
  out.template head<3>() = m.template head<3>().cross(f.template head<3>()) + m.template tail<3>().cross(f.template tail<3>());
  out.template tail<3>() = m.template head<3>().cross(f.template tail<3>());
  return out;
}

/// Spatial inertia application: (I w + h x v, m v - h x w) for a body with
/// inertial vector parts (m, h, I) about the frame origin.
template <typename S>
Vec6t<S> apply_spatial_inertia(const S& mass, const Vec3t<S>& h, const Mat3t<S>& inertia, const Vec6t<S>& m) {
  const Vec3t<S> w = m.template head<3>();
  const Vec3t<S> v = m.template tail<3>();
  Vec6t<S> out;
  out.template head<3>() = inertia * w + h.cross(v);
  out.template tail<3>() = mass * v - h.cross(w);
  return out;
}

/// 3x6 matrix L(w) with I w = L(w) flat(I), flat order (xx, xy, yy, xz, yz, zz).
template <typename S>
Eigen::Matrix<S, 3, 6> inertia_vec_product(const Vec3t<S>& w) {
  Eigen::Matrix<S, 3, 6> m;
  m << w(0), w(1), S(0), w(2), S(0), S(0),  //
      S(0), w(0), w(1), S(0), w(2), S(0),   //
      S(0), S(0), S(0), w(0), w(1), w(2);
  return m;
}

/// Net spatial force of one body as a linear function of its inertial vector:
/// f = Phi(v, a) theta with columns ordered (m | h | flat I). The acceleration
/// a is the coordinate derivative of the body twist (gravity enters through a
/// fictitious base acceleration).
template <typename S>
Eigen::Matrix<S, 6, 10> momentum_rate_regressor(const Vec6t<S>& vel, const Vec6t<S>& acc) {
  const Vec3t<S> w = vel.template head<3>();
  const Vec3t<S> v = vel.template tail<3>();
  const Vec3t<S> dw = acc.template head<3>();
  const Vec3t<S> dv = acc.template tail<3>();
  const Vec3t<S> wxv = w.cross(v);

  Eigen::Matrix<S, 6, 10> phi;
  phi.template block<3, 1>(0, 0).setZero();
  phi.template block<3, 3>(0, 1) = -skew(dv) - skew(wxv);
  phi.template block<3, 6>(0, 4) = inertia_vec_product(dw) + skew(w) * inertia_vec_product(w);
  phi.template block<3, 1>(3, 0) = dv + wxv;
  phi.template block<3, 3>(3, 1) = skew(dw) + skew(w) * skew(w);
  phi.template block<3, 6>(3, 4).setZero();
  return phi;
}

}  // namespace parest

#endif  // PAREST_RBD_SPATIAL_HPP_
