#ifndef PAREST_RBD_DYNAMICS_HPP_
#define PAREST_RBD_DYNAMICS_HPP_

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/SVD>

#include "parest/exceptions.hpp"
#include "parest/rbd/cholesky.hpp"
#include "parest/rbd/kinematics.hpp"
#include "parest/rbd/model.hpp"

namespace parest {

/// 6x6 spatial inertia about the body-frame origin.
template <typename S>
Mat6t<S> spatial_inertia(const InertialVector& theta) {
  const Mat3t<S> sh = skew(Vec3t<S>(theta.first_moment().cast<S>()));
  Mat6t<S> si;
  si.template topLeftCorner<3, 3>() = theta.rotational_inertia().cast<S>();
  si.template topRightCorner<3, 3>() = sh;
  si.template bottomLeftCorner<3, 3>() = sh.transpose();
  si.template bottomRightCorner<3, 3>() = S(theta.mass()) * Mat3t<S>::Identity();
  return si;
}

/// Joint-space inertia matrix, assembled from body Jacobians.
template <typename S>
MatXt<S> mass_matrix_with(const RobotModel& model, const KinematicsData<S>& kin) {
  const int nv = model.nv();
  MatXt<S> m = MatXt<S>::Zero(nv, nv);
  for (std::size_t i = 0; i < model.bodies.size(); ++i) {
    m.noalias() += kin.jac[i].transpose() * spatial_inertia<S>(model.bodies[i].inertia) * kin.jac[i];
  }
  return m;
}

template <typename S>
MatXt<S> mass_matrix(const RobotModel& model, const VecXt<S>& q) {
  const VecXt<S> zero = VecXt<S>::Zero(model.nv());
  return mass_matrix_with(model, compute_kinematics<S>(model, q, zero, zero, false));
}

/// Joint-torque regressor: inverse dynamics as a linear function of the
/// stacked per-body inertial vectors, tau = Y(q, v, a) theta.
template <typename S>
MatXt<S> joint_torque_regressor(const RobotModel& model, const VecXt<S>& q, const VecXt<S>& v, const VecXt<S>& a) {
  const KinematicsData<S> kin = compute_kinematics<S>(model, q, v, a, true);
  const int nb = static_cast<int>(model.bodies.size());
  MatXt<S> y(model.nv(), 10 * nb);
  for (int i = 0; i < nb; ++i) {
    y.middleCols(10 * i, 10).noalias() = kin.jac[i].transpose() * momentum_rate_regressor(kin.vel[i], kin.acc[i]);
  }
  return y;
}

/// Stacked inertial vectors of all bodies in regressor column order.
inline Eigen::VectorXd stacked_inertial_vectors(const RobotModel& model) {
  Eigen::VectorXd theta(10 * model.bodies.size());
  for (std::size_t i = 0; i < model.bodies.size(); ++i) theta.segment<10>(10 * i) = model.bodies[i].inertia.vector();
  return theta;
}

template <typename S>
VecXt<S> inverse_dynamics(const RobotModel& model, const VecXt<S>& q, const VecXt<S>& v, const VecXt<S>& a) {
  const KinematicsData<S> kin = compute_kinematics<S>(model, q, v, a, true);
  VecXt<S> tau = VecXt<S>::Zero(model.nv());
  for (std::size_t i = 0; i < model.bodies.size(); ++i) {
    const InertialVector& par = model.bodies[i].inertia;
    const Vec6t<S> momentum_rate = apply_spatial_inertia<S>(S(par.mass()), par.first_moment().cast<S>().eval(),
                                                            par.rotational_inertia().cast<S>().eval(), kin.acc[i]) +
                                   cross_force(kin.vel[i], apply_spatial_inertia<S>(
                                                               S(par.mass()), par.first_moment().cast<S>().eval(),
                                                               par.rotational_inertia().cast<S>().eval(), kin.vel[i]));
    tau.noalias() += kin.jac[i].transpose() * momentum_rate;
  }
  return tau;
}

template <typename S>
VecXt<S> bias_forces(const RobotModel& model, const VecXt<S>& q, const VecXt<S>& v) {
  return inverse_dynamics<S>(model, q, v, VecXt<S>::Zero(model.nv()).eval());
}

/// Rows of the active contact Jacobian: world x and z velocity of each
/// contact point per row pair.
template <typename S>
MatXt<S> contact_jacobian_with(const RobotModel& model, const ContactSet& contacts, const KinematicsData<S>& kin) {
  MatXt<S> jc(contacts.dimension(), model.nv());
  for (std::size_t c = 0; c < contacts.active.size(); ++c) {
    const ContactFrame& frame = model.contact_frames.at(contacts.active[c]);
    const Mat6Xt<S>& jb = kin.jac[frame.body];
    const Vec3t<S> offset = frame.offset.cast<S>();
    // World-frame point velocity rows: R * (v + w x offset).
    const Eigen::Matrix<S, 3, Eigen::Dynamic> jp =
        kin.world[frame.body].R * (jb.template bottomRows<3>() - skew(offset) * jb.template topRows<3>());
    jc.row(2 * c) = jp.row(0);
    jc.row(2 * c + 1) = jp.row(2);
  }
  return jc;
}

template <typename S>
MatXt<S> contact_jacobian(const RobotModel& model, const VecXt<S>& q, const ContactSet& contacts) {
  const VecXt<S> zero = VecXt<S>::Zero(model.nv());
  return contact_jacobian_with(model, contacts, compute_kinematics<S>(model, q, zero, zero, false));
}

/// Contact drift: world x/z acceleration of the contact points at zero joint
/// acceleration (the Jdot * v term).
template <typename S>
VecXt<S> contact_drift(const RobotModel& model, const VecXt<S>& q, const VecXt<S>& v, const ContactSet& contacts) {
  const KinematicsData<S> kin = compute_kinematics<S>(model, q, v, VecXt<S>::Zero(model.nv()).eval(), false);
  VecXt<S> drift(contacts.dimension());
  for (std::size_t c = 0; c < contacts.active.size(); ++c) {
    const ContactFrame& frame = model.contact_frames.at(contacts.active[c]);
    const Vec3t<S> offset = frame.offset.cast<S>();
    const Vec3t<S> w = kin.vel[frame.body].template head<3>();
    const Vec3t<S> vo = kin.vel[frame.body].template tail<3>();
    const Vec3t<S> dw = kin.acc[frame.body].template head<3>();
    const Vec3t<S> dv = kin.acc[frame.body].template tail<3>();
    const Vec3t<S> point_acc =
        kin.world[frame.body].R * (dv + dw.cross(offset) + w.cross(vo + w.cross(offset)));
    drift(2 * c) = point_acc(0);
    drift(2 * c + 1) = point_acc(2);
  }
  return drift;
}

template <typename S>
struct ContactDynamics {
  VecXt<S> acc;
  VecXt<S> lambda;
};

/// Factorization pieces of the contact KKT system, reusable for derivative
/// right-hand sides.
template <typename S>
struct ContactKkt {
  MatXt<S> m;
  DenseCholesky<S> m_chol;
  MatXt<S> jc;
  DenseCholesky<S> schur_chol;  // of Jc M^-1 Jc^T

  /// Solves [[M, Jc^T], [Jc, 0]] [x; y] = [b; c].
  void solve(const MatXt<S>& b, const MatXt<S>& c, MatXt<S>& x, MatXt<S>& y) const {
    const MatXt<S> minv_b = m_chol.solve(b);
    if (jc.rows() == 0) {
      x = minv_b;
      y.resize(0, b.cols());
      return;
    }
    y = schur_chol.solve((jc * minv_b - c).eval());
    x = minv_b - m_chol.solve((jc.transpose() * y).eval());
  }
};

template <typename S>
ContactKkt<S> factorize_contact_kkt(const RobotModel& model, const VecXt<S>& q, const ContactSet& contacts) {
  ContactKkt<S> kkt;
  kkt.m = mass_matrix<S>(model, q);
  kkt.m_chol.compute(kkt.m);
  if (!kkt.m_chol.ok()) {
    throw NotPositiveDefinite("mass matrix is not positive definite (inconsistent inertias?)");
  }
  kkt.jc = contact_jacobian<S>(model, q, contacts);
  if (kkt.jc.rows() > 0) {
    const MatXt<S> schur = kkt.jc * kkt.m_chol.solve(kkt.jc.transpose().eval());
    kkt.schur_chol.compute(schur);
    if (!kkt.schur_chol.ok()) {
      throw RankDeficientContact("contact Schur complement is not positive definite");
    }
  }
  return kkt;
}

/// Requires the active contact Jacobian to have full row rank: all of its
/// rows must be supported by singular values above the (scaled) tolerance.
inline void check_contact_rank(const Eigen::MatrixXd& jc, double tol = 1e-8) {
  if (jc.rows() == 0) return;
  if (jc.rows() > jc.cols()) {
    throw RankDeficientContact("contact constraints exceed the velocity dimension (" + std::to_string(jc.rows()) +
                               " rows, " + std::to_string(jc.cols()) + " dofs)");
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jc);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (smin <= tol * std::max(1.0, smax)) {
    throw RankDeficientContact("contact Jacobian is rank deficient: smallest singular value " + std::to_string(smin));
  }
}

/// Equality-constrained forward dynamics: M a = tau - h + Jc^T lambda with
/// Jc a = -a_c, solved through the Schur complement of the KKT system.
template <typename S>
ContactDynamics<S> contact_dynamics_core(const RobotModel& model, const VecXt<S>& q, const VecXt<S>& v,
                                         const VecXt<S>& tau, const ContactSet& contacts) {
  const ContactKkt<S> kkt = factorize_contact_kkt<S>(model, q, contacts);
  const VecXt<S> rhs = tau - bias_forces<S>(model, q, v);
  ContactDynamics<S> out;
  if (contacts.empty()) {
    out.acc = kkt.m_chol.solve(MatXt<S>(rhs)).col(0);
    out.lambda.resize(0);
    return out;
  }
  const VecXt<S> drift = contact_drift<S>(model, q, v, contacts);
  MatXt<S> x, y;
  kkt.solve(MatXt<S>(rhs), MatXt<S>(-drift), x, y);
  out.acc = x.col(0);
  out.lambda = -y.col(0);
  return out;
}

inline ContactDynamics<double> contact_dynamics(const RobotModel& model, const Eigen::VectorXd& q,
                                                const Eigen::VectorXd& v, const Eigen::VectorXd& tau,
                                                const ContactSet& contacts) {
  if (!contacts.empty()) check_contact_rank(contact_jacobian<double>(model, q, contacts));
  return contact_dynamics_core<double>(model, q, v, tau, contacts);
}

template <typename S>
VecXt<S> free_forward_dynamics(const RobotModel& model, const VecXt<S>& q, const VecXt<S>& v, const VecXt<S>& tau) {
  return contact_dynamics_core<S>(model, q, v, tau, ContactSet{}).acc;
}

template <typename S>
struct ImpulseDynamics {
  VecXt<S> v_post;
  VecXt<S> impulses;
};

/// Zero-restitution impulse dynamics at contact gain:
/// M (v+ - v-) = Jc^T Lambda with Jc v+ = 0.
template <typename S>
ImpulseDynamics<S> impulse_dynamics_core(const RobotModel& model, const VecXt<S>& q, const VecXt<S>& v_pre,
                                         const ContactSet& contacts) {
  ImpulseDynamics<S> out;
  if (contacts.empty()) {
    out.v_post = v_pre;
    out.impulses.resize(0);
    return out;
  }
  const ContactKkt<S> kkt = factorize_contact_kkt<S>(model, q, contacts);
  // Unknowns (v+, -Lambda): M v+ + Jc^T (-Lambda) = M v-, Jc v+ = 0.
  MatXt<S> x, y;
  kkt.solve(MatXt<S>(kkt.m * v_pre), MatXt<S>::Zero(kkt.jc.rows(), 1).eval(), x, y);
  out.v_post = x.col(0);
  out.impulses = -y.col(0);
  return out;
}

inline ImpulseDynamics<double> impulse_dynamics(const RobotModel& model, const Eigen::VectorXd& q,
                                                const Eigen::VectorXd& v_pre, const ContactSet& contacts) {
  if (!contacts.empty()) check_contact_rank(contact_jacobian<double>(model, q, contacts));
  return impulse_dynamics_core<double>(model, q, v_pre, contacts);
}

}  // namespace parest

#endif  // PAREST_RBD_DYNAMICS_HPP_
