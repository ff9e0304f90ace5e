#ifndef PAREST_RBD_KINEMATICS_HPP_
#define PAREST_RBD_KINEMATICS_HPP_

#include <Eigen/Core>
#include <vector>

#include "parest/rbd/model.hpp"
#include "parest/rbd/spatial.hpp"

namespace parest {

template <typename S>
using VecXt = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using MatXt = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Mat6Xt = Eigen::Matrix<S, 6, Eigen::Dynamic>;

/// 6x6 motion coordinate change parent -> child.
template <typename S>
Mat6t<S> adjoint_to_child(const Placement<S>& x) {
  Mat6t<S> ad = Mat6t<S>::Zero();
  const Mat3t<S> rt = x.R.transpose();
  ad.template topLeftCorner<3, 3>() = rt;
  ad.template bottomRightCorner<3, 3>() = rt;
  ad.template bottomLeftCorner<3, 3>() = -rt * skew(x.p);
  return ad;
}

template <typename S>
struct JointKinematics {
  Placement<S> transform;  // joint child frame in the joint parent frame
  Mat6Xt<S> subspace;      // motion subspace in child coordinates
  Vec6t<S> bias;           // apparent derivative of the subspace times qdot
};

template <typename S>
JointKinematics<S> joint_kinematics(const Joint& joint, const VecXt<S>& q, const VecXt<S>& v) {
  using std::cos;
  using std::sin;
  JointKinematics<S> jk;
  jk.bias = Vec6t<S>::Zero();
  switch (joint.type) {
    case JointType::Revolute: {
      const Vec3t<S> axis = joint.axis.cast<S>();
      jk.transform = Placement<S>(so3::exp(Vec3t<S>(axis * q(0))), Vec3t<S>::Zero());
      jk.subspace.resize(6, 1);
      jk.subspace.template topRows<3>() = axis;
      jk.subspace.template bottomRows<3>().setZero();
      break;
    }
    case JointType::Prismatic: {
      const Vec3t<S> axis = joint.axis.cast<S>();
      jk.transform = Placement<S>(Mat3t<S>::Identity(), Vec3t<S>(axis * q(0)));
      jk.subspace.resize(6, 1);
      jk.subspace.template topRows<3>().setZero();
      jk.subspace.template bottomRows<3>() = axis;
      break;
    }
    case JointType::PlanarFloating: {
      const S c = cos(q(2));
      const S s = sin(q(2));
      Mat3t<S> r;
      r << c, S(0), s, S(0), S(1), S(0), -s, S(0), c;
      jk.transform = Placement<S>(r, Vec3t<S>(q(0), S(0), q(1)));
      jk.subspace = Mat6Xt<S>::Zero(6, 3);
      jk.subspace.template block<3, 1>(3, 0) = Vec3t<S>(c, S(0), s);
      jk.subspace.template block<3, 1>(3, 1) = Vec3t<S>(-s, S(0), c);
      jk.subspace(1, 2) = S(1);
      // The in-plane translation columns rotate with the pitch coordinate.
      jk.bias.template tail<3>() = v(2) * (v(0) * Vec3t<S>(-s, S(0), c) - v(1) * Vec3t<S>(c, S(0), s));
      break;
    }
  }
  return jk;
}

template <typename S>
struct KinematicsData {
  std::vector<Placement<S>> world;  // body frame in world coordinates
  std::vector<Vec6t<S>> vel;        // body twists, body coordinates
  std::vector<Vec6t<S>> acc;        // coordinate derivatives of the twists
  std::vector<Mat6Xt<S>> jac;       // body Jacobians, body coordinates
};

/// Single sweep computing placements, body Jacobians, twists and their
/// coordinate derivatives. With `gravity_offset` the recursion starts from a
/// fictitious base acceleration -g, so downstream momentum rates include
/// gravity without a separate term.
template <typename S>
KinematicsData<S> compute_kinematics(const RobotModel& model, const VecXt<S>& q, const VecXt<S>& v,
                                     const VecXt<S>& qdd, bool gravity_offset) {
  const int nb = static_cast<int>(model.bodies.size());
  const int nv = model.nv();
  const std::vector<int> off = model.joint_offsets();

  KinematicsData<S> data;
  data.world.resize(nb);
  data.vel.resize(nb);
  data.acc.resize(nb);
  data.jac.assign(nb, Mat6Xt<S>::Zero(6, nv));

  Vec6t<S> base_acc = Vec6t<S>::Zero();
  if (gravity_offset) base_acc.template tail<3>() = -model.gravity.cast<S>();

  for (int i = 0; i < nb; ++i) {
    const Body& body = model.bodies[i];
    const int nd = body.joint.nq();
    const VecXt<S> qi = q.segment(off[i], nd);
    const VecXt<S> vi = v.segment(off[i], nd);
    const JointKinematics<S> jk = joint_kinematics<S>(body.joint, qi, vi);
    const Placement<S> local = body.placement.cast<S>() * jk.transform;

    Placement<S> parent_world;
    Vec6t<S> parent_vel;
    Vec6t<S> parent_acc;
    if (body.parent < 0) {
      parent_world = Placement<S>();
      parent_vel = Vec6t<S>::Zero();
      parent_acc = base_acc;
    } else {
      parent_world = data.world[body.parent];
      parent_vel = data.vel[body.parent];
      parent_acc = data.acc[body.parent];
    }

    data.world[i] = parent_world * local;
    const Vec6t<S> vj = jk.subspace * vi;
    data.vel[i] = motion_to_child(local, parent_vel) + vj;
    data.acc[i] = motion_to_child(local, parent_acc) + jk.subspace * qdd.segment(off[i], nd) + jk.bias +
                  cross_motion(data.vel[i], vj);

    if (body.parent >= 0) data.jac[i] = adjoint_to_child(local) * data.jac[body.parent];
    data.jac[i].middleCols(off[i], nd) = jk.subspace;
  }
  return data;
}

/// Configuration-only convenience wrapper.
template <typename S>
std::vector<Placement<S>> forward_kinematics(const RobotModel& model, const VecXt<S>& q) {
  const VecXt<S> zero = VecXt<S>::Zero(model.nv());
  return compute_kinematics<S>(model, q, zero, zero, false).world;
}

}  // namespace parest

#endif  // PAREST_RBD_KINEMATICS_HPP_
