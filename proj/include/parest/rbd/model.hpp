#ifndef PAREST_RBD_MODEL_HPP_
#define PAREST_RBD_MODEL_HPP_

#include <Eigen/Core>
#include <string>
#include <vector>

#include "parest/inertial/params.hpp"
#include "parest/rbd/spatial.hpp"

namespace parest {

/// Supported joint set. The planar-floating joint carries the (x, z, pitch)
/// coordinates of a base moving in the x-z plane and rotating about +y.
enum class JointType { Revolute, Prismatic, PlanarFloating };

struct Joint {
  JointType type = JointType::Revolute;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitY();  // revolute/prismatic only

  int nq() const { return type == JointType::PlanarFloating ? 3 : 1; }
};

struct Body {
  int parent = -1;  // -1 means the world
  Joint joint;
  Placementd placement;  // joint frame in the parent frame
  InertialVector inertia;
  std::string name;
  bool actuated = true;  // whether this joint's dofs receive control torques
};

/// Point attached to a body; its world x (tangential) and z (normal)
/// accelerations are constrained when the contact is active.
struct ContactFrame {
  int body = 0;
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();
  std::string name;
};

struct RobotModel {
  std::vector<Body> bodies;
  Eigen::Vector3d gravity = Eigen::Vector3d(0.0, 0.0, -9.81);
  std::vector<ContactFrame> contact_frames;
  std::string name;

  int nv() const {
    int n = 0;
    for (const Body& b : bodies) n += b.joint.nq();
    return n;
  }
  int nq() const { return nv(); }

  /// First generalized-coordinate index of each body's joint.
  std::vector<int> joint_offsets() const {
    std::vector<int> off(bodies.size());
    int n = 0;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      off[i] = n;
      n += bodies[i].joint.nq();
    }
    return off;
  }

  /// Indices of configuration coordinates that are wrapped angles (the pitch
  /// coordinate of planar-floating joints).
  std::vector<int> angle_coordinates() const {
    std::vector<int> idx;
    const std::vector<int> off = joint_offsets();
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      if (bodies[i].joint.type == JointType::PlanarFloating) idx.push_back(off[i] + 2);
    }
    return idx;
  }

  /// Generalized-torque selection for actuated dofs (nv x ntau).
  Eigen::MatrixXd actuation_matrix() const {
    const std::vector<int> off = joint_offsets();
    int ntau = 0;
    for (const Body& b : bodies) {
      if (b.actuated) ntau += b.joint.nq();
    }
    Eigen::MatrixXd sel = Eigen::MatrixXd::Zero(nv(), ntau);
    int col = 0;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      if (!bodies[i].actuated) continue;
      for (int j = 0; j < bodies[i].joint.nq(); ++j) sel(off[i] + j, col++) = 1.0;
    }
    return sel;
  }

  int ntau() const {
    int n = 0;
    for (const Body& b : bodies) {
      if (b.actuated) n += b.joint.nq();
    }
    return n;
  }

  void validate() const;
};

/// Active contacts referencing entries of model.contact_frames; each planar
/// point contact contributes 2 constraint rows (tangential, normal).
struct ContactSet {
  std::vector<int> active;

  int dimension() const { return 2 * static_cast<int>(active.size()); }
  bool empty() const { return active.empty(); }
};

}  // namespace parest

#endif  // PAREST_RBD_MODEL_HPP_
