#ifndef PAREST_TESTS_TEST_MODELS_HPP_
#define PAREST_TESTS_TEST_MODELS_HPP_

#include <random>

#include "parest/rbd/model.hpp"

namespace parest::testing {

/// Revolute pendulum about +y swinging in the x-z plane. The barycenter sits
/// at distance `length` along +x at q = 0; gravity acts along -z, so the
/// stable equilibrium is at q = pi/2.
inline RobotModel point_mass_pendulum(double mass = 1.0, double length = 1.0) {
  RobotModel model;
  Body link;
  link.parent = -1;
  link.joint.type = JointType::Revolute;
  link.joint.axis = Eigen::Vector3d::UnitY();
  link.inertia = point_mass_inertia(mass, Eigen::Vector3d(length, 0, 0));
  link.name = "link";
  model.bodies.push_back(link);
  model.contact_frames.push_back({0, Eigen::Vector3d(length, 0, 0), "tip"});
  model.name = "pendulum";
  return model;
}

/// Two-link arm in the x-z plane with physically consistent box links.
inline RobotModel two_link_arm() {
  RobotModel model;
  Body upper;
  upper.parent = -1;
  upper.joint.type = JointType::Revolute;
  upper.joint.axis = Eigen::Vector3d::UnitY();
  upper.inertia = solid_box_inertia(1.2, Eigen::Vector3d(1.0, 0.08, 0.08), Eigen::Vector3d(0.5, 0, 0));
  upper.name = "upper";
  model.bodies.push_back(upper);

  Body lower;
  lower.parent = 0;
  lower.joint.type = JointType::Revolute;
  lower.joint.axis = Eigen::Vector3d::UnitY();
  lower.placement.p = Eigen::Vector3d(1.0, 0, 0);
  lower.inertia = solid_box_inertia(0.8, Eigen::Vector3d(0.8, 0.06, 0.06), Eigen::Vector3d(0.4, 0, 0));
  lower.name = "lower";
  model.bodies.push_back(lower);

  model.contact_frames.push_back({1, Eigen::Vector3d(0.8, 0, 0), "tip"});
  model.name = "arm2";
  return model;
}

/// Three-link chain (shoulder, elbow, wrist) used for regressor stress tests.
inline RobotModel three_link_chain() {
  RobotModel model = two_link_arm();
  Body wrist;
  wrist.parent = 1;
  wrist.joint.type = JointType::Revolute;
  wrist.joint.axis = Eigen::Vector3d::UnitY();
  wrist.placement.p = Eigen::Vector3d(0.8, 0, 0);
  wrist.inertia = solid_box_inertia(0.5, Eigen::Vector3d(0.5, 0.05, 0.05), Eigen::Vector3d(0.25, 0, 0));
  wrist.name = "wrist";
  model.bodies.push_back(wrist);
  model.contact_frames.clear();
  model.contact_frames.push_back({2, Eigen::Vector3d(0.5, 0, 0), "tip"});
  model.name = "arm3";
  return model;
}

/// Planar-floating box with one ground contact point (a second frame exists
/// for schedule tests; activating both would overconstrain the 3 dofs).
inline RobotModel planar_box(double mass = 2.0) {
  RobotModel model;
  Body box;
  box.parent = -1;
  box.joint.type = JointType::PlanarFloating;
  box.actuated = false;
  box.inertia = solid_box_inertia(mass, Eigen::Vector3d(0.4, 0.2, 0.2), Eigen::Vector3d::Zero());
  box.name = "box";
  model.bodies.push_back(box);
  model.contact_frames.push_back({0, Eigen::Vector3d(-0.2, 0, -0.1), "heel"});
  model.contact_frames.push_back({0, Eigen::Vector3d(0.2, 0, -0.1), "toe"});
  model.name = "box";
  return model;
}

/// Planar-floating torso with two single-joint legs; both feet in contact
/// give 4 constraint rows against 5 dofs.
inline RobotModel planar_biped() {
  RobotModel model;
  Body torso;
  torso.parent = -1;
  torso.joint.type = JointType::PlanarFloating;
  torso.actuated = false;
  torso.inertia = solid_box_inertia(3.0, Eigen::Vector3d(0.4, 0.2, 0.15), Eigen::Vector3d::Zero());
  torso.name = "torso";
  model.bodies.push_back(torso);

  for (int side = 0; side < 2; ++side) {
    Body leg;
    leg.parent = 0;
    leg.joint.type = JointType::Revolute;
    leg.joint.axis = Eigen::Vector3d::UnitY();
    leg.placement.p = Eigen::Vector3d(side == 0 ? -0.15 : 0.15, 0, -0.05);
    leg.inertia = solid_box_inertia(0.4, Eigen::Vector3d(0.05, 0.05, 0.5), Eigen::Vector3d(0, 0, -0.25));
    leg.name = side == 0 ? "left_leg" : "right_leg";
    model.bodies.push_back(leg);
    model.contact_frames.push_back({1 + side, Eigen::Vector3d(0, 0, -0.5), side == 0 ? "left_foot" : "right_foot"});
  }
  model.name = "biped";
  return model;
}

/// Point mass moving in the x-z plane via two prismatic joints (the first
/// body is massless).
inline RobotModel planar_point_mass(double mass = 2.0) {
  RobotModel model;
  Body slide_x;
  slide_x.parent = -1;
  slide_x.joint.type = JointType::Prismatic;
  slide_x.joint.axis = Eigen::Vector3d::UnitX();
  slide_x.inertia = InertialVector();
  slide_x.name = "slide_x";
  model.bodies.push_back(slide_x);

  Body slide_z;
  slide_z.parent = 0;
  slide_z.joint.type = JointType::Prismatic;
  slide_z.joint.axis = Eigen::Vector3d::UnitZ();
  slide_z.inertia = point_mass_inertia(mass, Eigen::Vector3d::Zero());
  slide_z.name = "mass";
  model.bodies.push_back(slide_z);

  model.contact_frames.push_back({1, Eigen::Vector3d::Zero(), "point"});
  model.name = "point_mass";
  return model;
}

inline Eigen::VectorXd random_vector(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> unit(-scale, scale);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = unit(rng);
  return v;
}

}  // namespace parest::testing

#endif  // PAREST_TESTS_TEST_MODELS_HPP_
