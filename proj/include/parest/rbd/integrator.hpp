#ifndef PAREST_RBD_INTEGRATOR_HPP_
#define PAREST_RBD_INTEGRATOR_HPP_

#include <Eigen/Core>
#include <vector>

#include "parest/rbd/derivatives.hpp"
#include "parest/rbd/model.hpp"

namespace parest {

/// Additive state chart with selected coordinates treated as wrapped angles.
class StateSpace {
 public:
  explicit StateSpace(int n) : n_(n) {}
  StateSpace(int n, std::vector<int> angle_indices) : n_(n), angles_(std::move(angle_indices)) {}

  static StateSpace for_model(const RobotModel& model) {
    return StateSpace(model.nq() + model.nv(), model.angle_coordinates());
  }

  int size() const { return n_; }
  const std::vector<int>& angle_indices() const { return angles_; }

  Eigen::VectorXd integrate(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) const;
  /// Tangent vector from `from` to `to` (angle coordinates wrapped to (-pi, pi]).
  Eigen::VectorXd difference(const Eigen::VectorXd& from, const Eigen::VectorXd& to) const;
  Eigen::VectorXd wrap(Eigen::VectorXd x) const;

 private:
  int n_ = 0;
  std::vector<int> angles_;
};

/// Semi-implicit Euler step with tangent-space uncertainty injection:
/// v' = v + a dt, q' = q (+) v' dt, x' = (q', v') (+) w.
Eigen::VectorXd integrate_step(const RobotModel& model, const Eigen::VectorXd& x, const Eigen::VectorXd& w,
                               const Eigen::VectorXd& tau, const ContactSet& contacts, double dt);

struct StepDerivatives {
  Eigen::MatrixXd fx;      // d(x')/d(x)
  Eigen::MatrixXd ftheta;  // d(x')/d(theta), chart coordinates
};

StepDerivatives integrate_step_derivatives(const RobotModel& model, const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& tau, const ContactSet& contacts, double dt,
                                           const ParameterSet& params, const Eigen::VectorXd& theta);

/// Contact-gain reset map: configuration unchanged, velocity replaced by the
/// zero-restitution post-impact velocity.
Eigen::VectorXd reset_step(const RobotModel& model, const Eigen::VectorXd& x, const ContactSet& contacts);

StepDerivatives reset_step_derivatives(const RobotModel& model, const Eigen::VectorXd& x, const ContactSet& contacts,
                                       const ParameterSet& params, const Eigen::VectorXd& theta);

}  // namespace parest

#endif  // PAREST_RBD_INTEGRATOR_HPP_
