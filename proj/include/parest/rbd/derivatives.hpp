#ifndef PAREST_RBD_DERIVATIVES_HPP_
#define PAREST_RBD_DERIVATIVES_HPP_

#include <Eigen/Core>
#include <vector>

#include "parest/inertial/charts.hpp"
#include "parest/rbd/model.hpp"

namespace parest {

/// Selection of the bodies whose inertial parameters are being estimated and
/// the chart their coordinates live in. The parameter vector stacks 10 chart
/// coordinates per estimated body.
struct ParameterSet {
  std::vector<int> bodies;
  ParamChart chart = ParamChart::ExpEigenvalue;

  int ntheta() const { return 10 * static_cast<int>(bodies.size()); }
};

/// Copy of the model with the estimated bodies' inertial vectors replaced by
/// the chart image of theta.
RobotModel apply_parameters(const RobotModel& model, const ParameterSet& params, const Eigen::VectorXd& theta);

/// Jacobian of the stacked per-body inertial vectors (10 per body, all
/// bodies) with respect to the chart coordinates of the estimated ones.
Eigen::MatrixXd stacked_parameter_jacobian(const RobotModel& model, const ParameterSet& params,
                                           const Eigen::VectorXd& theta);

/// Chart-coordinate vector matching the model's current inertial parameters.
Eigen::VectorXd parameters_from_model(const RobotModel& model, const ParameterSet& params);

/// Derivative of free forward dynamics with respect to the chart coordinates:
/// d(a)/d(theta) = -M^{-1} Y(q, v, a) d(vartheta)/d(theta).
Eigen::MatrixXd fd_param_derivative(const RobotModel& model, const Eigen::VectorXd& q, const Eigen::VectorXd& v,
                                    const Eigen::VectorXd& tau, const ParameterSet& params,
                                    const Eigen::VectorXd& theta);

struct ContactParamDerivative {
  Eigen::MatrixXd dacc;
  Eigen::MatrixXd dlambda;
};

/// Derivatives of constrained accelerations and contact forces with respect
/// to the chart coordinates, through the contact KKT system.
ContactParamDerivative contact_param_derivative(const RobotModel& model, const Eigen::VectorXd& q,
                                                const Eigen::VectorXd& v, const Eigen::VectorXd& tau,
                                                const ContactSet& contacts, const ParameterSet& params,
                                                const Eigen::VectorXd& theta);

struct ImpulseParamDerivative {
  Eigen::MatrixXd dv_post;
  Eigen::MatrixXd dimpulse;
};

/// Derivatives of the post-impact velocity and contact impulses with respect
/// to the chart coordinates.
ImpulseParamDerivative impulse_param_derivative(const RobotModel& model, const Eigen::VectorXd& q,
                                                const Eigen::VectorXd& v_pre, const Eigen::VectorXd& v_post,
                                                const ContactSet& contacts, const ParameterSet& params,
                                                const Eigen::VectorXd& theta);

struct StateDerivatives {
  Eigen::MatrixXd dacc_dq, dacc_dv, dacc_dtau;
  Eigen::MatrixXd dlambda_dq, dlambda_dv, dlambda_dtau;
};

/// Derivatives of (constrained) forward dynamics with respect to
/// configuration, velocity and generalized torque, computed by forward-mode
/// differentiation of the full evaluation.
StateDerivatives state_derivatives(const RobotModel& model, const Eigen::VectorXd& q, const Eigen::VectorXd& v,
                                   const Eigen::VectorXd& tau, const ContactSet& contacts);

struct ImpulseStateDerivatives {
  Eigen::MatrixXd dvpost_dq, dvpost_dv;
  Eigen::MatrixXd dimpulse_dq, dimpulse_dv;
};

ImpulseStateDerivatives impulse_state_derivatives(const RobotModel& model, const Eigen::VectorXd& q,
                                                  const Eigen::VectorXd& v_pre, const ContactSet& contacts);

}  // namespace parest

#endif  // PAREST_RBD_DERIVATIVES_HPP_
