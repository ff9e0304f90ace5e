#include "parest/rbd/derivatives.hpp"

#include <unsupported/Eigen/AutoDiff>

#include "parest/rbd/dynamics.hpp"

namespace parest {
namespace {

using ADScalar = Eigen::AutoDiffScalar<Eigen::VectorXd>;

VecXt<ADScalar> seed(const Eigen::VectorXd& x, int nd, int offset) {
  VecXt<ADScalar> out(x.size());
  for (int i = 0; i < x.size(); ++i) out(i) = ADScalar(x(i), nd, offset + i);
  return out;
}

Eigen::MatrixXd extract_jacobian(const VecXt<ADScalar>& y, int nd) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(y.size(), nd);
  for (int i = 0; i < y.size(); ++i) {
    if (y(i).derivatives().size() > 0) jac.row(i) = y(i).derivatives().transpose();
  }
  return jac;
}

}  // namespace

RobotModel apply_parameters(const RobotModel& model, const ParameterSet& params, const Eigen::VectorXd& theta) {
  RobotModel out = model;
  for (std::size_t i = 0; i < params.bodies.size(); ++i) {
    out.bodies.at(params.bodies[i]).inertia = chart_to_theta(params.chart, theta.segment<10>(10 * i));
  }
  return out;
}

Eigen::MatrixXd stacked_parameter_jacobian(const RobotModel& model, const ParameterSet& params,
                                           const Eigen::VectorXd& theta) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(10 * model.bodies.size(), params.ntheta());
  for (std::size_t i = 0; i < params.bodies.size(); ++i) {
    jac.block<10, 10>(10 * params.bodies[i], 10 * i) = chart_jacobian(params.chart, theta.segment<10>(10 * i));
  }
  return jac;
}

Eigen::VectorXd parameters_from_model(const RobotModel& model, const ParameterSet& params) {
  Eigen::VectorXd theta(params.ntheta());
  for (std::size_t i = 0; i < params.bodies.size(); ++i) {
    theta.segment<10>(10 * i) = theta_to_chart(params.chart, model.bodies.at(params.bodies[i]).inertia);
  }
  return theta;
}

Eigen::MatrixXd fd_param_derivative(const RobotModel& model, const Eigen::VectorXd& q, const Eigen::VectorXd& v,
                                    const Eigen::VectorXd& tau, const ParameterSet& params,
                                    const Eigen::VectorXd& theta) {
  const Eigen::VectorXd acc = free_forward_dynamics<double>(model, q, v, tau);
  const Eigen::MatrixXd y = joint_torque_regressor<double>(model, q, v, acc);
  const Eigen::MatrixXd dtau = y * stacked_parameter_jacobian(model, params, theta);
  const Eigen::LLT<Eigen::MatrixXd> llt(mass_matrix<double>(model, q));
  return -llt.solve(dtau);
}

ContactParamDerivative contact_param_derivative(const RobotModel& model, const Eigen::VectorXd& q,
                                                const Eigen::VectorXd& v, const Eigen::VectorXd& tau,
                                                const ContactSet& contacts, const ParameterSet& params,
                                                const Eigen::VectorXd& theta) {
  const ContactDynamics<double> nominal = contact_dynamics(model, q, v, tau, contacts);
  const Eigen::MatrixXd y = joint_torque_regressor<double>(model, q, v, nominal.acc);
  const Eigen::MatrixXd dtau = y * stacked_parameter_jacobian(model, params, theta);

  const ContactKkt<double> kkt = factorize_contact_kkt<double>(model, q, contacts);
  Eigen::MatrixXd x, lam;
  kkt.solve(-dtau, Eigen::MatrixXd::Zero(contacts.dimension(), dtau.cols()), x, lam);
  ContactParamDerivative out;
  out.dacc = x;
  out.dlambda = -lam;
  return out;
}

ImpulseParamDerivative impulse_param_derivative(const RobotModel& model, const Eigen::VectorXd& q,
                                                const Eigen::VectorXd& v_pre, const Eigen::VectorXd& v_post,
                                                const ContactSet& contacts, const ParameterSet& params,
                                                const Eigen::VectorXd& theta) {
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(model.nv());
  const Eigen::MatrixXd dy = joint_torque_regressor<double>(model, q, zero, (v_post - v_pre).eval()) -
                             joint_torque_regressor<double>(model, q, zero, zero);
  const Eigen::MatrixXd dtau = dy * stacked_parameter_jacobian(model, params, theta);

  const ContactKkt<double> kkt = factorize_contact_kkt<double>(model, q, contacts);
  Eigen::MatrixXd x, lam;
  kkt.solve(-dtau, Eigen::MatrixXd::Zero(contacts.dimension(), dtau.cols()), x, lam);
  ImpulseParamDerivative out;
  out.dv_post = x;
  out.dimpulse = -lam;
  return out;
}

StateDerivatives state_derivatives(const RobotModel& model, const Eigen::VectorXd& q, const Eigen::VectorXd& v,
                                   const Eigen::VectorXd& tau, const ContactSet& contacts) {
  const int nq = model.nq();
  const int nv = model.nv();
  const int nd = nq + 2 * nv;
  if (!contacts.empty()) check_contact_rank(contact_jacobian<double>(model, q, contacts));

  const VecXt<ADScalar> qa = seed(q, nd, 0);
  const VecXt<ADScalar> va = seed(v, nd, nq);
  const VecXt<ADScalar> ta = seed(tau, nd, nq + nv);
  const ContactDynamics<ADScalar> sol = contact_dynamics_core<ADScalar>(model, qa, va, ta, contacts);

  const Eigen::MatrixXd dacc = extract_jacobian(sol.acc, nd);
  const Eigen::MatrixXd dlam = extract_jacobian(sol.lambda, nd);
  StateDerivatives out;
  out.dacc_dq = dacc.leftCols(nq);
  out.dacc_dv = dacc.middleCols(nq, nv);
  out.dacc_dtau = dacc.rightCols(nv);
  out.dlambda_dq = dlam.leftCols(nq);
  out.dlambda_dv = dlam.middleCols(nq, nv);
  out.dlambda_dtau = dlam.rightCols(nv);
  return out;
}

ImpulseStateDerivatives impulse_state_derivatives(const RobotModel& model, const Eigen::VectorXd& q,
                                                  const Eigen::VectorXd& v_pre, const ContactSet& contacts) {
  const int nq = model.nq();
  const int nv = model.nv();
  const int nd = nq + nv;
  if (!contacts.empty()) check_contact_rank(contact_jacobian<double>(model, q, contacts));

  const VecXt<ADScalar> qa = seed(q, nd, 0);
  const VecXt<ADScalar> va = seed(v_pre, nd, nq);
  const ImpulseDynamics<ADScalar> sol = impulse_dynamics_core<ADScalar>(model, qa, va, contacts);

  const Eigen::MatrixXd dv = extract_jacobian(sol.v_post, nd);
  const Eigen::MatrixXd dimp = extract_jacobian(sol.impulses, nd);
  ImpulseStateDerivatives out;
  out.dvpost_dq = dv.leftCols(nq);
  out.dvpost_dv = dv.rightCols(nv);
  out.dimpulse_dq = dimp.leftCols(nq);
  out.dimpulse_dv = dimp.rightCols(nv);
  return out;
}

}  // namespace parest
