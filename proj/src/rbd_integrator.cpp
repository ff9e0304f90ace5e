#include "parest/rbd/integrator.hpp"

#include <cmath>
#include <stdexcept>

#include "parest/rbd/dynamics.hpp"

namespace parest {
namespace {

double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a <= 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

}  // namespace

Eigen::VectorXd StateSpace::wrap(Eigen::VectorXd x) const {
  for (int i : angles_) x(i) = wrap_angle(x(i));
  return x;
}

Eigen::VectorXd StateSpace::integrate(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) const {
  return wrap(x + dx);
}

Eigen::VectorXd StateSpace::difference(const Eigen::VectorXd& from, const Eigen::VectorXd& to) const {
  Eigen::VectorXd d = to - from;
  for (int i : angles_) d(i) = wrap_angle(d(i));
  return d;
}

Eigen::VectorXd integrate_step(const RobotModel& model, const Eigen::VectorXd& x, const Eigen::VectorXd& w,
                               const Eigen::VectorXd& tau, const ContactSet& contacts, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("integrate_step: dt must be positive");
  const int nq = model.nq();
  const int nv = model.nv();
  const Eigen::VectorXd q = x.head(nq);
  const Eigen::VectorXd v = x.tail(nv);
  const Eigen::VectorXd a = contact_dynamics(model, q, v, tau, contacts).acc;

  Eigen::VectorXd next(nq + nv);
  next.tail(nv) = v + a * dt;
  next.head(nq) = q + next.tail(nv) * dt;
  const StateSpace space = StateSpace::for_model(model);
  return space.integrate(next, w.size() > 0 ? w : Eigen::VectorXd::Zero(nq + nv));
}

StepDerivatives integrate_step_derivatives(const RobotModel& model, const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& tau, const ContactSet& contacts, double dt,
                                           const ParameterSet& params, const Eigen::VectorXd& theta) {
  const int nq = model.nq();
  const int nv = model.nv();
  const Eigen::VectorXd q = x.head(nq);
  const Eigen::VectorXd v = x.tail(nv);

  const StateDerivatives dyn = state_derivatives(model, q, v, tau, contacts);
  StepDerivatives out;
  out.fx.resize(nq + nv, nq + nv);
  // v' = v + dt a(q, v), q' = q + dt v'.
  out.fx.bottomLeftCorner(nv, nq) = dt * dyn.dacc_dq;
  out.fx.bottomRightCorner(nv, nv) = Eigen::MatrixXd::Identity(nv, nv) + dt * dyn.dacc_dv;
  out.fx.topLeftCorner(nq, nq) = Eigen::MatrixXd::Identity(nq, nq) + dt * out.fx.bottomLeftCorner(nv, nq);
  out.fx.topRightCorner(nq, nv) = dt * out.fx.bottomRightCorner(nv, nv);

  if (params.ntheta() > 0) {
    const Eigen::MatrixXd dacc = contacts.empty()
                                     ? fd_param_derivative(model, q, v, tau, params, theta)
                                     : contact_param_derivative(model, q, v, tau, contacts, params, theta).dacc;
    out.ftheta.resize(nq + nv, params.ntheta());
    out.ftheta.bottomRows(nv) = dt * dacc;
    out.ftheta.topRows(nq) = dt * out.ftheta.bottomRows(nv);
  } else {
    out.ftheta.resize(nq + nv, 0);
  }
  return out;
}

Eigen::VectorXd reset_step(const RobotModel& model, const Eigen::VectorXd& x, const ContactSet& contacts) {
  const int nq = model.nq();
  const int nv = model.nv();
  Eigen::VectorXd next = x;
  next.tail(nv) = impulse_dynamics(model, x.head(nq), x.tail(nv), contacts).v_post;
  return next;
}

StepDerivatives reset_step_derivatives(const RobotModel& model, const Eigen::VectorXd& x, const ContactSet& contacts,
                                       const ParameterSet& params, const Eigen::VectorXd& theta) {
  const int nq = model.nq();
  const int nv = model.nv();
  const Eigen::VectorXd q = x.head(nq);
  const Eigen::VectorXd v = x.tail(nv);

  const ImpulseStateDerivatives dyn = impulse_state_derivatives(model, q, v, contacts);
  StepDerivatives out;
  out.fx = Eigen::MatrixXd::Zero(nq + nv, nq + nv);
  out.fx.topLeftCorner(nq, nq).setIdentity();
  out.fx.bottomLeftCorner(nv, nq) = dyn.dvpost_dq;
  out.fx.bottomRightCorner(nv, nv) = dyn.dvpost_dv;

  out.ftheta = Eigen::MatrixXd::Zero(nq + nv, params.ntheta());
  if (params.ntheta() > 0) {
    const Eigen::VectorXd v_post = impulse_dynamics(model, q, v, contacts).v_post;
    out.ftheta.bottomRows(nv) = impulse_param_derivative(model, q, v, v_post, contacts, params, theta).dv_post;
  }
  return out;
}

}  // namespace parest
