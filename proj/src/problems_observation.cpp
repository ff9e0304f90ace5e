#include "parest/problems/observation.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "parest/exceptions.hpp"
#include "parest/problems/nodes.hpp"
#include "parest/rbd/dynamics.hpp"

namespace parest {
namespace {

double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a <= 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

}  // namespace

std::string observation_kind_name(ObservationKind kind) {
  switch (kind) {
    case ObservationKind::JointPosition:
      return "joint-position";
    case ObservationKind::JointVelocity:
      return "joint-velocity";
    case ObservationKind::BaseOrientation:
      return "base-orientation";
    case ObservationKind::BaseVelocity:
      return "base-velocity";
    case ObservationKind::FullState:
      return "full-state";
  }
  return "full-state";
}

ObservationKind observation_kind_from_name(const std::string& name) {
  if (name == "joint-position") return ObservationKind::JointPosition;
  if (name == "joint-velocity") return ObservationKind::JointVelocity;
  if (name == "base-orientation") return ObservationKind::BaseOrientation;
  if (name == "base-velocity") return ObservationKind::BaseVelocity;
  if (name == "full-state") return ObservationKind::FullState;
  throw ParseError("unknown observation kind '" + name + "'");
}

Eigen::VectorXd ObservationTerm::observe(const Eigen::VectorXd& x) const {
  Eigen::VectorXd z(dim());
  for (int i = 0; i < dim(); ++i) z(i) = x(indices[i]);
  return z;
}

Eigen::VectorXd ObservationTerm::residual(const Eigen::VectorXd& z, const Eigen::VectorXd& x) const {
  Eigen::VectorXd r = z - observe(x);
  for (int i = 0; i < dim(); ++i) {
    if (wrap[i]) r(i) = wrap_angle(r(i));
  }
  return r;
}

Eigen::MatrixXd ObservationTerm::selection(int nx) const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim(), nx);
  for (int i = 0; i < dim(); ++i) h(i, indices[i]) = 1.0;
  return h;
}

ObservationTerm make_observation(ObservationKind kind, const RobotModel& model, double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("observation sigma must be positive");
  const int nq = model.nq();
  const int nv = model.nv();
  const std::vector<int> angles = model.angle_coordinates();
  const std::vector<int> offsets = model.joint_offsets();

  ObservationTerm term;
  term.kind = kind;
  auto is_angle = [&angles](int i) {
    return std::find(angles.begin(), angles.end(), i) != angles.end();
  };

  switch (kind) {
    case ObservationKind::JointPosition:
      for (std::size_t b = 0; b < model.bodies.size(); ++b) {
        if (model.bodies[b].joint.type == JointType::PlanarFloating) continue;
        term.indices.push_back(offsets[b]);
      }
      break;
    case ObservationKind::JointVelocity:
      for (std::size_t b = 0; b < model.bodies.size(); ++b) {
        if (model.bodies[b].joint.type == JointType::PlanarFloating) continue;
        term.indices.push_back(nq + offsets[b]);
      }
      break;
    case ObservationKind::BaseOrientation:
      for (int i : angles) term.indices.push_back(i);
      break;
    case ObservationKind::BaseVelocity:
      for (std::size_t b = 0; b < model.bodies.size(); ++b) {
        if (model.bodies[b].joint.type != JointType::PlanarFloating) continue;
        for (int j = 0; j < 3; ++j) term.indices.push_back(nq + offsets[b] + j);
      }
      break;
    case ObservationKind::FullState:
      for (int i = 0; i < nq + nv; ++i) term.indices.push_back(i);
      break;
  }
  if (term.indices.empty()) {
    throw std::invalid_argument("observation '" + observation_kind_name(kind) + "' selects no coordinates");
  }
  term.wrap.resize(term.indices.size());
  for (std::size_t i = 0; i < term.indices.size(); ++i) term.wrap[i] = is_angle(term.indices[i]);
  term.cov = sigma * sigma * Eigen::MatrixXd::Identity(term.dim(), term.dim());
  term.precision = Eigen::MatrixXd::Identity(term.dim(), term.dim()) / (sigma * sigma);
  return term;
}

RunningNode::RunningNode(std::shared_ptr<const RobotProblemContext> ctx, ContactSet contacts,
                         Eigen::VectorXd control, double dt, const Eigen::VectorXd& omega_diag)
    : ctx_(std::move(ctx)), contacts_(std::move(contacts)), dt_(dt) {
  tau_ = ctx_->model.actuation_matrix() * control;
  omega_inv_diag_ = omega_diag.cwiseInverse();
}

void RunningNode::add_observation(ObservationTerm term, Eigen::VectorXd measurement) {
  observations_.emplace_back(std::move(term), std::move(measurement));
}

Eigen::VectorXd RunningNode::propagate(const Eigen::VectorXd& x, const Eigen::VectorXd& w,
                                       const Eigen::VectorXd& theta) const {
  const RobotModel model = apply_parameters(ctx_->model, ctx_->params, theta);
  return integrate_step(model, x, w, tau_, contacts_, dt_);
}

double RunningNode::cost(const Eigen::VectorXd& x, const Eigen::VectorXd& w, const Eigen::VectorXd&) const {
  double c = 0.5 * w.dot(omega_inv_diag_.asDiagonal() * w);
  for (const auto& [term, z] : observations_) {
    const Eigen::VectorXd r = term.residual(z, x);
    c += 0.5 * r.dot(term.precision * r);
  }
  return c;
}

void RunningNode::expand(const Eigen::VectorXd& x, const Eigen::VectorXd& w, const Eigen::VectorXd& theta,
                         NodeExpansion& e) const {
  const RobotModel model = apply_parameters(ctx_->model, ctx_->params, theta);
  const StepDerivatives deriv = integrate_step_derivatives(model, x, tau_, contacts_, dt_, ctx_->params, theta);
  e.fx = deriv.fx;
  e.fw = Eigen::MatrixXd::Identity(nw(), nw());
  e.ftheta = deriv.ftheta;

  e.cost = cost(x, w, theta);
  e.lw = omega_inv_diag_.asDiagonal() * w;
  e.lww = omega_inv_diag_.asDiagonal();
  const int nx = ctx_->space.size();
  for (const auto& [term, z] : observations_) {
    const Eigen::VectorXd r = term.residual(z, x);
    const Eigen::MatrixXd h = term.selection(nx);
    e.lx -= h.transpose() * (term.precision * r);
    e.lxx += h.transpose() * term.precision * h;
  }
}

Eigen::VectorXd ResetNode::propagate(const Eigen::VectorXd& x, const Eigen::VectorXd&,
                                     const Eigen::VectorXd& theta) const {
  const RobotModel model = apply_parameters(ctx_->model, ctx_->params, theta);
  return reset_step(model, x, contacts_);
}

void ResetNode::expand(const Eigen::VectorXd& x, const Eigen::VectorXd&, const Eigen::VectorXd& theta,
                       NodeExpansion& e) const {
  const RobotModel model = apply_parameters(ctx_->model, ctx_->params, theta);
  const StepDerivatives deriv = reset_step_derivatives(model, x, contacts_, ctx_->params, theta);
  e.fx = deriv.fx;
  e.ftheta = deriv.ftheta;
}

void RobotTerminalNode::add_observation(ObservationTerm term, Eigen::VectorXd measurement) {
  observations_.emplace_back(std::move(term), std::move(measurement));
}

double RobotTerminalNode::cost(const Eigen::VectorXd& x, const Eigen::VectorXd&) const {
  double c = 0.0;
  for (const auto& [term, z] : observations_) {
    const Eigen::VectorXd r = term.residual(z, x);
    c += 0.5 * r.dot(term.precision * r);
  }
  return c;
}

void RobotTerminalNode::expand(const Eigen::VectorXd& x, const Eigen::VectorXd& theta, TerminalExpansion& e) const {
  e.cost = cost(x, theta);
  const int nx = ctx_->space.size();
  for (const auto& [term, z] : observations_) {
    const Eigen::VectorXd r = term.residual(z, x);
    const Eigen::MatrixXd h = term.selection(nx);
    e.lx -= h.transpose() * (term.precision * r);
    e.lxx += h.transpose() * term.precision * h;
  }
}

}  // namespace parest
