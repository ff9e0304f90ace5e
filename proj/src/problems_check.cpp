#include "parest/problems/check.hpp"

#include <random>
#include <sstream>

#include "parest/exceptions.hpp"
#include "parest/rbd/derivatives.hpp"
#include "parest/rbd/dynamics.hpp"

namespace parest {
namespace {

constexpr double kFdStep = 1e-6;

double rel_err(const Eigen::MatrixXd& analytic, const Eigen::MatrixXd& reference) {
  return (analytic - reference).lpNorm<Eigen::Infinity>() / std::max(1.0, reference.lpNorm<Eigen::Infinity>());
}

Eigen::MatrixXd fd_chart_jacobian(ParamChart chart, const Vector10d& pi) {
  Matrix10d jac;
  for (int i = 0; i < 10; ++i) {
    Vector10d plus = pi, minus = pi;
    plus(i) += kFdStep;
    minus(i) -= kFdStep;
    jac.col(i) = (chart_to_theta(chart, plus).vector() - chart_to_theta(chart, minus).vector()) / (2.0 * kFdStep);
  }
  return jac;
}

}  // namespace

bool DerivativeCheckReport::pass(double tol_regressor, double tol_rel) const {
  return regressor_identity < tol_regressor && chart_logchol < tol_rel && chart_expeig < tol_rel &&
         free_dynamics < tol_rel && contact_dynamics < tol_rel && impulse_dynamics < tol_rel;
}

std::string DerivativeCheckReport::to_string() const {
  std::ostringstream out;
  out << "samples:                " << samples << "\n"
      << "regressor identity:     " << regressor_identity << " (abs)\n"
      << "log-Cholesky Jacobian:  " << chart_logchol << " (rel)\n"
      << "exp-eigenvalue Jacobian:" << chart_expeig << " (rel)\n"
      << "free-dynamics dtheta:   " << free_dynamics << " (rel)\n";
  if (contact_checked) {
    out << "contact dtheta:         " << contact_dynamics << " (rel)\n"
        << "impulse dtheta:         " << impulse_dynamics << " (rel)\n";
  } else {
    out << "contact/impulse: no usable contact set, skipped\n";
  }
  return out.str();
}

DerivativeCheckReport check_derivatives(const RobotModel& model, int samples, std::uint64_t seed) {
  model.validate();
  DerivativeCheckReport report;
  report.samples = samples;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int nv = model.nv();

  ContactSet contacts;
  for (std::size_t c = 0; c < model.contact_frames.size(); ++c) contacts.active.push_back(static_cast<int>(c));

  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd q(nv), v(nv), a(nv), tau(nv);
    for (int i = 0; i < nv; ++i) {
      q(i) = unit(rng);
      v(i) = unit(rng);
      a(i) = unit(rng);
      tau(i) = unit(rng);
    }

    const Eigen::MatrixXd y = joint_torque_regressor<double>(model, q, v, a);
    report.regressor_identity =
        std::max(report.regressor_identity,
                 (y * stacked_inertial_vectors(model) - inverse_dynamics<double>(model, q, v, a))
                     .lpNorm<Eigen::Infinity>());

    Vector10d pi;
    for (int i = 0; i < 10; ++i) pi(i) = unit(rng);
    report.chart_logchol = std::max(
        report.chart_logchol, rel_err(chart_jacobian(ParamChart::LogCholesky, pi), fd_chart_jacobian(ParamChart::LogCholesky, pi)));
    report.chart_expeig = std::max(
        report.chart_expeig, rel_err(chart_jacobian(ParamChart::ExpEigenvalue, pi), fd_chart_jacobian(ParamChart::ExpEigenvalue, pi)));

    for (ParamChart chart : {ParamChart::ExpEigenvalue, ParamChart::LogCholesky}) {
      ParameterSet params;
      params.chart = chart;
      for (std::size_t b = 0; b < model.bodies.size(); ++b) params.bodies.push_back(static_cast<int>(b));
      Eigen::VectorXd theta;
      try {
        theta = parameters_from_model(model, params);
      } catch (const std::runtime_error&) {
        continue;  // bodies outside the chart domain (e.g. massless links)
      }

      const Eigen::MatrixXd dacc = fd_param_derivative(model, q, v, tau, params, theta);
      Eigen::MatrixXd fd(nv, params.ntheta());
      for (int i = 0; i < params.ntheta(); ++i) {
        Eigen::VectorXd tp = theta, tm = theta;
        tp(i) += kFdStep;
        tm(i) -= kFdStep;
        fd.col(i) = (free_forward_dynamics<double>(apply_parameters(model, params, tp), q, v, tau) -
                     free_forward_dynamics<double>(apply_parameters(model, params, tm), q, v, tau)) /
                    (2.0 * kFdStep);
      }
      report.free_dynamics = std::max(report.free_dynamics, rel_err(dacc, fd));

      if (contacts.empty()) continue;
      try {
        const ContactParamDerivative dc = contact_param_derivative(model, q, v, tau, contacts, params, theta);
        Eigen::MatrixXd fda(nv, params.ntheta());
        Eigen::MatrixXd fdl(contacts.dimension(), params.ntheta());
        for (int i = 0; i < params.ntheta(); ++i) {
          Eigen::VectorXd tp = theta, tm = theta;
          tp(i) += kFdStep;
          tm(i) -= kFdStep;
          const ContactDynamics<double> cp = contact_dynamics(apply_parameters(model, params, tp), q, v, tau, contacts);
          const ContactDynamics<double> cm = contact_dynamics(apply_parameters(model, params, tm), q, v, tau, contacts);
          fda.col(i) = (cp.acc - cm.acc) / (2.0 * kFdStep);
          fdl.col(i) = (cp.lambda - cm.lambda) / (2.0 * kFdStep);
        }
        report.contact_dynamics =
            std::max({report.contact_dynamics, rel_err(dc.dacc, fda), rel_err(dc.dlambda, fdl)});

        const ImpulseDynamics<double> imp = impulse_dynamics(model, q, v, contacts);
        const ImpulseParamDerivative di = impulse_param_derivative(model, q, v, imp.v_post, contacts, params, theta);
        Eigen::MatrixXd fdv(nv, params.ntheta());
        Eigen::MatrixXd fdi(contacts.dimension(), params.ntheta());
        for (int i = 0; i < params.ntheta(); ++i) {
          Eigen::VectorXd tp = theta, tm = theta;
          tp(i) += kFdStep;
          tm(i) -= kFdStep;
          const ImpulseDynamics<double> ip = impulse_dynamics(apply_parameters(model, params, tp), q, v, contacts);
          const ImpulseDynamics<double> im = impulse_dynamics(apply_parameters(model, params, tm), q, v, contacts);
          fdv.col(i) = (ip.v_post - im.v_post) / (2.0 * kFdStep);
          fdi.col(i) = (ip.impulses - im.impulses) / (2.0 * kFdStep);
        }
        report.impulse_dynamics =
            std::max({report.impulse_dynamics, rel_err(di.dv_post, fdv), rel_err(di.dimpulse, fdi)});
        report.contact_checked = true;
      } catch (const RankDeficientContact&) {
        // configurations where the full contact set loses rank are skipped
      }
    }
  }
  return report;
}

}  // namespace parest
