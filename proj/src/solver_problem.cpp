#include "parest/solver/problem.hpp"

#include <Eigen/Cholesky>

#include "parest/exceptions.hpp"

namespace parest {
namespace {

Eigen::MatrixXd precision_of(const Eigen::MatrixXd& cov, const char* what) {
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite(std::string(what) + " covariance");
  return llt.solve(Eigen::MatrixXd::Identity(cov.rows(), cov.cols()));
}

}  // namespace

void NodeExpansion::resize(int nx, int nw, int ntheta) {
  fx.setZero(nx, nx);
  fw.setZero(nx, nw);
  ftheta.setZero(nx, ntheta);
  gap.setZero(nx);
  cost = 0.0;
  lx.setZero(nx);
  lw.setZero(nw);
  ltheta.setZero(ntheta);
  lxx.setZero(nx, nx);
  lxw.setZero(nx, nw);
  lxtheta.setZero(nx, ntheta);
  lww.setZero(nw, nw);
  lwtheta.setZero(nw, ntheta);
  lthetatheta.setZero(ntheta, ntheta);
}

void TerminalExpansion::resize(int nx, int ntheta) {
  cost = 0.0;
  lx.setZero(nx);
  ltheta.setZero(ntheta);
  lxx.setZero(nx, nx);
  lxtheta.setZero(nx, ntheta);
  lthetatheta.setZero(ntheta, ntheta);
}

void ShootingProblem::set_arrival_prior(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
  x0_mean_ = mean;
  x0_prec_ = precision_of(cov, "arrival");
}

void ShootingProblem::set_parameter_prior(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
  theta_mean_ = mean;
  theta_prec_ = precision_of(cov, "parameter");
  has_theta_prior_ = true;
}

Iterate ShootingProblem::make_iterate(const Eigen::VectorXd& x0, const Eigen::VectorXd& theta) const {
  Iterate it;
  it.xs.assign(horizon() + 1, x0);
  it.ws.resize(horizon());
  for (int k = 0; k < horizon(); ++k) it.ws[k] = Eigen::VectorXd::Zero(nodes_[k]->nw());
  it.theta = theta;
  return it;
}

double evaluate_cost(const ShootingProblem& problem, const Iterate& it) {
  double cost = 0.0;
  for (int k = 0; k < problem.horizon(); ++k) cost += problem.node(k).cost(it.xs[k], it.ws[k], it.theta);
  if (problem.terminal() != nullptr) cost += problem.terminal()->cost(it.xs.back(), it.theta);

  const Eigen::VectorXd r0 = problem.space().difference(problem.arrival_mean(), it.xs[0]);
  cost += 0.5 * r0.dot(problem.arrival_precision() * r0);
  if (problem.has_parameter_prior()) {
    const Eigen::VectorXd rt = it.theta - problem.parameter_mean();
    cost += 0.5 * rt.dot(problem.parameter_precision() * rt);
  }
  return cost;
}

std::vector<Eigen::VectorXd> compute_gaps(const ShootingProblem& problem, const Iterate& it) {
  std::vector<Eigen::VectorXd> gaps(problem.horizon());
  for (int k = 0; k < problem.horizon(); ++k) {
    const Eigen::VectorXd next = problem.node(k).propagate(it.xs[k], it.ws[k], it.theta);
    gaps[k] = problem.space().difference(it.xs[k + 1], next);
  }
  return gaps;
}

EvaluatedIterate evaluate_iterate(const ShootingProblem& problem, const Iterate& it) {
  EvaluatedIterate out;
  out.cost = evaluate_cost(problem, it);
  out.finite = std::isfinite(out.cost);
  for (const Eigen::VectorXd& gap : compute_gaps(problem, it)) {
    out.gap_l1 += gap.lpNorm<1>();
    out.gap_linf = std::max(out.gap_linf, gap.lpNorm<Eigen::Infinity>());
    out.finite = out.finite && gap.allFinite();
  }
  return out;
}

ProblemExpansion compute_node_expansions(const ShootingProblem& problem, const Iterate& it) {
  const int n = problem.horizon();
  ProblemExpansion exp;
  exp.nodes.resize(n);
  for (int k = 0; k < n; ++k) {
    NodeExpansion& e = exp.nodes[k];
    e.resize(problem.nx(), problem.node(k).nw(), problem.ntheta());
    problem.node(k).expand(it.xs[k], it.ws[k], it.theta, e);
    const Eigen::VectorXd next = problem.node(k).propagate(it.xs[k], it.ws[k], it.theta);
    e.gap = problem.space().difference(it.xs[k + 1], next);
    exp.total_cost += e.cost;
    exp.gap_l1 += e.gap.lpNorm<1>();
    exp.gap_linf = std::max(exp.gap_linf, e.gap.lpNorm<Eigen::Infinity>());
  }
  exp.terminal.resize(problem.nx(), problem.ntheta());
  if (problem.terminal() != nullptr) problem.terminal()->expand(it.xs.back(), it.theta, exp.terminal);
  exp.total_cost += exp.terminal.cost;

  // Arrival and parameter priors are part of the arrival node's expansion.
  if (n > 0) {
    NodeExpansion& e0 = exp.nodes.front();
    const Eigen::VectorXd r0 = problem.space().difference(problem.arrival_mean(), it.xs[0]);
    e0.lx += problem.arrival_precision() * r0;
    e0.lxx += problem.arrival_precision();
    const double prior_cost = 0.5 * r0.dot(problem.arrival_precision() * r0);
    e0.cost += prior_cost;
    exp.total_cost += prior_cost;
    if (problem.has_parameter_prior()) {
      const Eigen::VectorXd rt = it.theta - problem.parameter_mean();
      e0.ltheta += problem.parameter_precision() * rt;
      e0.lthetatheta += problem.parameter_precision();
      const double theta_cost = 0.5 * rt.dot(problem.parameter_precision() * rt);
      e0.cost += theta_cost;
      exp.total_cost += theta_cost;
    }
  }

  for (const NodeExpansion& e : exp.nodes) {
    const bool finite = e.fx.allFinite() && e.fw.allFinite() && e.ftheta.allFinite() && e.gap.allFinite() &&
                        e.lx.allFinite() && e.lw.allFinite() && e.ltheta.allFinite() && e.lxx.allFinite() &&
                        e.lxw.allFinite() && e.lxtheta.allFinite() && e.lww.allFinite() && e.lwtheta.allFinite() &&
                        e.lthetatheta.allFinite() && std::isfinite(e.cost);
    if (!finite) throw NonFiniteData("node expansion contains non-finite entries");
  }
  if (!std::isfinite(exp.total_cost)) throw NonFiniteData("total cost is not finite");
  return exp;
}

}  // namespace parest
