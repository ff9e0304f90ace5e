#ifndef PAREST_SOLVER_PROBLEM_HPP_
#define PAREST_SOLVER_PROBLEM_HPP_

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "parest/rbd/integrator.hpp"

namespace parest {

/// Quadratic expansion of one node: dynamics Jacobians with respect to state,
/// uncertainty and parameters, the dynamics gap, and Gauss-Newton cost terms.
struct NodeExpansion {
  Eigen::MatrixXd fx, fw, ftheta;
  Eigen::VectorXd gap;  // f(x_k, w_k; theta) (-) x_{k+1}
  double cost = 0.0;
  Eigen::VectorXd lx, lw, ltheta;
  Eigen::MatrixXd lxx, lxw, lxtheta, lww, lwtheta, lthetatheta;

  void resize(int nx, int nw, int ntheta);
};

struct TerminalExpansion {
  double cost = 0.0;
  Eigen::VectorXd lx, ltheta;
  Eigen::MatrixXd lxx, lxtheta, lthetatheta;

  void resize(int nx, int ntheta);
};

/// One stage of the estimation horizon: a transition x' = f(x, w; theta)
/// together with its stage cost. Reset maps have nw() == 0 and no cost.
class NodeModel {
 public:
  virtual ~NodeModel() = default;
  virtual int nw() const = 0;
  virtual Eigen::VectorXd propagate(const Eigen::VectorXd& x, const Eigen::VectorXd& w,
                                    const Eigen::VectorXd& theta) const = 0;
  virtual double cost(const Eigen::VectorXd& x, const Eigen::VectorXd& w, const Eigen::VectorXd& theta) const = 0;
  /// Fills everything but the gap (which depends on the next state).
  virtual void expand(const Eigen::VectorXd& x, const Eigen::VectorXd& w, const Eigen::VectorXd& theta,
                      NodeExpansion& e) const = 0;
};

class TerminalModel {
 public:
  virtual ~TerminalModel() = default;
  virtual double cost(const Eigen::VectorXd& x, const Eigen::VectorXd& theta) const = 0;
  virtual void expand(const Eigen::VectorXd& x, const Eigen::VectorXd& theta, TerminalExpansion& e) const = 0;
};

/// Decision variables of the estimation problem.
struct Iterate {
  std::vector<Eigen::VectorXd> xs;  // N + 1 states
  std::vector<Eigen::VectorXd> ws;  // N uncertainties (empty at reset nodes)
  Eigen::VectorXd theta;
};

/// Sequence of nodes plus the arrival-state prior (always present) and an
/// optional parameter prior, both attached to the arrival node.
class ShootingProblem {
 public:
  ShootingProblem(StateSpace space, int ntheta) : space_(std::move(space)), ntheta_(ntheta) {}

  void add_node(std::shared_ptr<const NodeModel> node) { nodes_.push_back(std::move(node)); }
  void set_terminal(std::shared_ptr<const TerminalModel> terminal) { terminal_ = std::move(terminal); }
  void set_arrival_prior(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov);
  void set_parameter_prior(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov);

  int horizon() const { return static_cast<int>(nodes_.size()); }
  int nx() const { return space_.size(); }
  int ntheta() const { return ntheta_; }
  const StateSpace& space() const { return space_; }
  const NodeModel& node(int k) const { return *nodes_.at(k); }
  const TerminalModel* terminal() const { return terminal_.get(); }

  const Eigen::VectorXd& arrival_mean() const { return x0_mean_; }
  const Eigen::MatrixXd& arrival_precision() const { return x0_prec_; }
  bool has_parameter_prior() const { return has_theta_prior_; }
  const Eigen::VectorXd& parameter_mean() const { return theta_mean_; }
  const Eigen::MatrixXd& parameter_precision() const { return theta_prec_; }

  /// Zero-uncertainty iterate with all states set to x0 (reset nodes get
  /// empty w slots).
  Iterate make_iterate(const Eigen::VectorXd& x0, const Eigen::VectorXd& theta) const;

 private:
  StateSpace space_;
  int ntheta_ = 0;
  std::vector<std::shared_ptr<const NodeModel>> nodes_;
  std::shared_ptr<const TerminalModel> terminal_;
  Eigen::VectorXd x0_mean_;
  Eigen::MatrixXd x0_prec_;
  bool has_theta_prior_ = false;
  Eigen::VectorXd theta_mean_;
  Eigen::MatrixXd theta_prec_;
};

/// Expansion of the whole problem around an iterate. Prior terms are folded
/// into the arrival node's cost derivatives.
struct ProblemExpansion {
  std::vector<NodeExpansion> nodes;
  TerminalExpansion terminal;
  double total_cost = 0.0;
  double gap_l1 = 0.0;
  double gap_linf = 0.0;
};

/// Total cost including priors, and the dynamics gaps of an iterate.
double evaluate_cost(const ShootingProblem& problem, const Iterate& it);
std::vector<Eigen::VectorXd> compute_gaps(const ShootingProblem& problem, const Iterate& it);

struct EvaluatedIterate {
  double cost = 0.0;
  double gap_l1 = 0.0;
  double gap_linf = 0.0;
  bool finite = true;
};
EvaluatedIterate evaluate_iterate(const ShootingProblem& problem, const Iterate& it);

/// Derivatives of dynamics and costs at every node; throws NonFiniteData on
/// non-finite entries.
ProblemExpansion compute_node_expansions(const ShootingProblem& problem, const Iterate& it);

}  // namespace parest

#endif  // PAREST_SOLVER_PROBLEM_HPP_
