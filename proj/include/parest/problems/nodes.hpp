#ifndef PAREST_PROBLEMS_NODES_HPP_
#define PAREST_PROBLEMS_NODES_HPP_

#include <memory>
#include <utility>
#include <vector>

#include "parest/problems/observation.hpp"
#include "parest/rbd/derivatives.hpp"
#include "parest/rbd/integrator.hpp"
#include "parest/solver/problem.hpp"

namespace parest {

/// Shared immutable context of all robot-backed nodes.
struct RobotProblemContext {
  RobotModel model;  // estimated bodies' inertias are overridden by theta
  ParameterSet params;
  StateSpace space{0};

  explicit RobotProblemContext(RobotModel m, ParameterSet p)
      : model(std::move(m)), params(std::move(p)), space(StateSpace::for_model(model)) {}
};

/// One integration step of the phase dynamics with process-uncertainty cost
/// and the observation residuals of its input state.
class RunningNode : public NodeModel {
 public:
  RunningNode(std::shared_ptr<const RobotProblemContext> ctx, ContactSet contacts, Eigen::VectorXd control, double dt,
              const Eigen::VectorXd& omega_diag);

  void add_observation(ObservationTerm term, Eigen::VectorXd measurement);

  int nw() const override { return ctx_->space.size(); }
  Eigen::VectorXd propagate(const Eigen::VectorXd& x, const Eigen::VectorXd& w,
                            const Eigen::VectorXd& theta) const override;
  double cost(const Eigen::VectorXd& x, const Eigen::VectorXd& w, const Eigen::VectorXd& theta) const override;
  void expand(const Eigen::VectorXd& x, const Eigen::VectorXd& w, const Eigen::VectorXd& theta,
              NodeExpansion& e) const override;

  const ContactSet& contacts() const { return contacts_; }
  double dt() const { return dt_; }

 private:
  std::shared_ptr<const RobotProblemContext> ctx_;
  ContactSet contacts_;
  Eigen::VectorXd tau_;  // generalized torque from the applied control
  double dt_;
  Eigen::VectorXd omega_inv_diag_;
  std::vector<std::pair<ObservationTerm, Eigen::VectorXd>> observations_;
};

/// Contact-gain reset: impulse dynamics, no uncertainty, no cost.
class ResetNode : public NodeModel {
 public:
  ResetNode(std::shared_ptr<const RobotProblemContext> ctx, ContactSet contacts)
      : ctx_(std::move(ctx)), contacts_(std::move(contacts)) {}

  int nw() const override { return 0; }
  Eigen::VectorXd propagate(const Eigen::VectorXd& x, const Eigen::VectorXd& w,
                            const Eigen::VectorXd& theta) const override;
  double cost(const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&) const override { return 0.0; }
  void expand(const Eigen::VectorXd& x, const Eigen::VectorXd& w, const Eigen::VectorXd& theta,
              NodeExpansion& e) const override;

  const ContactSet& contacts() const { return contacts_; }

 private:
  std::shared_ptr<const RobotProblemContext> ctx_;
  ContactSet contacts_;
};

/// Observation residuals of the final state.
class RobotTerminalNode : public TerminalModel {
 public:
  explicit RobotTerminalNode(std::shared_ptr<const RobotProblemContext> ctx) : ctx_(std::move(ctx)) {}

  void add_observation(ObservationTerm term, Eigen::VectorXd measurement);

  double cost(const Eigen::VectorXd& x, const Eigen::VectorXd& theta) const override;
  void expand(const Eigen::VectorXd& x, const Eigen::VectorXd& theta, TerminalExpansion& e) const override;

 private:
  std::shared_ptr<const RobotProblemContext> ctx_;
  std::vector<std::pair<ObservationTerm, Eigen::VectorXd>> observations_;
};

}  // namespace parest

#endif  // PAREST_PROBLEMS_NODES_HPP_
