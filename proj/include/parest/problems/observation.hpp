#ifndef PAREST_PROBLEMS_OBSERVATION_HPP_
#define PAREST_PROBLEMS_OBSERVATION_HPP_

#include <Eigen/Core>
#include <string>
#include <vector>

#include "parest/rbd/model.hpp"

namespace parest {

enum class ObservationKind { JointPosition, JointVelocity, BaseOrientation, BaseVelocity, FullState };

std::string observation_kind_name(ObservationKind kind);
ObservationKind observation_kind_from_name(const std::string& name);

/// Linear state observation h(x) = x[indices] with angle residuals wrapped.
struct ObservationTerm {
  ObservationKind kind = ObservationKind::FullState;
  std::vector<int> indices;
  std::vector<bool> wrap;       // per-row angle flag
  Eigen::MatrixXd cov;
  Eigen::MatrixXd precision;

  int dim() const { return static_cast<int>(indices.size()); }
  Eigen::VectorXd observe(const Eigen::VectorXd& x) const;
  /// z (-) h(x), wrapped on angle rows.
  Eigen::VectorXd residual(const Eigen::VectorXd& z, const Eigen::VectorXd& x) const;
  /// Selection matrix d h / d x.
  Eigen::MatrixXd selection(int nx) const;
};

/// Builds the index set of the given kind for the model; sigma is the
/// per-component standard deviation (isotropic covariance).
ObservationTerm make_observation(ObservationKind kind, const RobotModel& model, double sigma);

}  // namespace parest

#endif  // PAREST_PROBLEMS_OBSERVATION_HPP_
