#ifndef PAREST_PROBLEMS_SCENARIO_HPP_
#define PAREST_PROBLEMS_SCENARIO_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parest/problems/nodes.hpp"
#include "parest/solver/solver.hpp"

namespace parest {

struct Phase {
  int start = 0;  // step range [start, end)
  int end = 0;
  std::vector<int> contacts;
};

struct PayloadSpec {
  int body = -1;  // -1 means no payload
  InertialVector added;
};

struct ThetaInit {
  enum class Policy { Exact, Scale, Explicit };
  Policy policy = Policy::Scale;
  double scale = 1.7;
  Eigen::VectorXd values;  // physical inertial vectors, 10 per estimated body
};

struct CostConfig {
  double omega_sigma = 1e-2;        // process noise stddev per tangent coord
  double arrival_sigma = 1.0;       // arrival prior stddev
  double theta_prior_sigma = 0.0;   // <= 0 disables the parameter prior
};

/// Ground-truth description of an estimation experiment: a robot with known
/// true inertias (base model plus optional payload), a control and contact
/// schedule, and the observation set.
struct SyntheticScenario {
  std::string name;
  RobotModel model;
  PayloadSpec payload;
  std::vector<int> estimated_bodies;
  Eigen::VectorXd q0, v0;
  int horizon = 0;
  double dt = 1e-2;
  Eigen::MatrixXd controls;  // ntau x horizon
  std::vector<Phase> phases;
  std::vector<std::pair<ObservationKind, double>> observations;  // kind, sigma
  double observation_noise = 0.0;  // additive Gaussian stddev on measurements
  CostConfig cost;
  ThetaInit theta_init;

  /// Model with the payload folded into the carrying body.
  RobotModel true_model() const;
  void validate() const;
};

/// Node schedule derived from the phases: one running entry per step and a
/// reset entry wherever a later phase gains contacts.
struct ScheduleEntry {
  bool is_reset = false;
  int step = -1;  // running nodes: time step index
  ContactSet contacts;
};
std::vector<ScheduleEntry> build_schedule(const SyntheticScenario& scenario);

/// Observations and ground truth produced by rolling out the true dynamics
/// with zero uncertainty (plus optional seeded measurement noise).
struct SyntheticData {
  std::vector<ScheduleEntry> schedule;
  std::vector<Eigen::VectorXd> true_states;          // one per node boundary
  std::vector<Eigen::VectorXd> observations;         // stacked terms per observed state (empty if unobserved)
  std::vector<Vector10d> true_theta;                 // per estimated body
  std::uint64_t seed = 0;
};

SyntheticData synthesize_data(const SyntheticScenario& scenario, std::uint64_t seed);

std::string data_to_json(const SyntheticData& data);
SyntheticData data_from_json(const std::string& text, const SyntheticScenario& scenario);

struct BuiltProblem {
  std::shared_ptr<ShootingProblem> problem;
  std::shared_ptr<const RobotProblemContext> context;
  Eigen::VectorXd theta0;  // chart coordinates
};

/// Assembles the estimation problem for the given chart: per-phase dynamics
/// nodes, reset nodes at contact gains, observation costs and priors, and the
/// initial parameter guess mapped through the chart inverse.
BuiltProblem build_problem(const SyntheticScenario& scenario, const SyntheticData& data, ParamChart chart);

struct EstimateMetrics {
  std::vector<double> param_rel_err;   // per estimated body, physical coordinates
  std::vector<double> mass_rel_err;
  double traj_l1 = 0.0;
  double traj_linf = 0.0;
  double final_cost = 0.0;
};

EstimateMetrics score_estimate(const BuiltProblem& built, const SolveResult& result, const SyntheticData& data);

/// Worst-case norm of the regressor applied to the parameter error along the
/// true trajectory; measures recovery of the identifiable combination.
double regressor_image_error(const SyntheticScenario& scenario, const SyntheticData& data,
                             const Eigen::VectorXd& theta_chart, ParamChart chart);

/// Scenario file parsing (JSON schema documented in the README). Relative
/// model paths are resolved against the scenario file's directory.
SyntheticScenario load_scenario(const std::string& path);
SyntheticScenario parse_scenario(const std::string& json_text, const std::string& base_dir);

}  // namespace parest

#endif  // PAREST_PROBLEMS_SCENARIO_HPP_
