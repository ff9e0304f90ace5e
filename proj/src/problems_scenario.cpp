#include "parest/problems/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "parest/exceptions.hpp"
#include "parest/rbd/dynamics.hpp"
#include "parest/rbd/model_io.hpp"

namespace parest {

using nlohmann::json;

RobotModel SyntheticScenario::true_model() const {
  RobotModel out = model;
  if (payload.body >= 0) {
    out.bodies.at(payload.body).inertia = out.bodies.at(payload.body).inertia + payload.added;
  }
  return out;
}

void SyntheticScenario::validate() const {
  model.validate();
  if (horizon < 1) throw InconsistentSchedule("scenario horizon must be >= 1");
  if (dt <= 0.0) throw InconsistentSchedule("scenario dt must be positive");
  if (q0.size() != model.nq() || v0.size() != model.nv()) {
    throw InconsistentSchedule("scenario initial state does not match the model dimensions");
  }
  if (controls.rows() != model.ntau() || controls.cols() != horizon) {
    throw InconsistentSchedule("scenario controls must be ntau x horizon");
  }
  if (phases.empty()) throw InconsistentSchedule("scenario needs at least one phase");
  int expected = 0;
  for (const Phase& p : phases) {
    if (p.start != expected || p.end <= p.start) throw InconsistentSchedule("phases must partition [0, horizon)");
    for (int c : p.contacts) {
      if (c < 0 || c >= static_cast<int>(model.contact_frames.size())) {
        throw InconsistentSchedule("phase references unknown contact frame " + std::to_string(c));
      }
    }
    expected = p.end;
  }
  if (expected != horizon) throw InconsistentSchedule("phases must cover the whole horizon");
  for (int b : estimated_bodies) {
    if (b < 0 || b >= static_cast<int>(model.bodies.size())) {
      throw InconsistentSchedule("estimated body index out of range");
    }
  }
  if (payload.body >= 0 &&
      std::find(estimated_bodies.begin(), estimated_bodies.end(), payload.body) == estimated_bodies.end()) {
    throw InconsistentSchedule("the payload-carrying body must be estimated");
  }
  if (estimated_bodies.empty()) throw InconsistentSchedule("scenario must estimate at least one body");
}

std::vector<ScheduleEntry> build_schedule(const SyntheticScenario& scenario) {
  scenario.validate();
  std::vector<ScheduleEntry> schedule;
  for (std::size_t p = 0; p < scenario.phases.size(); ++p) {
    const Phase& phase = scenario.phases[p];
    for (int step = phase.start; step < phase.end; ++step) {
      ScheduleEntry entry;
      entry.step = step;
      entry.contacts.active = phase.contacts;
      schedule.push_back(entry);
    }
    if (p + 1 < scenario.phases.size()) {
      const Phase& next = scenario.phases[p + 1];
      const std::set<int> current(phase.contacts.begin(), phase.contacts.end());
      const bool gains = std::any_of(next.contacts.begin(), next.contacts.end(),
                                     [&current](int c) { return current.find(c) == current.end(); });
      if (gains) {
        ScheduleEntry entry;
        entry.is_reset = true;
        entry.contacts.active = next.contacts;
        schedule.push_back(entry);
      }
    }
  }
  return schedule;
}

SyntheticData synthesize_data(const SyntheticScenario& scenario, std::uint64_t seed) {
  const RobotModel truth = scenario.true_model();
  const Eigen::MatrixXd actuation = truth.actuation_matrix();
  const int nx = truth.nq() + truth.nv();

  SyntheticData data;
  data.seed = seed;
  data.schedule = build_schedule(scenario);

  Eigen::VectorXd x(nx);
  x << scenario.q0, scenario.v0;
  data.true_states.push_back(x);
  const Eigen::VectorXd no_uncertainty = Eigen::VectorXd::Zero(nx);
  for (const ScheduleEntry& entry : data.schedule) {
    if (entry.is_reset) {
      x = reset_step(truth, x, entry.contacts);
    } else {
      const Eigen::VectorXd tau = actuation * scenario.controls.col(entry.step);
      x = integrate_step(truth, x, no_uncertainty, tau, entry.contacts, scenario.dt);
    }
    data.true_states.push_back(x);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const int n = static_cast<int>(data.schedule.size());
  data.observations.assign(n + 1, Eigen::VectorXd());
  for (int k = 1; k <= n; ++k) {
    if (k < n && data.schedule[k].is_reset) continue;  // pre-impact states are unobserved
    int dim = 0;
    for (const auto& [kind, sigma] : scenario.observations) {
      dim += make_observation(kind, truth, sigma).dim();
    }
    Eigen::VectorXd z(dim);
    int at = 0;
    for (const auto& [kind, sigma] : scenario.observations) {
      const ObservationTerm term = make_observation(kind, truth, sigma);
      z.segment(at, term.dim()) = term.observe(data.true_states[k]);
      at += term.dim();
    }
    if (scenario.observation_noise > 0.0) {
      for (int i = 0; i < z.size(); ++i) z(i) += scenario.observation_noise * noise(rng);
    }
    data.observations[k] = z;
  }

  for (int b : scenario.estimated_bodies) data.true_theta.push_back(truth.bodies.at(b).inertia.vector());
  return data;
}

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v(i) = arr[i].get<double>();
  return v;
}

}  // namespace

std::string data_to_json(const SyntheticData& data) {
  json j;
  j["seed"] = data.seed;
  j["true_states"] = json::array();
  for (const auto& x : data.true_states) j["true_states"].push_back(vector_to_json(x));
  j["observations"] = json::array();
  for (const auto& z : data.observations) j["observations"].push_back(vector_to_json(z));
  j["true_theta"] = json::array();
  for (const auto& t : data.true_theta) j["true_theta"].push_back(vector_to_json(t));
  return j.dump(2);
}

SyntheticData data_from_json(const std::string& text, const SyntheticScenario& scenario) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("data: invalid JSON: ") + e.what());
  }
  SyntheticData data;
  data.seed = j.value("seed", 0ULL);
  data.schedule = build_schedule(scenario);
  for (const json& jx : j.at("true_states")) data.true_states.push_back(vector_from_json(jx));
  for (const json& jz : j.at("observations")) data.observations.push_back(vector_from_json(jz));
  for (const json& jt : j.at("true_theta")) {
    if (jt.size() != 10) throw ParseError("data: true_theta entries must have 10 numbers");
    data.true_theta.push_back(Vector10d(vector_from_json(jt)));
  }
  if (data.true_states.size() != data.schedule.size() + 1 || data.observations.size() != data.schedule.size() + 1) {
    throw InconsistentSchedule("data file does not match the scenario schedule");
  }
  return data;
}

BuiltProblem build_problem(const SyntheticScenario& scenario, const SyntheticData& data, ParamChart chart) {
  scenario.validate();
  const RobotModel truth = scenario.true_model();

  ParameterSet params;
  params.bodies = scenario.estimated_bodies;
  params.chart = chart;

  BuiltProblem built;
  built.context = std::make_shared<RobotProblemContext>(truth, params);
  const StateSpace& space = built.context->space;
  const int nx = space.size();

  // Initial chart coordinates from the configured policy.
  built.theta0.resize(params.ntheta());
  for (std::size_t i = 0; i < params.bodies.size(); ++i) {
    InertialVector target(data.true_theta.at(i));
    switch (scenario.theta_init.policy) {
      case ThetaInit::Policy::Exact:
        break;
      case ThetaInit::Policy::Scale:
        target = target * scenario.theta_init.scale;
        break;
      case ThetaInit::Policy::Explicit:
        target = InertialVector(scenario.theta_init.values.segment<10>(10 * i));
        break;
    }
    built.theta0.segment<10>(10 * i) = theta_to_chart(chart, target);
  }

  auto problem = std::make_shared<ShootingProblem>(space, params.ntheta());
  const Eigen::VectorXd omega_diag =
      Eigen::VectorXd::Constant(nx, scenario.cost.omega_sigma * scenario.cost.omega_sigma);

  const int n = static_cast<int>(data.schedule.size());
  for (int k = 0; k < n; ++k) {
    const ScheduleEntry& entry = data.schedule[k];
    if (entry.is_reset) {
      problem->add_node(std::make_shared<ResetNode>(built.context, entry.contacts));
      continue;
    }
    auto node = std::make_shared<RunningNode>(built.context, entry.contacts, scenario.controls.col(entry.step).eval(),
                                              scenario.dt, omega_diag);
    if (k >= 1 && data.observations[k].size() > 0) {
      int at = 0;
      for (const auto& [kind, sigma] : scenario.observations) {
        ObservationTerm term = make_observation(kind, truth, sigma);
        node->add_observation(term, data.observations[k].segment(at, term.dim()));
        at += term.dim();
      }
    }
    problem->add_node(std::move(node));
  }

  auto terminal = std::make_shared<RobotTerminalNode>(built.context);
  if (data.observations[n].size() > 0) {
    int at = 0;
    for (const auto& [kind, sigma] : scenario.observations) {
      ObservationTerm term = make_observation(kind, truth, sigma);
      terminal->add_observation(term, data.observations[n].segment(at, term.dim()));
      at += term.dim();
    }
  }
  problem->set_terminal(std::move(terminal));

  problem->set_arrival_prior(data.true_states.at(0),
                             scenario.cost.arrival_sigma * scenario.cost.arrival_sigma *
                                 Eigen::MatrixXd::Identity(nx, nx));
  if (scenario.cost.theta_prior_sigma > 0.0) {
    problem->set_parameter_prior(built.theta0, scenario.cost.theta_prior_sigma * scenario.cost.theta_prior_sigma *
                                                   Eigen::MatrixXd::Identity(params.ntheta(), params.ntheta()));
  }
  built.problem = std::move(problem);
  return built;
}

EstimateMetrics score_estimate(const BuiltProblem& built, const SolveResult& result, const SyntheticData& data) {
  EstimateMetrics metrics;
  const ParamChart chart = built.context->params.chart;
  for (std::size_t i = 0; i < data.true_theta.size(); ++i) {
    const Vector10d est = chart_to_theta(chart, result.estimate.theta.segment<10>(10 * i)).vector();
    const Vector10d truth = data.true_theta[i];
    metrics.param_rel_err.push_back((est - truth).norm() / std::max(truth.norm(), 1e-300));
    metrics.mass_rel_err.push_back(std::abs(est(0) - truth(0)) / std::max(std::abs(truth(0)), 1e-300));
  }
  const StateSpace& space = built.context->space;
  for (std::size_t k = 0; k < data.true_states.size(); ++k) {
    const Eigen::VectorXd diff = space.difference(data.true_states[k], result.estimate.xs.at(k));
    metrics.traj_l1 += diff.lpNorm<1>();
    metrics.traj_linf = std::max(metrics.traj_linf, diff.lpNorm<Eigen::Infinity>());
  }
  metrics.final_cost = result.final_cost;
  return metrics;
}

double regressor_image_error(const SyntheticScenario& scenario, const SyntheticData& data,
                             const Eigen::VectorXd& theta_chart, ParamChart chart) {
  const RobotModel truth = scenario.true_model();
  const Eigen::MatrixXd actuation = truth.actuation_matrix();
  const int nq = truth.nq();
  const int nv = truth.nv();

  Eigen::VectorXd dtheta_stacked = Eigen::VectorXd::Zero(10 * truth.bodies.size());
  for (std::size_t i = 0; i < scenario.estimated_bodies.size(); ++i) {
    const Vector10d est = chart_to_theta(chart, theta_chart.segment<10>(10 * i)).vector();
    dtheta_stacked.segment<10>(10 * scenario.estimated_bodies[i]) = est - data.true_theta.at(i);
  }

  double err = 0.0;
  for (std::size_t k = 0; k < data.schedule.size(); ++k) {
    const ScheduleEntry& entry = data.schedule[k];
    if (entry.is_reset) continue;
    const Eigen::VectorXd& x = data.true_states[k];
    const Eigen::VectorXd q = x.head(nq);
    const Eigen::VectorXd v = x.tail(nv);
    const Eigen::VectorXd tau = actuation * scenario.controls.col(entry.step);
    const Eigen::VectorXd acc = contact_dynamics(truth, q, v, tau, entry.contacts).acc;
    const Eigen::MatrixXd y = joint_torque_regressor<double>(truth, q, v, acc);
    err = std::max(err, (y * dtheta_stacked).lpNorm<Eigen::Infinity>());
  }
  return err;
}

namespace {

Eigen::MatrixXd build_controls(const json& j, int ntau, int horizon, double dt) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(ntau, horizon);
  if (j.is_array()) {
    // Inline: one row of ntau numbers per step.
    if (static_cast<int>(j.size()) != horizon) throw ParseError("controls: expected one entry per step");
    for (int k = 0; k < horizon; ++k) {
      const json& row = j[k];
      if (static_cast<int>(row.size()) != ntau) throw ParseError("controls: row size must equal ntau");
      for (int i = 0; i < ntau; ++i) u(i, k) = row[i].get<double>();
    }
    return u;
  }
  const std::string type = j.value("type", "zero");
  if (type == "zero") return u;
  if (type == "multisine") {
    const double amplitude = j.value("amplitude", 1.0);
    const int harmonics = j.value("harmonics", 3);
    const double base_freq = j.value("base_frequency", 0.5);
    for (int i = 0; i < ntau; ++i) {
      for (int k = 0; k < horizon; ++k) {
        const double t = k * dt;
        double s = 0.0;
        for (int h = 1; h <= harmonics; ++h) {
          const double phase = 0.7 * i + 1.3 * h;  // fixed decorrelating phases
          s += std::sin(2.0 * M_PI * base_freq * h * t + phase) / h;
        }
        u(i, k) = amplitude * s;
      }
    }
    return u;
  }
  throw ParseError("controls: unknown type '" + type + "'");
}

InertialVector parse_inertia_spec(const json& j) {
  if (j.contains("inertia")) {
    const json& arr = j.at("inertia");
    if (arr.size() != 10) throw ParseError("payload inertia: expected 10 numbers");
    return InertialVector(Vector10d(vector_from_json(arr)));
  }
  if (j.contains("sphere")) {
    const json& s = j.at("sphere");
    Eigen::Vector3d com = Eigen::Vector3d::Zero();
    if (s.contains("com")) com = Eigen::Vector3d(vector_from_json(s.at("com")));
    return solid_sphere_inertia(s.at("mass").get<double>(), s.at("radius").get<double>(), com);
  }
  if (j.contains("box")) {
    const json& b = j.at("box");
    Eigen::Vector3d com = Eigen::Vector3d::Zero();
    if (b.contains("com")) com = Eigen::Vector3d(vector_from_json(b.at("com")));
    return solid_box_inertia(b.at("mass").get<double>(), Eigen::Vector3d(vector_from_json(b.at("dims"))), com);
  }
  throw ParseError("payload: expected 'inertia', 'sphere' or 'box'");
}

}  // namespace

SyntheticScenario parse_scenario(const std::string& json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario: invalid JSON: ") + e.what());
  }

  SyntheticScenario sc;
  sc.name = j.value("name", "scenario");
  const json& jm = j.at("model");
  if (jm.is_string()) {
    std::filesystem::path path(jm.get<std::string>());
    if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
    sc.model = load_robot_model(path.string());
  } else {
    sc.model = parse_robot_model(jm.dump());
  }

  sc.horizon = j.at("horizon").get<int>();
  sc.dt = j.at("dt").get<double>();
  const json& jx0 = j.at("x0");
  sc.q0 = vector_from_json(jx0.at("q"));
  sc.v0 = vector_from_json(jx0.at("v"));
  sc.controls = build_controls(j.value("controls", json{{"type", "zero"}}), sc.model.ntau(), sc.horizon, sc.dt);

  if (j.contains("phases")) {
    for (const json& jp : j.at("phases")) {
      Phase phase;
      phase.start = jp.at("start").get<int>();
      phase.end = jp.at("end").get<int>();
      if (jp.contains("contacts")) {
        for (const json& c : jp.at("contacts")) phase.contacts.push_back(c.get<int>());
      }
      sc.phases.push_back(phase);
    }
  } else {
    sc.phases.push_back(Phase{0, sc.horizon, {}});
  }

  if (!j.contains("observations")) throw ParseError("scenario: missing 'observations'");
  for (const json& jo : j.at("observations")) {
    sc.observations.emplace_back(observation_kind_from_name(jo.at("kind").get<std::string>()),
                                 jo.value("sigma", 1e-3));
  }
  if (j.contains("noise")) sc.observation_noise = j.at("noise").value("observation_sigma", 0.0);

  if (j.contains("payload")) {
    sc.payload.body = j.at("payload").at("body").get<int>();
    sc.payload.added = parse_inertia_spec(j.at("payload"));
  }
  if (!j.contains("estimated")) throw ParseError("scenario: missing 'estimated' body list");
  for (const json& b : j.at("estimated")) sc.estimated_bodies.push_back(b.get<int>());

  if (j.contains("theta_init")) {
    const json& jt = j.at("theta_init");
    const std::string policy = jt.value("policy", "scale");
    if (policy == "exact") {
      sc.theta_init.policy = ThetaInit::Policy::Exact;
    } else if (policy == "scale") {
      sc.theta_init.policy = ThetaInit::Policy::Scale;
      sc.theta_init.scale = jt.value("scale", 1.7);
    } else if (policy == "explicit") {
      sc.theta_init.policy = ThetaInit::Policy::Explicit;
      sc.theta_init.values = vector_from_json(jt.at("values"));
    } else {
      throw ParseError("theta_init: unknown policy '" + policy + "'");
    }
  }

  if (j.contains("cost")) {
    const json& jc = j.at("cost");
    sc.cost.omega_sigma = jc.value("omega_sigma", sc.cost.omega_sigma);
    sc.cost.arrival_sigma = jc.value("arrival_sigma", sc.cost.arrival_sigma);
    sc.cost.theta_prior_sigma = jc.value("theta_prior_sigma", sc.cost.theta_prior_sigma);
  }
  sc.validate();
  return sc;
}

SyntheticScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace parest
