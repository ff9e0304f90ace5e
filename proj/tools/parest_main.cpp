#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "parest/exceptions.hpp"
#include "parest/problems/bench.hpp"
#include "parest/problems/check.hpp"
#include "parest/problems/scenario.hpp"
#include "parest/rbd/model_io.hpp"

namespace {

// Exit code contract: 0 success, 1 usage/parse, 2 numerical failure,
// 3 convergence failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitConvergence = 3;

int log_level() {
  const char* env = std::getenv("PAREST_LOG");
  if (env == nullptr) return 1;
  const std::string level(env);
  if (level == "error") return 0;
  if (level == "warn") return 1;
  if (level == "info") return 2;
  if (level == "debug") return 3;
  return 1;
}

void log_line(int level, const std::string& message) {
  static const int threshold = log_level();
  if (level <= threshold) std::cerr << "parest: " << message << "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parest::ParseError("cannot write '" + path + "'");
  out << content;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_path, std::uint64_t seed) {
  const parest::SyntheticScenario scenario = parest::load_scenario(scenario_path);
  const parest::SyntheticData data = parest::synthesize_data(scenario, seed);
  write_file(out_path, parest::data_to_json(data));
  log_line(2, "wrote " + out_path + " (" + std::to_string(data.schedule.size()) + " nodes)");
  return kExitOk;
}

struct EstimateOptions {
  std::string chart = "expeig";
  std::string rollout = "multiple";
  std::string arrival = "nullspace";
  std::uint64_t seed = 0;
  std::string out_prefix = "estimate";
  double tol_grad = 1e-9;
  int max_iter = 100;
  double init_state_sigma = 0.0;
};

int cmd_estimate(const std::string& scenario_path, const std::string& data_path, const EstimateOptions& opts) {
  const parest::SyntheticScenario scenario = parest::load_scenario(scenario_path);

  std::ifstream in(data_path);
  if (!in) throw parest::ParseError("cannot open data file '" + data_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const parest::SyntheticData data = parest::data_from_json(buffer.str(), scenario);

  const parest::ParamChart chart = parest::chart_from_name(opts.chart);
  const parest::BuiltProblem built = parest::build_problem(scenario, data, chart);
  const parest::Iterate init = parest::make_initial_iterate(built, data, opts.init_state_sigma, opts.seed);

  parest::SolverConfig config;
  config.rollout = parest::rollout_from_name(opts.rollout);
  config.arrival = parest::arrival_from_name(opts.arrival);
  config.tol_grad = opts.tol_grad;
  config.max_iter = opts.max_iter;

  parest::SolveResult result;
  int exit_code = kExitOk;
  std::string failure;
  try {
    result = parest::solve(*built.problem, init, config);
  } catch (const parest::SingularParameterHessian& e) {
    failure = std::string("SingularParameterHessian: ") + e.what();
    log_line(0, failure);
    write_file(opts.out_prefix + "_trace.csv", parest::trace_to_csv({}));
    nlohmann::json j;
    j["status"] = "singular_parameter_hessian";
    j["error"] = e.what();
    write_file(opts.out_prefix + "_estimate.json", j.dump(2));
    return kExitNumerical;
  }

  switch (result.status) {
    case parest::SolveStatus::Converged:
    case parest::SolveStatus::ConvergedStepTol:
      exit_code = kExitOk;
      break;
    case parest::SolveStatus::MaxIterReached:
      exit_code = kExitConvergence;
      break;
    case parest::SolveStatus::NumericalFailure:
      exit_code = kExitNumerical;
      break;
  }

  const parest::EstimateMetrics metrics = parest::score_estimate(built, result, data);

  nlohmann::json j;
  j["status"] = parest::status_name(result.status);
  j["iterations"] = result.iterations;
  j["final_cost"] = result.final_cost;
  j["gap_l1"] = result.final_gap_l1;
  j["gap_linf"] = result.final_gap_linf;
  j["grad_norm"] = result.grad_norm;
  j["chart"] = opts.chart;
  j["theta_chart"] = vector_json(result.estimate.theta);
  nlohmann::json phys = nlohmann::json::array();
  for (std::size_t i = 0; i < scenario.estimated_bodies.size(); ++i) {
    const parest::InertialVector est =
        parest::chart_to_theta(chart, result.estimate.theta.segment<10>(10 * static_cast<int>(i)));
    phys.push_back({{"body", scenario.estimated_bodies[i]},
                    {"theta", vector_json(est.vector())},
                    {"text", est.to_text()}});
  }
  j["theta_physical"] = phys;
  j["metrics"] = {{"param_rel_err", metrics.param_rel_err},
                  {"mass_rel_err", metrics.mass_rel_err},
                  {"traj_l1", metrics.traj_l1},
                  {"traj_linf", metrics.traj_linf}};
  nlohmann::json traj = nlohmann::json::array();
  for (const Eigen::VectorXd& x : result.estimate.xs) traj.push_back(vector_json(x));
  j["trajectory"] = traj;

  write_file(opts.out_prefix + "_estimate.json", j.dump(2));
  write_file(opts.out_prefix + "_trace.csv", parest::trace_to_csv(result.trace));
  log_line(2, "status " + parest::status_name(result.status) + ", cost " + std::to_string(result.final_cost));
  return exit_code;
}

int cmd_bench(const std::string& suite_path, const std::string& out_dir, int jobs, std::uint64_t seed) {
  parest::BenchSuite suite = parest::load_suite(suite_path);
  suite.base_seed = seed;
  const parest::BenchReport report = parest::run_bench(suite, jobs);

  std::filesystem::create_directories(out_dir);
  write_file((std::filesystem::path(out_dir) / "records.csv").string(), report.to_csv());
  const std::string table = report.summary_table();
  write_file((std::filesystem::path(out_dir) / "table.txt").string(), table);
  std::cout << table;

  for (const parest::BenchRecord& r : report.records) {
    if (r.status.rfind("error:", 0) == 0) log_line(1, r.scenario + " seed " + std::to_string(r.seed) + " " + r.status);
  }
  return kExitOk;
}

int cmd_check_derivatives(const std::string& model_path, int samples, std::uint64_t seed) {
  const parest::RobotModel model = parest::load_robot_model(model_path);
  if (samples == 0) {
    std::cout << "0 samples requested: vacuous pass\n";
    log_line(1, "check-derivatives ran with 0 samples");
    return kExitOk;
  }
  const parest::DerivativeCheckReport report = parest::check_derivatives(model, samples, seed);
  std::cout << report.to_string();
  if (!report.pass()) {
    std::cout << "FAIL: derivative errors above tolerance\n";
    return kExitNumerical;
  }
  std::cout << "PASS\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parest: multi-contact inertial estimation toolkit"};
  app.require_subcommand(1);

  std::string scenario_path, data_path, model_path, suite_path;
  std::string out_path = "data.json";
  std::string out_dir = "bench_out";
  std::uint64_t seed = 0;
  int jobs = 1;
  int samples = 100;
  EstimateOptions eopts;

  CLI::App* sim = app.add_subcommand("simulate", "Roll out a scenario and write observations + ground truth");
  sim->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  sim->add_option("--out", out_path, "Output data file");
  sim->add_option("--seed", seed, "RNG seed");

  CLI::App* est = app.add_subcommand("estimate", "Run the estimator on recorded data");
  est->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  est->add_option("data", data_path, "Data JSON file produced by simulate")->required();
  est->add_option("--chart", eopts.chart, "raw, logchol or expeig")->capture_default_str();
  est->add_option("--rollout", eopts.rollout, "single, feasibility or multiple")->capture_default_str();
  est->add_option("--arrival", eopts.arrival, "schur or nullspace")->capture_default_str();
  est->add_option("--seed", eopts.seed, "Seed for the initial-guess perturbation");
  est->add_option("--out", eopts.out_prefix, "Output prefix")->capture_default_str();
  est->add_option("--tol-grad", eopts.tol_grad, "Gradient tolerance")->capture_default_str();
  est->add_option("--max-iter", eopts.max_iter, "Iteration limit")->capture_default_str();
  est->add_option("--init-sigma", eopts.init_state_sigma, "Initial-state perturbation stddev");

  CLI::App* bench = app.add_subcommand("bench", "Run a benchmark suite and emit records + summary table");
  bench->add_option("suite", suite_path, "Suite JSON file")->required();
  bench->add_option("--out", out_dir, "Output directory")->capture_default_str();
  bench->add_option("--jobs", jobs, "Concurrent cells")->capture_default_str();
  bench->add_option("--seed", seed, "Base seed");

  CLI::App* check = app.add_subcommand("check-derivatives", "Validate analytical derivatives by finite differences");
  check->add_option("model", model_path, "Robot model JSON file")->required();
  check->add_option("--samples", samples, "Sample count")->capture_default_str();
  check->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim->parsed()) return cmd_simulate(scenario_path, out_path, seed);
    if (est->parsed()) return cmd_estimate(scenario_path, data_path, eopts);
    if (bench->parsed()) return cmd_bench(suite_path, out_dir, jobs, seed);
    if (check->parsed()) return cmd_check_derivatives(model_path, samples, seed);
  } catch (const parest::ParseError& e) {
    log_line(0, std::string("parse error: ") + e.what());
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const parest::InconsistentSchedule& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const parest::NonFiniteData& e) {
    std::cerr << "NonFiniteData: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
