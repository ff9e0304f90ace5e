#ifndef PAREST_PROBLEMS_BENCH_HPP_
#define PAREST_PROBLEMS_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "parest/problems/scenario.hpp"

namespace parest {

/// Initial guess for an estimation run: states from the data trajectory
/// perturbed by Gaussian noise of the given sigma, zero uncertainties and the
/// scenario's initial parameter guess.
Iterate make_initial_iterate(const BuiltProblem& built, const SyntheticData& data, double state_sigma,
                             std::uint64_t seed);

struct BenchRecord {
  std::string scenario;
  std::string chart;
  std::string rollout;
  std::string arrival;
  std::uint64_t seed = 0;
  int iterations = 0;
  double final_cost = 0.0;
  double gap_l1 = 0.0;
  double grad_norm = 0.0;
  double param_err = 0.0;   // worst per-body relative error in physical coordinates
  double traj_linf = 0.0;
  std::string status;
  bool converged = false;
  double wall_time_s = 0.0;  // excluded from the CSV to keep reruns byte-identical
};

struct BenchSuite {
  std::vector<SyntheticScenario> scenarios;
  std::vector<ParamChart> charts = {ParamChart::ExpEigenvalue, ParamChart::LogCholesky};
  std::vector<RolloutKind> rollouts = {RolloutKind::Multiple};
  std::vector<ArrivalMethod> arrivals = {ArrivalMethod::Nullspace};
  int seeds = 1;
  std::uint64_t base_seed = 0;
  double init_state_sigma = 0.0;
  SolverConfig config;
};

struct BenchAggregate {
  std::string scenario, chart, rollout, arrival;
  int count = 0;
  int converged = 0;
  double iter_mean = 0, iter_std = 0;
  double cost_mean = 0, cost_std = 0;
  double err_mean = 0, err_std = 0;
};

struct BenchReport {
  std::vector<BenchRecord> records;

  /// Deterministic CSV of the per-run records.
  std::string to_csv() const;
  /// Per-cell statistics recomputed from the records.
  std::vector<BenchAggregate> aggregate() const;
  /// Fixed-width summary: mean +/- std of iterations, cost and error per
  /// (scenario, chart, rollout, arrival) cell.
  std::string summary_table() const;
};

std::string rollout_name(RolloutKind kind);
RolloutKind rollout_from_name(const std::string& name);
std::string arrival_name(ArrivalMethod method);
ArrivalMethod arrival_from_name(const std::string& name);

/// Runs every (scenario x chart x rollout x arrival x seed) cell; cells run
/// concurrently up to `jobs` threads, record order is deterministic.
BenchReport run_bench(const BenchSuite& suite, int jobs);

/// Suite file parsing ({scenarios: [paths], charts, rollouts, arrivals,
/// seeds, init_state_sigma, solver overrides}).
BenchSuite load_suite(const std::string& path);

}  // namespace parest

#endif  // PAREST_PROBLEMS_BENCH_HPP_
