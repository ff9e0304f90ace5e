#ifndef PAREST_PROBLEMS_CHECK_HPP_
#define PAREST_PROBLEMS_CHECK_HPP_

#include <cstdint>
#include <string>

#include "parest/rbd/model.hpp"

namespace parest {

/// Worst-case errors of the analytical derivative stack against central
/// finite differences (step 1e-6), sampled at random states, controls and
/// chart coordinates. Relative errors are normalized by max(1, |reference|).
struct DerivativeCheckReport {
  int samples = 0;
  double regressor_identity = 0.0;  // |Y theta - ID|_inf, absolute
  double chart_logchol = 0.0;
  double chart_expeig = 0.0;
  double free_dynamics = 0.0;    // parameter derivatives, both charts
  double contact_dynamics = 0.0;
  double impulse_dynamics = 0.0;
  bool contact_checked = false;

  bool pass(double tol_regressor = 1e-10, double tol_rel = 1e-6) const;
  std::string to_string() const;
};

DerivativeCheckReport check_derivatives(const RobotModel& model, int samples, std::uint64_t seed);

}  // namespace parest

#endif  // PAREST_PROBLEMS_CHECK_HPP_
