#include "parest/solver/merit.hpp"

#include <algorithm>

namespace parest {

double expected_improvement(const ProblemExpansion& expansion, const BackwardPass& bp, const ArrivalSolution& arrival,
                            const Directions& dirs, double alpha) {
  const int n = static_cast<int>(expansion.nodes.size());

  // Full-step change of the quadratic model: parameter terms of the arrival
  // node, per-node policy improvements, and gap deflections with the arrival
  // step playing the role of the gap into node 0.
  const ValueExpansion& v0 = bp.values[0];
  double full = arrival.dtheta.dot(v0.Vtheta) + arrival.dx0.dot(v0.Vxtheta * arrival.dtheta) +
                0.5 * arrival.dtheta.dot(v0.Vthetatheta * arrival.dtheta);
  for (int k = 0; k <= n; ++k) {
    const ValueExpansion& v = bp.values[k];
    const Eigen::VectorXd& gap = (k == 0) ? arrival.dx0 : expansion.nodes[k - 1].gap;
    full += v.dv1 + 0.5 * v.dv2 + gap.dot(v.Vx) + 0.5 * gap.dot(v.Vxx * gap);
  }

  // Costate work of the gaps fixes the split between the alpha and alpha^2
  // coefficients (the multipliers are the deflected value gradients).
  double gap_work = 0.0;
  for (int k = 1; k <= n; ++k) {
    const ValueExpansion& v = bp.values[k];
    Eigen::VectorXd costate = v.Vx + v.Vxx * dirs.dxs[k];
    if (arrival.dtheta.size() > 0) costate += v.Vxtheta * arrival.dtheta;
    gap_work += expansion.nodes[k - 1].gap.dot(costate);
  }
  const double d1 = 2.0 * full - gap_work;
  const double d2 = 2.0 * (gap_work - full);
  return alpha * (d1 + 0.5 * alpha * d2);
}

double update_penalty(double nu, double dl_full, double gap_sum, double rho, double beta_nu) {
  if (gap_sum <= 0.0) return beta_nu * nu;
  return std::max(beta_nu * nu, dl_full / ((1.0 - rho) * gap_sum));
}

}  // namespace parest
