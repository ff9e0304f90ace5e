#include "parest/solver/riccati.hpp"

#include <Eigen/Cholesky>

namespace parest {

BackwardPass backward_pass(const ShootingProblem& problem, const ProblemExpansion& expansion, double mu) {
  const int n = problem.horizon();
  const int ntheta = problem.ntheta();

  BackwardPass bp;
  bp.policies.resize(n);
  bp.values.resize(n + 1);

  ValueExpansion& terminal = bp.values[n];
  terminal.Vx = expansion.terminal.lx;
  terminal.Vtheta = expansion.terminal.ltheta;
  terminal.Vxx = expansion.terminal.lxx;
  terminal.Vxtheta = expansion.terminal.lxtheta;
  terminal.Vthetatheta = expansion.terminal.lthetatheta;

  for (int k = n - 1; k >= 0; --k) {
    const NodeExpansion& e = expansion.nodes[k];
    const ValueExpansion& next = bp.values[k + 1];
    const int nw = problem.node(k).nw();

    // Value gradients deflected by the dynamics gap into node k + 1.
    const Eigen::VectorXd vx_def = next.Vx + next.Vxx * e.gap;
    const Eigen::VectorXd vtheta_def = next.Vtheta + next.Vxtheta.transpose() * e.gap;
    const Eigen::MatrixXd w_cross = next.Vxtheta + next.Vxx * e.ftheta;  // nx x ntheta

    const Eigen::VectorXd qx = e.lx + e.fx.transpose() * vx_def;
    const Eigen::MatrixXd qxx = e.lxx + e.fx.transpose() * next.Vxx * e.fx;
    const Eigen::MatrixXd qxtheta = e.lxtheta + e.fx.transpose() * w_cross;
    const Eigen::VectorXd qtheta = e.ltheta + vtheta_def + e.ftheta.transpose() * vx_def;
    const Eigen::MatrixXd qthetatheta = e.lthetatheta + next.Vthetatheta + e.ftheta.transpose() * next.Vxtheta +
                                        next.Vxtheta.transpose() * e.ftheta +
                                        e.ftheta.transpose() * next.Vxx * e.ftheta;

    ValueExpansion& value = bp.values[k];
    if (nw == 0) {
      value.Vx = qx;
      value.Vtheta = qtheta;
      value.Vxx = 0.5 * (qxx + qxx.transpose());
      value.Vxtheta = qxtheta;
      value.Vthetatheta = 0.5 * (qthetatheta + qthetatheta.transpose());
      value.dv1 = 0.0;
      value.dv2 = 0.0;
      bp.policies[k] = NodePolicy{Eigen::VectorXd::Zero(0), Eigen::MatrixXd::Zero(0, problem.nx()),
                                  Eigen::MatrixXd::Zero(0, ntheta)};
      continue;
    }

    const Eigen::VectorXd qw = e.lw + e.fw.transpose() * vx_def;
    const Eigen::MatrixXd qxw = e.lxw + e.fx.transpose() * next.Vxx * e.fw;
    const Eigen::MatrixXd qww =
        e.lww + e.fw.transpose() * next.Vxx * e.fw + mu * Eigen::MatrixXd::Identity(nw, nw);
    const Eigen::MatrixXd qwtheta = e.lwtheta + e.fw.transpose() * w_cross;

    const Eigen::LLT<Eigen::MatrixXd> qww_llt(0.5 * (qww + qww.transpose()));
    if (qww_llt.info() != Eigen::Success) {
      bp.ok = false;
      bp.failed_node = k;
      return bp;
    }

    NodePolicy& policy = bp.policies[k];
    policy.k = qww_llt.solve(qw);
    policy.Kx = qww_llt.solve(qxw.transpose());
    policy.Ktheta = qww_llt.solve(qwtheta);

    value.Vx = qx - qxw * policy.k;
    value.Vtheta = qtheta - qwtheta.transpose() * policy.k;
    const Eigen::MatrixXd vxx = qxx - qxw * policy.Kx;
    const Eigen::MatrixXd vtt = qthetatheta - qwtheta.transpose() * policy.Ktheta;
    value.Vxx = 0.5 * (vxx + vxx.transpose());
    value.Vthetatheta = 0.5 * (vtt + vtt.transpose());
    value.Vxtheta = qxtheta - qxw * policy.Ktheta;
    value.dv1 = -policy.k.dot(qw);
    value.dv2 = policy.k.dot(qww * policy.k);
  }
  return bp;
}

}  // namespace parest
