#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <random>

#include "parest/exceptions.hpp"
#include "parest/inertial/charts.hpp"
#include "parest/inertial/params.hpp"
#include "parest/so3.hpp"

using namespace parest;

namespace {

Vector10d make_theta(std::initializer_list<double> values) {
  Vector10d t;
  int i = 0;
  for (double v : values) t(i++) = v;
  return t;
}

const Vector10d kUnitTheta = make_theta({1, 0, 0, 0, 2, 0, 2, 0, 0, 2});

Matrix10d fd_jacobian(ParamChart chart, const Vector10d& pi, double step = 1e-6) {
  Matrix10d jac;
  for (int i = 0; i < 10; ++i) {
    Vector10d plus = pi, minus = pi;
    plus(i) += step;
    minus(i) -= step;
    jac.col(i) = (chart_to_theta(chart, plus).vector() - chart_to_theta(chart, minus).vector()) / (2 * step);
  }
  return jac;
}

}  // namespace

TEST_CASE("so3 exponential and logarithm") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Eigen::Vector3d w(unit(rng), unit(rng), unit(rng));
    w *= (i % 4 == 0) ? 1e-10 : 2.5;  // exercise both branches
    const Eigen::Matrix3d r = so3::exp(w);
    CHECK((r * r.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    if (w.norm() <= M_PI) {
      CHECK((so3::log(r) - w).norm() < 1e-8 * std::max(1.0, w.norm()));
    }
  }
  // Near-pi branch.
  const Eigen::Vector3d wpi = (M_PI - 1e-9) * Eigen::Vector3d(1, 2, 2).normalized();
  CHECK((so3::exp(so3::log(so3::exp(wpi))) - so3::exp(wpi)).norm() < 1e-8);

  // Right Jacobian against finite differences.
  const Eigen::Vector3d w0(0.3, -0.7, 0.5);
  const Eigen::Matrix3d jr = so3::right_jacobian(w0);
  for (int j = 0; j < 3; ++j) {
    const double h = 1e-7;
    Eigen::Vector3d wp = w0, wm = w0;
    wp(j) += h;
    wm(j) -= h;
    const Eigen::Matrix3d dr_fd = (so3::exp(wp) - so3::exp(wm)) / (2 * h);
    const Eigen::Matrix3d dr_an = so3::exp(w0) * skew((jr * Eigen::Vector3d::Unit(j)).eval());
    CHECK((dr_fd - dr_an).norm() < 1e-6);
  }
}

TEST_CASE("inertial vector serialization order and text form") {
  const InertialVector theta(2.0, Eigen::Vector3d(0.1, 0.2, 0.3),
                             (Eigen::Matrix3d() << 4, 0.5, 0.6, 0.5, 5, 0.7, 0.6, 0.7, 6).finished());
  Vector10d expected;
  expected << 2, 0.1, 0.2, 0.3, 4, 0.5, 5, 0.6, 0.7, 6;
  CHECK((theta.vector() - expected).norm() == 0.0);
  CHECK((theta.rotational_inertia() - theta.rotational_inertia().transpose()).norm() == 0.0);

  const InertialVector back = InertialVector::from_text(theta.to_text());
  CHECK((back.vector() - theta.vector()).norm() == 0.0);
  CHECK_THROWS_AS(InertialVector::from_text("1 2 3"), ParseError);
}

TEST_CASE("inertia at barycenter") {
  CHECK((inertia_at_barycenter(InertialVector(kUnitTheta)) - 2.0 * Eigen::Matrix3d::Identity()).norm() < 1e-15);

  // Displaced mass: h = (0, 0, 2), m = 2 removes diag(2, 2, 0).
  const InertialVector displaced(make_theta({2, 0, 0, 2, 3, 0, 3, 0, 0, 1}));
  CHECK((inertia_at_barycenter(displaced) - Eigen::Matrix3d::Identity()).norm() < 1e-15);

  CHECK_THROWS_AS(inertia_at_barycenter(InertialVector(Vector10d::Zero())), NonPositiveMass);
}

TEST_CASE("pseudo inertia blocks") {
  CHECK((pseudo_inertia(InertialVector(kUnitTheta)).J - Eigen::Matrix4d::Identity()).norm() < 1e-15);
  CHECK(pseudo_inertia(InertialVector(Vector10d::Zero())).J.norm() == 0.0);

  Eigen::Matrix4d expected = Eigen::Matrix4d::Identity();
  expected(0, 3) = expected(3, 0) = 1.0;
  CHECK((pseudo_inertia(InertialVector(make_theta({1, 1, 0, 0, 2, 0, 2, 0, 0, 2}))).J - expected).norm() < 1e-15);

  // Round trip through the block extraction.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    Vector10d t;
    for (int k = 0; k < 10; ++k) t(k) = unit(rng);
    const InertialVector theta(t);
    CHECK((pseudo_inertia(theta).to_inertial_vector().vector() - t).norm() < 1e-13);
  }
}

TEST_CASE("full physical consistency check") {
  CHECK(is_fully_consistent(InertialVector(kUnitTheta), 1e-12).consistent);

  const ConsistencyReport triangle = is_fully_consistent(InertialVector(make_theta({1, 0, 0, 0, 1, 0, 1, 0, 0, 3})), 1e-12);
  CHECK_FALSE(triangle.consistent);
  CHECK(triangle.violation == "triangle inequality D_z");

  const ConsistencyReport mass = is_fully_consistent(InertialVector(make_theta({-1, 0, 0, 0, 2, 0, 2, 0, 0, 2})), 1e-12);
  CHECK_FALSE(mass.consistent);
  CHECK(mass.violation == "mass");

  const ConsistencyReport indefinite =
      is_fully_consistent(InertialVector(make_theta({1, 0, 0, 0, -1, 0, 2, 0, 0, 2})), 1e-12);
  CHECK_FALSE(indefinite.consistent);
  CHECK(indefinite.violation == "barycentric inertia eigenvalue");

  // Solid primitives are consistent, point masses only marginally.
  CHECK(is_fully_consistent(solid_box_inertia(2.0, Eigen::Vector3d(0.3, 0.2, 0.5), Eigen::Vector3d(1, 2, 3)), 1e-9)
            .consistent);
  CHECK(is_fully_consistent(solid_sphere_inertia(1.0, 0.2, Eigen::Vector3d(0.5, 0, 0)), 1e-9).consistent);
  CHECK(is_fully_consistent(point_mass_inertia(1.0, Eigen::Vector3d(1, 0, 0)), 1e-9).consistent);
}

TEST_CASE("log-Cholesky chart forward map") {
  CHECK((logchol_to_theta(LogCholeskyParams{}).vector() - kUnitTheta).norm() < 1e-15);

  LogCholeskyParams scaled;
  scaled.alpha = std::log(2.0);
  CHECK((logchol_to_theta(scaled).vector() - 4.0 * kUnitTheta).norm() < 1e-13);

  // J = U U^T recomputed independently.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    Vector10d pi;
    for (int k = 0; k < 10; ++k) pi(k) = unit(rng);
    const LogCholeskyParams p = LogCholeskyParams::from_vector(pi);
    const InertialVector theta = logchol_to_theta(p);

    const double ea = std::exp(pi(0));
    Eigen::Matrix4d u = Eigen::Matrix4d::Zero();
    u(0, 0) = ea * std::exp(pi(1));
    u(1, 1) = ea * std::exp(pi(2));
    u(2, 2) = ea * std::exp(pi(3));
    u(3, 3) = ea;
    u(0, 1) = ea * pi(4);
    u(1, 2) = ea * pi(5);
    u(0, 2) = ea * pi(6);
    u(0, 3) = ea * pi(7);
    u(1, 3) = ea * pi(8);
    u(2, 3) = ea * pi(9);
    CHECK((pseudo_inertia(theta).J - u * u.transpose()).norm() < 1e-12);
  }
}

TEST_CASE("exponential-eigenvalue chart forward map") {
  CHECK((expeig_to_theta(ExpEigParams{}).vector() - kUnitTheta).norm() < 1e-15);

  ExpEigParams rotated;
  rotated.omega = Eigen::Vector3d(0, 0, M_PI / 2);
  CHECK((expeig_to_theta(rotated).vector() - kUnitTheta).norm() < 1e-13);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    Vector10d pi;
    for (int k = 0; k < 10; ++k) pi(k) = unit(rng);
    const InertialVector theta = chart_to_theta(ParamChart::ExpEigenvalue, pi);
    CHECK(is_fully_consistent(theta, 1e-9).consistent);
    // The second moments come back through the eigen-decomposition.
    const BarycentricInertia b = barycentric_decomposition(theta);
    Eigen::Vector3d l_sorted = pi.segment<3>(7).array().exp();
    std::sort(l_sorted.data(), l_sorted.data() + 3, std::greater<double>());
    Eigen::Vector3d d_expected = BarycentricInertia::P() * l_sorted;
    std::sort(d_expected.data(), d_expected.data() + 3, std::greater<double>());
    CHECK((b.D - d_expected).cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, d_expected.norm()));
  }
}

TEST_CASE("chart images are fully consistent and positive semidefinite") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  for (ParamChart chart : {ParamChart::LogCholesky, ParamChart::ExpEigenvalue}) {
    for (int i = 0; i < 500; ++i) {
      Vector10d pi;
      for (int k = 0; k < 10; ++k) pi(k) = unit(rng);
      const InertialVector theta = chart_to_theta(chart, pi);
      CHECK(is_fully_consistent(theta, 1e-9).consistent);
      CHECK(pseudo_inertia(theta).min_eigenvalue() > -1e-10);
    }
  }
}

TEST_CASE("chart Jacobians match finite differences") {
  CHECK((chart_jacobian(ParamChart::Raw, Vector10d::Random()) - Matrix10d::Identity()).norm() == 0.0);
  CHECK(chart_jacobian(ParamChart::ExpEigenvalue, Vector10d::Zero())(0, 0) == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  for (ParamChart chart : {ParamChart::LogCholesky, ParamChart::ExpEigenvalue}) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      Vector10d pi;
      for (int k = 0; k < 10; ++k) pi(k) = unit(rng);
      const Matrix10d analytic = chart_jacobian(chart, pi);
      const Matrix10d fd = fd_jacobian(chart, pi);
      worst = std::max(worst, (analytic - fd).lpNorm<Eigen::Infinity>() /
                                  std::max(1.0, fd.lpNorm<Eigen::Infinity>()));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("exp-eigenvalue Jacobian is rank deficient at isotropic inertia") {
  ExpEigParams pi;
  pi.sigma = Eigen::Vector3d::Constant(0.3);
  pi.omega = Eigen::Vector3d(0.4, -0.2, 0.7);
  pi.h = Eigen::Vector3d(0.1, 0.2, -0.3);
  const Matrix10d jac = chart_jacobian(ParamChart::ExpEigenvalue, pi.vector());
  const Eigen::JacobiSVD<Matrix10d> svd(jac);
  int rank = 0;
  for (int i = 0; i < 10; ++i) {
    if (svd.singularValues()(i) > 1e-10 * svd.singularValues()(0)) ++rank;
  }
  CHECK(rank <= 9);
}

TEST_CASE("exp-eigenvalue inverse chart") {
  const ExpEigParams zero = expeig_from_theta(InertialVector(kUnitTheta));
  CHECK(zero.sigma_m == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(zero.h.norm() == 0.0);
  CHECK(zero.omega.norm() == 0.0);  // tie-break at repeated eigenvalues
  CHECK(zero.sigma.norm() < 1e-14);

  Vector10d scaled = kUnitTheta;
  scaled(0) = std::exp(1.0);
  CHECK(expeig_from_theta(InertialVector(scaled)).sigma_m == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    Vector10d pi;
    for (int k = 0; k < 10; ++k) pi(k) = unit(rng);
    const InertialVector theta = chart_to_theta(ParamChart::ExpEigenvalue, pi);
    const ExpEigParams inv = expeig_from_theta(theta);
    CHECK(inv.omega.norm() <= M_PI + 1e-12);
    const InertialVector round = expeig_to_theta(inv);
    CHECK((round.vector() - theta.vector()).norm() < 1e-9 * std::max(1.0, theta.vector().norm()));
  }

  CHECK_THROWS_AS(expeig_from_theta(InertialVector(make_theta({-1, 0, 0, 0, 2, 0, 2, 0, 0, 2}))), InconsistentInput);
  // Degenerate second moments (point mass on a line) sit on the boundary.
  CHECK_THROWS_AS(expeig_from_theta(point_mass_inertia(1.0, Eigen::Vector3d(1, 0, 0))), InconsistentInput);
}

TEST_CASE("log-Cholesky inverse chart") {
  const LogCholeskyParams zero = logchol_from_theta(InertialVector(kUnitTheta));
  CHECK(zero.vector().norm() < 1e-14);

  const LogCholeskyParams scaled = logchol_from_theta(InertialVector(4.0 * kUnitTheta));
  CHECK(scaled.alpha == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(scaled.d.norm() < 1e-12);
  CHECK(scaled.t.norm() < 1e-12);

  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    Vector10d pi;
    for (int k = 0; k < 10; ++k) pi(k) = unit(rng);
    const InertialVector theta = chart_to_theta(ParamChart::LogCholesky, pi);
    const LogCholeskyParams inv = logchol_from_theta(theta);
    const InertialVector round = logchol_to_theta(inv);
    CHECK((round.vector() - theta.vector()).norm() < 1e-9 * std::max(1.0, theta.vector().norm()));
  }

  CHECK_THROWS_AS(logchol_from_theta(InertialVector(make_theta({-1, 0, 0, 0, 2, 0, 2, 0, 0, 2}))),
                  NotPositiveDefinite);
}

TEST_CASE("exp-eigenvalue triangle identity") {
  // D = P L implies D_y + D_z - D_x = 2 L_x exactly.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector3d l(std::exp(unit(rng)), std::exp(unit(rng)), std::exp(unit(rng)));
    const Eigen::Vector3d d = BarycentricInertia::P() * l;
    CHECK(d(1) + d(2) - d(0) == doctest::Approx(2 * l(0)).epsilon(1e-14));
    CHECK(d(0) + d(2) - d(1) == doctest::Approx(2 * l(1)).epsilon(1e-14));
    CHECK(d(0) + d(1) - d(2) == doctest::Approx(2 * l(2)).epsilon(1e-14));
  }
}
