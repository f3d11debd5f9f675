#include <doctest.h>

#include <cmath>
#include <random>

#include "ultrafn/solver.hpp"

using namespace ultra;

namespace {
// closed-form Dirichlet Green's function of -u'' on (0,1)
double green1d(double x, double q) { return std::min(x, q) * (1.0 - std::max(x, q)); }
}  // namespace

TEST_CASE("poisson with an eigenfunction load") {
  SpaceLevel s = SpaceLevel::from_resolution(Domain::unit_interval(), FamilyKind::SpectralSine, 4);
  const double mu1 = s.spectral_eigenvalues()[0];
  const DirichletSolution sol = solve_poisson(s, [&](const Point& p) {
    return mu1 * s.eval_basis(p)[0];
  });
  Eigen::VectorXd expect = Eigen::VectorXd::Zero(4);
  expect[0] = 1.0;
  CHECK((sol.u.coeffs - expect).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(sol.residual <= 1e-10);
}

TEST_CASE("poisson with zero load") {
  SpaceLevel s = SpaceLevel::from_resolution(Domain::unit_interval(), FamilyKind::SpectralSine, 4);
  const DirichletSolution sol = solve_poisson(s, [](const Point&) { return 0.0; });
  CHECK(sol.u.coeffs.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("poisson with unit load vs the closed form") {
  // -u'' = 1 on (0,1): u(x) = x(1-x)/2, u(0.5) = 0.125
  SpaceLevel s = SpaceLevel::from_resolution(Domain::unit_interval(), FamilyKind::SpectralSine, 127);
  const DirichletSolution sol = solve_poisson(s, [](const Point&) { return 1.0; });
  CHECK(sol.u.evaluate(Point(0.5)) == doctest::Approx(0.125).epsilon(1e-6));
  // pointwise boundary condition holds exactly
  CHECK(sol.u.evaluate(Point(0.0)) == 0.0);
  CHECK(sol.u.evaluate(Point(1.0)) == 0.0);
}

TEST_CASE("single-mode point source by hand") {
  SpaceLevel s = SpaceLevel::from_resolution(Domain::unit_interval(), FamilyKind::SpectralSine, 1);
  const DirichletSolution sol = solve_point_source(s, Point(0.5));
  CHECK(sol.u.coeffs[0] == doctest::Approx(-std::sqrt(2.0) / (M_PI * M_PI)).epsilon(1e-13));
  CHECK(sol.point_value == doctest::Approx(-2.0 / (M_PI * M_PI)).epsilon(1e-13));
}

TEST_CASE("boundary point source gives the zero solution") {
  for (FamilyKind k : {FamilyKind::SpectralSine, FamilyKind::FemP1}) {
    SpaceLevel s = SpaceLevel::from_resolution(Domain::unit_square(), k, 8);
    const DirichletSolution sol = solve_point_source(s, Point(0.0, 0.5));
    CHECK(sol.u.coeffs.cwiseAbs().maxCoeff() == 0.0);
    CHECK(sol.elastic == 0.0);
  }
  CHECK_THROWS_AS(
      solve_point_source(
          SpaceLevel::from_resolution(Domain::unit_interval(), FamilyKind::SpectralSine, 4),
          Point(1.5)),
      std::invalid_argument);
}

TEST_CASE("point source vs the Green oracle") {
  SpaceLevel s = SpaceLevel::from_resolution(Domain::unit_interval(), FamilyKind::SpectralSine, 500);
  const double q = 0.3;
  const DirichletSolution sol = solve_point_source(s, Point(q));
  double worst = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double x = i / 10.0;
    worst = std::max(worst, std::abs(sol.u.evaluate(Point(x)) - (-green1d(x, q))));
  }
  CHECK(worst <= 2e-3);
}

TEST_CASE("spectral diagonal oracle for point-source coefficients") {
  SpaceLevel s = SpaceLevel::from_resolution(Domain::unit_square(), FamilyKind::SpectralSine, 5);
  const Point q(0.37, 0.61);
  const DirichletSolution sol = solve_point_source(s, q);
  const Eigen::VectorXd k = s.eval_basis(q);
  const Eigen::VectorXd& mu = s.spectral_eigenvalues();
  for (int i = 0; i < s.size(); ++i)
    CHECK(sol.u.coeffs[i] == doctest::Approx(-k[i] / mu[i]).epsilon(1e-12));
}

TEST_CASE("weak-form energy identity") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (FamilyKind k : {FamilyKind::SpectralSine, FamilyKind::FemP1}) {
    SpaceLevel s = SpaceLevel::from_resolution(Domain::unit_square(), k, 8);
    for (int t = 0; t < 20; ++t) {
      const Point q(u(rng), u(rng));
      const DirichletSolution sol = solve_point_source(s, q);
      CHECK(sol.point_value == doctest::Approx(-2.0 * sol.elastic).epsilon(1e-9));
    }
  }
}

TEST_CASE("Galerkin consistency across families (1D)") {
  SpaceLevel spec = SpaceLevel::from_resolution(Domain::unit_interval(), FamilyKind::SpectralSine, 63);
  SpaceLevel fem = SpaceLevel::from_resolution(Domain::unit_interval(), FamilyKind::FemP1, 64);
  const Point q(0.3);
  const DirichletSolution us = solve_point_source(spec, q);
  const DirichletSolution uf = solve_point_source(fem, q);
  // trapezoid L2 norm of the difference on a fine grid
  const int nn = 2000;
  double acc = 0.0;
  for (int i = 0; i <= nn; ++i) {
    const double x = static_cast<double>(i) / nn;
    const double diff = us.u.evaluate(Point(x)) - uf.u.evaluate(Point(x));
    acc += (i == 0 || i == nn ? 0.5 : 1.0) * diff * diff / nn;
  }
  CHECK(std::sqrt(acc) <= 5e-2);
}

TEST_CASE("continuity probe shrinks with the radius") {
  SpaceLevel s = SpaceLevel::from_resolution(Domain::unit_interval(), FamilyKind::SpectralSine, 16);
  const Point q(0.5);
  CHECK(continuity_probe(s, q, 0.0) == 0.0);
  double prev = std::numeric_limits<double>::infinity();
  for (double r : {1e-2, 1e-3, 1e-4}) {
    const double m = continuity_probe(s, q, r);
    CHECK(m < prev);
    prev = m;
  }
  CHECK_THROWS_AS(continuity_probe(s, q, 0.7), std::invalid_argument);
  CHECK_THROWS_AS(continuity_probe(s, Point(0.0), 0.1), std::invalid_argument);
}

TEST_CASE("continuity probe bounded by a finite-difference Lipschitz estimate") {
  SpaceLevel s = SpaceLevel::from_resolution(Domain::unit_interval(), FamilyKind::SpectralSine, 16);
  const Point q(0.5);
  const double radius = 1e-3;
  // finite-difference derivative of q -> u_q in L2, sampled inside the ball
  double lip = 0.0;
  const double h = 1e-6;
  for (double off : {-radius, 0.0, radius}) {
    const Point base(q[0] + off);
    const Eigen::VectorXd u0 = solve_point_source(s, base).u.coeffs;
    const Eigen::VectorXd u1 = solve_point_source(s, Point(base[0] + h)).u.coeffs;
    const Eigen::VectorXd diff = u1 - u0;
    lip = std::max(lip, std::sqrt(diff.dot(s.gram() * diff)) / h);
  }
  CHECK(continuity_probe(s, q, radius) <= 1.5 * lip * radius);
}
