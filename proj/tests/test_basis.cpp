#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "ultrafn/basis.hpp"

using namespace ultra;

namespace {
const BasisFamily kSpectral{FamilyKind::SpectralSine};
const BasisFamily kFem{FamilyKind::FemP1};

// Gram matrix recomputed entry-by-entry from the level's own quadrature.
Eigen::MatrixXd quadrature_gram(const SpaceLevel& s) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(s.size(), s.size());
  const QuadratureRule& q = s.quadrature();
  for (std::size_t k = 0; k < q.size(); ++k) {
    const Eigen::VectorXd v = s.eval_basis(q.nodes[k]);
    g += q.weights[k] * v * v.transpose();
  }
  return g;
}
}  // namespace

TEST_CASE("spectral level 1 on the unit interval") {
  SpaceLevel s = SpaceLevel::build(Domain::unit_interval(), kSpectral, 1);
  REQUIRE(s.size() == 1);
  CHECK(s.eval_basis(Point(0.5))[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(Eigen::MatrixXd(s.stiffness())(0, 0) == doctest::Approx(M_PI * M_PI).epsilon(1e-14));
}

TEST_CASE("spectral orthonormality via quadrature") {
  SpaceLevel s = SpaceLevel::build(Domain::unit_interval(), kSpectral, 3);
  REQUIRE(s.size() == 3);
  const Eigen::MatrixXd g = quadrature_gram(s);
  CHECK((g - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);

  SpaceLevel s2 = SpaceLevel::from_resolution(Domain::unit_square(), FamilyKind::SpectralSine, 6);
  const Eigen::MatrixXd g2 = quadrature_gram(s2);
  CHECK((g2 - Eigen::MatrixXd::Identity(36, 36)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("fem level matches the dense quadrature oracle") {
  SpaceLevel s = SpaceLevel::from_resolution(Domain::unit_square(), FamilyKind::FemP1, 4);
  REQUIRE(s.size() == 9);
  const Eigen::MatrixXd g = quadrature_gram(s);
  CHECK((g - Eigen::MatrixXd(s.gram())).cwiseAbs().maxCoeff() <= 1e-14);

  // SPD of gram and stiffness
  for (const Eigen::MatrixXd m : {Eigen::MatrixXd(s.gram()), Eigen::MatrixXd(s.stiffness())}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("eval_basis examples") {
  SpaceLevel s = SpaceLevel::from_resolution(Domain::unit_interval(), FamilyKind::SpectralSine, 2);
  const Eigen::VectorXd v = s.eval_basis(Point(0.5));
  CHECK(v[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(v[1]) <= 1e-15);  // sin(pi) in floating point

  // boundary points give the zero vector exactly
  CHECK(s.eval_basis(Point(1.0)).cwiseAbs().maxCoeff() == 0.0);
  SpaceLevel f = SpaceLevel::from_resolution(Domain::unit_square(), FamilyKind::FemP1, 4);
  CHECK(f.eval_basis(Point(0.0, 0.37)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(f.eval_basis(Point(0.25, 1.0)).cwiseAbs().maxCoeff() == 0.0);

  // hat basis is nodal
  const Eigen::VectorXd hv = f.eval_basis(Point(0.5, 0.25));
  int ones = 0;
  for (int i = 0; i < f.size(); ++i) {
    if (hv[i] == 1.0) ++ones;
    else CHECK(hv[i] == 0.0);
  }
  CHECK(ones == 1);
}

TEST_CASE("integrate examples") {
  SpaceLevel s = SpaceLevel::build(Domain::unit_interval(), kSpectral, 4);
  CHECK(s.integrate([&](const Point& p) {
          const double e1 = s.eval_basis(p)[0];
          return e1 * e1;
        }) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(s.integrate([](const Point&) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.integrate([](const Point& p) { return p[0]; }) == doctest::Approx(0.5).epsilon(1e-14));

  SpaceLevel sq = SpaceLevel::build(Domain::unit_square(), kSpectral, 3);
  CHECK(sq.integrate([](const Point&) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("chain nestedness") {
  // dimensions strictly increase along the chain
  int prev_n = 0;
  for (int lev : {1, 2, 3, 4}) {
    SpaceLevel s = SpaceLevel::build(Domain::unit_square(), kFem, lev);
    CHECK(s.size() > prev_n);
    prev_n = s.size();
  }

  // a coarse hat lies in the span of the refined level: L2 projection error ~ 0
  SpaceLevel coarse = SpaceLevel::build(Domain::unit_interval(), kFem, 2);
  SpaceLevel fine = SpaceLevel::build(Domain::unit_interval(), kFem, 3);
  for (int i = 0; i < coarse.size(); ++i) {
    auto hat = [&](const Point& p) { return coarse.eval_basis(p)[i]; };
    Eigen::VectorXd b = Eigen::VectorXd::Zero(fine.size());
    const QuadratureRule& q = fine.quadrature();
    for (std::size_t k = 0; k < q.size(); ++k)
      b += (q.weights[k] * hat(q.nodes[k])) * fine.eval_basis(q.nodes[k]);
    const Eigen::VectorXd c = fine.solve_gram(b);
    // ||hat - proj||^2 = ||hat||^2 - c.b
    const double hat_sq = fine.integrate([&](const Point& p) {
      const double h = hat(p);
      return h * h;
    });
    CHECK(std::abs(hat_sq - c.dot(b)) <= 1e-10 * hat_sq);
  }
}

TEST_CASE("integration by parts consistency (spectral)") {
  SpaceLevel s = SpaceLevel::from_resolution(Domain::unit_square(), FamilyKind::SpectralSine, 4);
  const Eigen::VectorXd& mu = s.spectral_eigenvalues();
  // integral of (-laplace phi_i) phi_j equals the stiffness entry
  for (int i : {0, 3, 7, 15}) {
    for (int j : {0, 3, 7, 15}) {
      const double val = s.integrate([&](const Point& p) {
        const Eigen::VectorXd v = s.eval_basis(p);
        return mu[i] * v[i] * v[j];
      });
      CHECK(val == doctest::Approx(Eigen::MatrixXd(s.stiffness())(i, j)).epsilon(1e-10));
    }
  }
}

TEST_CASE("build errors") {
  CHECK_THROWS_AS(SpaceLevel::build(Domain::unit_interval(), kSpectral, 0), std::invalid_argument);
  CHECK_THROWS(SpaceLevel::build(Domain::unit_square(), kSpectral, 300, /*max_n=*/1000));
}
