#include <doctest.h>

#include <cmath>

#include "ultrafn/netlab.hpp"

using namespace ultra;

namespace {

const BasisFamily kSpectral{FamilyKind::SpectralSine};

// direct partial summation oracle for the 2D minimum energy at the center
double min_energy_2d_oracle(int m) {
  double acc = 0.0;
  for (int j = 1; j <= m; j += 2)
    for (int k = 1; k <= m; k += 2) acc += 1.0 / (j * j + k * k);
  return -(2.0 / (M_PI * M_PI)) * acc;
}

std::vector<NetSample> synthetic(const std::vector<int>& ms,
                                 const std::function<double(int)>& f) {
  std::vector<NetSample> out;
  for (int m : ms) out.push_back(NetSample{m, m * m, f(m)});
  return out;
}

}  // namespace

TEST_CASE("energy net at fixed q converges in 1D") {
  NetSpec spec;
  spec.quantity = Quantity::EnergyAtFixedQ;
  spec.fixed_q = Point(0.3);
  const auto samples =
      run_net(Domain::unit_interval(), kSpectral, spec, {16, 32, 64, 128, 256, 512, 1024});
  REQUIRE(samples.size() == 7);
  CHECK(samples.back().n == 1024);
  CHECK(std::abs(samples.back().value - (-0.105)) <= 1e-3);
  for (std::size_t i = 1; i < samples.size(); ++i)
    CHECK(samples[i].value < samples[i - 1].value);  // larger spaces lower the energy
}

TEST_CASE("minimizer coordinate net converges to the center on the unit square") {
  // at each finite level the truncated functional's minimum sits O(1/m) off
  // the center; the coordinate net converges to 0.5 without being constant
  NetSpec spec;
  spec.quantity = Quantity::MinimizerCoordinate;
  for (int axis : {0, 1}) {
    spec.axis = axis;
    const auto samples = run_net(Domain::unit_square(), kSpectral, spec, {4, 8, 12, 16});
    for (const auto& s : samples) CHECK(std::abs(s.value - 0.5) <= 0.6 / s.level);
    CHECK(std::abs(samples.back().value - 0.5) < std::abs(samples.front().value - 0.5));
  }
}

TEST_CASE("delta self-energy grows linearly in 1D") {
  NetSpec spec;
  spec.quantity = Quantity::DeltaSelfEnergy;
  spec.fixed_q = Point(0.5);
  const auto samples = run_net(Domain::unit_interval(), kSpectral, spec, {16, 32, 64, 128});
  // sum over odd modes of 2 sin^2(k pi / 2) counts n for even n
  for (const auto& s : samples) CHECK(std::abs(s.value - s.n) <= 2.0);
  const NetFit fit = fit_net(samples);
  CHECK(fit.classification == NetClass::Infinite);
}

TEST_CASE("run_net input validation") {
  NetSpec spec;
  CHECK_THROWS_AS(run_net(Domain::unit_interval(), kSpectral, spec, {}), std::invalid_argument);
  CHECK_THROWS_AS(run_net(Domain::unit_interval(), kSpectral, spec, {4, 4}),
                  std::invalid_argument);
  spec.max_n = 10;
  CHECK_THROWS(run_net(Domain::unit_interval(), kSpectral, spec, {4, 64}));
}

TEST_CASE("exact recovery of a synthetic log net") {
  const auto samples = synthetic({8, 16, 32, 64, 128},
                                 [](int m) { return 3.0 * std::log(m * m) - 1.0; });
  const NetFit fit = fit_net(samples);
  CHECK(fit.model == NetModel::LogDivergent);
  CHECK(fit.alpha == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(fit.beta == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(fit.rsq >= 1.0 - 1e-12);
  CHECK(fit.classification == NetClass::Infinite);
}

TEST_CASE("identically zero net is infinitesimal with beta zero") {
  const auto samples = synthetic({8, 16, 32, 64}, [](int) { return 0.0; });
  const NetFit fit = fit_net(samples);
  CHECK(fit.classification == NetClass::Infinitesimal);
  CHECK(fit.beta == 0.0);
}

TEST_CASE("vanishing net classifies infinitesimal") {
  const auto samples = synthetic({8, 16, 32, 64, 128},
                                 [](int m) { return 0.5 * std::pow(static_cast<double>(m), -4.0); });
  const NetFit fit = fit_net(samples);
  CHECK(fit.classification == NetClass::Infinitesimal);
}

TEST_CASE("degenerate constant net classifies finite") {
  const auto samples = synthetic({8, 16, 32, 64}, [](int) { return 2.5; });
  const NetFit fit = fit_net(samples);
  CHECK(fit.model == NetModel::Constant);
  CHECK(fit.classification == NetClass::Finite);
  CHECK(fit.beta == doctest::Approx(2.5));
}

TEST_CASE("1D vs 2D min-energy contrast") {
  NetSpec spec;
  spec.quantity = Quantity::MinEnergy;
  const auto one_d =
      fit_net(run_net(Domain::unit_interval(), kSpectral, spec, {128, 256, 512, 1024, 2048}));
  CHECK(one_d.classification == NetClass::Finite);
  CHECK(std::abs(one_d.beta - (-0.125)) <= 1e-3);

  const auto two_d = fit_net(run_net(Domain::unit_square(), kSpectral, spec, {8, 16, 32, 64}));
  CHECK(two_d.classification == NetClass::Infinite);
  CHECK(two_d.model == NetModel::LogDivergent);

  // slope against the oracle partial sums, same abscissa
  const NetFit oracle = fit_net(synthetic({8, 16, 32, 64}, min_energy_2d_oracle));
  CHECK(std::abs(two_d.alpha - oracle.alpha) <= 0.1 * std::abs(oracle.alpha));
}

TEST_CASE("classification is stable under doubling the level range") {
  NetSpec spec;
  spec.quantity = Quantity::MinEnergy;
  const auto short_2d = fit_net(run_net(Domain::unit_square(), kSpectral, spec, {8, 16, 32, 64}));
  const auto long_2d =
      fit_net(run_net(Domain::unit_square(), kSpectral, spec, {8, 16, 32, 64, 128}));
  CHECK(short_2d.classification == NetClass::Infinite);
  CHECK(long_2d.classification == NetClass::Infinite);

  spec.quantity = Quantity::EnergyAtFixedQ;
  spec.fixed_q = Point(0.3);
  const auto short_1d =
      fit_net(run_net(Domain::unit_interval(), kSpectral, spec, {256, 512, 1024, 2048}));
  const auto long_1d =
      fit_net(run_net(Domain::unit_interval(), kSpectral, spec, {256, 512, 1024, 2048, 4096}));
  CHECK(short_1d.classification == NetClass::Finite);
  CHECK(long_1d.classification == NetClass::Finite);
}

TEST_CASE("near-boundary study regimes") {
  // fixed interior point: divergent
  const NetFit interior =
      near_boundary_study(Domain::unit_square(), kSpectral, 0.0, {8, 16, 32, 64});
  CHECK(interior.classification == NetClass::Infinite);

  // pinned on the boundary: identically zero
  NetSpec spec;
  spec.quantity = Quantity::ElectrostaticAtFixedQ;
  spec.fixed_q = Point(0.0, 0.5);
  const NetFit pinned =
      fit_net(run_net(Domain::unit_square(), kSpectral, spec, {8, 16, 32, 64}));
  CHECK(pinned.classification == NetClass::Infinitesimal);
  CHECK(pinned.beta == 0.0);

  // the last-level value decreases as the exponent pushes q toward the boundary
  double prev = std::numeric_limits<double>::infinity();
  for (double e : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    const NetFit f = near_boundary_study(Domain::unit_square(), kSpectral, e, {8, 16, 32, 64});
    const double last = f.samples.back().value;
    CHECK(last < prev);
    CHECK(last >= 0.0);
    prev = last;
  }

  CHECK_THROWS_AS(near_boundary_study(Domain::unit_square(), kSpectral, -1.0, {8, 16, 32, 64}),
                  std::invalid_argument);
}
