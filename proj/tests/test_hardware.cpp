#include <doctest.h>

#include <cmath>

#include "topochain/hardware.hpp"

using namespace topochain;

namespace {
constexpr double kTau = 2.0 * 3.14159265358979323846;
}

TEST_SUITE("hardware") {

TEST_CASE("junction phase at the trivial points") {
  const CouplerParams params;  // paper defaults: 300 pH, 1 nH, 8 nH, 5.5 GHz
  CHECK(solve_junction_phase(params, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(solve_junction_phase(params, kTau) == doctest::Approx(kTau).epsilon(1e-12));
  CHECK(solve_junction_phase(params, -kTau) == doctest::Approx(-kTau).epsilon(1e-12));
}

TEST_CASE("junction phase residual against a bisection oracle") {
  const CouplerParams params;
  const double ratio = 2.0 * params.gate_inductance / params.coupler_inductance;
  CHECK(ratio == doctest::Approx(0.6));
  for (double phi : {kTau / 8.0, kTau / 4.0, 1.0, 2.5, -1.7, 5.9}) {
    const double delta = solve_junction_phase(params, phi);
    CHECK(std::abs(delta + ratio * std::sin(delta) - phi) <= 1e-12);
    // Odd symmetry.
    CHECK(solve_junction_phase(params, -phi) == doctest::Approx(-delta).epsilon(1e-12));
  }
}

TEST_CASE("coupling formula at zero bias matches its closed form") {
  const CouplerParams params;
  const double lg = params.gate_inductance;
  const double expected = -(lg * lg) /
                          (2.0 * (params.qubit_inductance + lg) *
                           (params.coupler_inductance + 2.0 * lg)) *
                          params.qubit_frequency;
  const double g = flux_to_coupling(params, 0.0);
  CHECK(std::abs(g - expected) <= 1e-6 * std::abs(expected));
  CHECK(g / kTau / 1e6 == doctest::Approx(-18.637).epsilon(1e-3));  // MHz
}

TEST_CASE("coupling crosses zero where cos(delta) does") {
  const CouplerParams params;
  const double phi = kTau / 4.0 + 0.6;  // delta = pi/2 exactly
  CHECK(solve_junction_phase(params, phi) == doctest::Approx(kTau / 4.0).epsilon(1e-12));
  CHECK(std::abs(flux_to_coupling(params, phi)) < 1e-3 * std::abs(flux_to_coupling(params, 0.0)));
}

TEST_CASE("coupling is even in the external flux") {
  const CouplerParams params;
  for (double phi : {0.3, 1.1, 2.9, 5.5}) {
    const double forward = flux_to_coupling(params, phi);
    const double backward = flux_to_coupling(params, -phi);
    CHECK(std::abs(forward - backward) <= 1e-12 * std::abs(forward));
  }
}

TEST_CASE("full sweep spans the formula extremes") {
  const CouplerParams params;
  const auto rows = flux_sweep(params, -kTau, kTau, 801);
  REQUIRE(rows.size() == 801);
  double lo = 1e300, hi = -1e300;
  for (const FluxSweepRow& row : rows) {
    lo = std::min(lo, row.coupling);
    hi = std::max(hi, row.coupling);
  }
  // cos(delta) = +-1 endpoints of g(cos delta), evaluated directly.
  const double lg = params.gate_inductance;
  const double at_plus = -(lg * lg) /
                         (2.0 * (params.qubit_inductance + lg) *
                          (params.coupler_inductance + 2.0 * lg)) *
                         params.qubit_frequency;
  const double at_minus = (lg * lg) /
                          (2.0 * (params.qubit_inductance + lg) *
                           (params.coupler_inductance - 2.0 * lg)) *
                          params.qubit_frequency;
  CHECK(lo == doctest::Approx(at_plus).epsilon(1e-6));
  CHECK(hi == doctest::Approx(at_minus).epsilon(1e-3));
  CHECK(lo / kTau / 1e6 == doctest::Approx(-18.64).epsilon(1e-3));
  CHECK(hi / kTau / 1e6 == doctest::Approx(74.55).epsilon(1e-2));
}

TEST_CASE("strongly coupled loop reports every root") {
  CouplerParams params;
  params.gate_inductance = 1.5e-9;  // 2Lg/LT = 3: non-monotone
  try {
    (void)solve_junction_phase(params, kTau / 2.0);
    FAIL("expected MultivaluedPhaseError");
  } catch (const MultivaluedPhaseError& error) {
    CHECK(error.roots.size() >= 2);
    const double ratio = 3.0;
    for (double root : error.roots)
      CHECK(std::abs(root + ratio * std::sin(root) - kTau / 2.0) <= 1e-10);
  }
}

TEST_CASE("parameter validation") {
  CouplerParams params;
  params.coupler_inductance = 0.0;
  CHECK_THROWS_AS((void)solve_junction_phase(params, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)flux_sweep(CouplerParams{}, 1.0, -1.0, 10), std::invalid_argument);
}

}  // TEST_SUITE
