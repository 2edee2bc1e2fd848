#include <doctest.h>

#include <cmath>

#include "topochain/ensembles.hpp"

using namespace topochain;

namespace {

ChainSpec make_spec(int n, int m) {
  ChainSpec spec;
  spec.transport_count = n;
  spec.cell_count = m;
  spec.intra_couplings.assign(n - 1, 1.0);
  return spec;
}

State bell_amps() {
  State amps(2);
  amps << Complex(1.0 / std::sqrt(2.0)), Complex(1.0 / std::sqrt(2.0));
  return amps;
}

EnsembleOptions fast_options(double circles) {
  EnsembleOptions options;
  options.circles = circles;
  options.steps_per_circle = 512;
  return options;
}

}  // namespace

TEST_SUITE("ensembles") {

TEST_CASE("bond noise statistics and determinism") {
  BondNoise noise(42, 0, 0.37, 10);
  double sum = 0.0, sumsq = 0.0;
  const int draws = 1000;  // 10^4 offsets in total
  for (int d = 0; d < draws; ++d)
    for (double x : noise.redraw()) {
      sum += x;
      sumsq += x * x;
    }
  const int count = draws * 10;
  const double mean = sum / count;
  const double std = std::sqrt(sumsq / count - mean * mean);
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(std - 0.37) / 0.37 < 0.03);

  BondNoise reference(42, 0, 0.37, 10);
  const std::vector<double> first = reference.redraw();
  BondNoise again(42, 0, 0.37, 10);
  BondNoise other_rep(42, 1, 0.37, 10);
  CHECK(again.redraw() == first);
  CHECK(other_rep.redraw() != first);
}

TEST_CASE("redraw interval gates fresh draws") {
  auto snapshot = [](BondNoise& noise, double t, double dt) {
    const auto span = noise.at_time(t, dt);
    return std::vector<double>(span.begin(), span.end());
  };
  BondNoise per_step(7, 0, 1.0, 4, 0.0);
  const auto a = snapshot(per_step, 0.0, 0.1);
  const auto b = snapshot(per_step, 0.1, 0.1);
  CHECK(a != b);

  BondNoise held(7, 0, 1.0, 4, 1.0);
  const auto c = snapshot(held, 0.0, 0.1);
  const auto d = snapshot(held, 0.5, 0.1);
  const auto e = snapshot(held, 1.05, 0.1);
  CHECK(c == d);
  CHECK(c != e);
}

TEST_CASE("xi = 0 reproduces the clean fidelity in every repetition") {
  const ChainSpec spec = make_spec(2, 3);
  const EnsembleResult result =
      coupling_disorder_ensemble(spec, bell_amps(), 0.0, 5, 99, fast_options(5.0));
  TransferOptions transfer;
  transfer.steps_per_circle = 512;
  transfer.record_stride = 1 << 30;
  const double clean = transfer_experiment(spec, bell_amps(), 5.0, transfer).fidelity;
  for (double f : result.fidelities) CHECK(f == clean);
  CHECK(result.mean == doctest::Approx(clean));
}

TEST_CASE("coupling-disorder plateau and concentration") {
  const ChainSpec spec = make_spec(2, 4);
  const EnsembleResult mild =
      coupling_disorder_ensemble(spec, bell_amps(), 0.1, 20, 7, fast_options(10.0));
  CHECK(mild.mean >= 0.99);
  for (double f : mild.fidelities) {
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }

  // xi = 0.5 g: fidelities concentrate near their mean.
  const EnsembleResult strong =
      coupling_disorder_ensemble(spec, bell_amps(), 0.5, 20, 7, fast_options(10.0));
  CHECK(strong.stddev < 0.05);
  CHECK(strong.mean < mild.mean);
}

TEST_CASE("ensemble determinism is bitwise across thread counts") {
  const ChainSpec spec = make_spec(2, 3);
  EnsembleOptions serial = fast_options(5.0);
  serial.threads = 1;
  EnsembleOptions parallel = fast_options(5.0);
  parallel.threads = 4;
  const EnsembleResult a =
      coupling_disorder_ensemble(spec, bell_amps(), 0.3, 8, 2024, serial);
  const EnsembleResult b =
      coupling_disorder_ensemble(spec, bell_amps(), 0.3, 8, 2024, parallel);
  REQUIRE(a.fidelities.size() == b.fidelities.size());
  for (std::size_t i = 0; i < a.fidelities.size(); ++i)
    CHECK(a.fidelities[i] == b.fidelities[i]);
}

TEST_CASE("timing disorder") {
  const ChainSpec spec = make_spec(2, 4);
  SUBCASE("eta = 0 gives the clean fidelity") {
    const EnsembleResult clean =
        timing_disorder_ensemble(spec, bell_amps(), 0.0, 3, 5, fast_options(10.0));
    CHECK(clean.stddev == doctest::Approx(0.0));
    CHECK(clean.mean > 0.999);
  }
  SUBCASE("Bell input is insensitive even at eta = 0.1 T") {
    const EnsembleResult result =
        timing_disorder_ensemble(spec, bell_amps(), 0.1, 20, 5, fast_options(10.0));
    CHECK(result.mean >= 0.94);
  }
  SUBCASE("single-qubit input matches the interference prediction") {
    State single(2);
    single << Complex(1.0), Complex(0.0);
    const double eta = 0.1;
    const EnsembleResult result =
        timing_disorder_ensemble(spec, single, eta, 60, 11, fast_options(10.0));
    // F = |cos(g dt)| per repetition; the Gaussian average is
    // E|cos(x)|, x ~ N(0, (2 pi eta)^2) ~ 0.825 at eta = 0.1.
    const double phase_std = 2.0 * kPi * eta;
    double predicted = 0.0;
    const int grid = 20001;
    for (int i = 0; i < grid; ++i) {
      const double x = -5.0 + 10.0 * i / (grid - 1);
      predicted += std::abs(std::cos(phase_std * x)) *
                   std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi) * (10.0 / (grid - 1));
    }
    CHECK(result.mean == doctest::Approx(predicted).epsilon(0.05));
  }
}

TEST_CASE("circles scan rises toward unity") {
  const ChainSpec spec = make_spec(2, 4);
  EnsembleOptions options = fast_options(0);
  const auto table =
      circles_scan(spec, bell_amps(), {1.0, 2.0, 4.0, 8.0, 16.0, 40.0}, options);
  REQUIRE(table.size() == 6);
  CHECK(table.front().fidelity < table.back().fidelity);
  CHECK(table.back().fidelity >= 0.999);  // deep-adiabatic plateau
  for (const CirclesPoint& point : table) {
    CHECK(point.fidelity >= 0.0);
    CHECK(point.fidelity <= 1.0);
  }
}

TEST_CASE("input validation") {
  const ChainSpec spec = make_spec(2, 3);
  CHECK_THROWS_AS((void)coupling_disorder_ensemble(spec, bell_amps(), -0.1, 5, 0,
                                                   fast_options(5.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)coupling_disorder_ensemble(spec, bell_amps(), 0.1, 0, 0,
                                                   fast_options(5.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)circles_scan(spec, bell_amps(), {0.5}, fast_options(0)),
                  std::invalid_argument);
}

}  // TEST_SUITE
