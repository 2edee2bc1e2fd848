#include <doctest.h>

#include <cmath>

#include "topochain/dynamics.hpp"

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

State w_amps() {
  State amps(3);
  amps << Complex(1.0 / std::sqrt(3.0)), Complex(1.0 / std::sqrt(3.0)),
      Complex(1.0 / std::sqrt(3.0));
  return amps;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("stationary state under a frozen Hamiltonian") {
  const ChainSpec spec = make_spec(2, 3);
  const RealMatrix h = build_hamiltonian(spec, 5.0, 5.0);  // schedule frozen at omega t = pi/2
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
  const State phi = solver.eigenvectors().col(2).cast<Complex>();
  const double energy = solver.eigenvalues()(2);

  State psi = phi;
  const double dt = 0.05;
  for (int s = 0; s < 200; ++s) psi = exact_step(h, psi, dt);
  const Complex overlap = phi.dot(psi);
  CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-9);
  CHECK(std::abs(overlap - std::exp(Complex(0.0, -energy * 10.0))) < 1e-9);
}

TEST_CASE("fidelity basics and the geometric-series value") {
  const ChainSpec spec = make_spec(2, 5);
  const State bell = encode_left_state(spec, bell_amps());
  CHECK(fidelity(bell, bell) == doctest::Approx(1.0));
  const State far = target_right_state(spec, bell_amps());
  CHECK(fidelity(bell, far) == 0.0);

  // Overlap of the left Bell state with the edge branch at v/w = 0.1 equals
  // |lambda| / sqrt(sum_m lambda^(2m)), summed by hand.
  const double ratio = 0.1;
  const EdgeState edge = edge_wavefunction(spec, ratio, 1.0, 0);
  double series = 0.0;
  for (int m = 1; m <= spec.cell_count; ++m) series += std::pow(ratio, 2 * m);
  const double expected = ratio / std::sqrt(series);
  CHECK(fidelity(bell, edge.amplitudes) == doctest::Approx(expected).epsilon(1e-10));

  State small(3);
  small << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS((void)fidelity(bell, small), std::invalid_argument);
}

TEST_CASE("analytic adiabatic state") {
  const ChainSpec spec = make_spec(2, 5);
  const CouplingSchedule schedule{5.0, 0.1};
  SUBCASE("t=0 reproduces the encoded input exactly") {
    State amps(2);
    amps << Complex(0.6, 0.0), Complex(0.0, 0.8);
    const State analytic = analytic_adiabatic_state(spec, schedule, 0.0, amps);
    const State encoded = encode_left_state(spec, amps);
    CHECK((analytic - encoded).norm() < 1e-12);
  }
  SUBCASE("single-qubit input splits into equal branches") {
    State amps(2);
    amps << Complex(1.0), Complex(0.0);
    const double t = 7.3;
    const auto [v, w] = schedule.value(t);
    const State expected =
        (std::exp(Complex(0.0, -t)) * edge_wavefunction(spec, v, w, 0).amplitudes +
         std::exp(Complex(0.0, +t)) * edge_wavefunction(spec, v, w, 1).amplitudes) /
        std::sqrt(2.0);
    const State analytic = analytic_adiabatic_state(spec, schedule, t, amps);
    CHECK((analytic - expected).norm() < 1e-12);
  }
}

TEST_CASE("clean Bell transfer fidelity and smooth indicator (N=2, M=5, 5 circles)") {
  const ChainSpec spec = make_spec(2, 5);
  TransferOptions options;
  options.record_stride = 50;
  const TransferResult result = transfer_experiment(spec, bell_amps(), 5.0, options);
  CHECK(result.frequency == doctest::Approx(0.1));
  CHECK(result.period == doctest::Approx(2.0 * kPi));
  CHECK(result.fidelity == doctest::Approx(0.994372).epsilon(2e-4));
  CHECK(result.norm_drift <= 1e-9);
  REQUIRE(result.uniform_branch_phase.has_value());
  CHECK(std::abs(*result.uniform_branch_phase - Complex(1.0)) < 1e-6);

  // Bell input rides a single branch: the indicator increases monotonically
  // up to tiny non-adiabatic ripples.
  const State target = target_right_state(spec, bell_amps());
  double previous = 0.0;
  for (std::size_t k = 0; k < result.states.size(); ++k) {
    const double indicator = fidelity(target, result.states[k]);
    CHECK(indicator >= previous - 0.01);
    previous = std::max(previous, indicator);
  }

  // Single-qubit input beats at the dynamical period on the way.
  const ChainSpec spec2 = make_spec(2, 5);
  State single(2);
  single << Complex(1.0), Complex(0.0);
  const TransferResult osc = transfer_experiment(spec2, single, 5.0, options);
  double lo = 1.0, hi = 0.0;
  const State target2 = target_right_state(spec2, single);
  for (std::size_t k = osc.states.size() / 3; k < 2 * osc.states.size() / 3; ++k) {
    const double indicator = fidelity(target2, osc.states[k]);
    lo = std::min(lo, indicator);
    hi = std::max(hi, indicator);
  }
  CHECK(hi - lo > 0.2);  // mid-protocol oscillation
}

TEST_CASE("analytic and numeric trajectories agree at the 1e-2 level") {
  const ChainSpec spec = make_spec(2, 5);
  TransferOptions options;
  options.record_stride = 100;
  const TransferResult result = transfer_experiment(spec, bell_amps(), 5.0, options);
  const CouplingSchedule schedule{spec.drive_amplitude, result.frequency};
  double worst = 1.0;
  for (std::size_t k = 0; k < result.states.size(); ++k) {
    const State analytic =
        analytic_adiabatic_state(spec, schedule, result.times[k], bell_amps());
    worst = std::min(worst, fidelity(analytic, result.states[k]));
  }
  // Non-adiabatic dressing at omega = 0.1 g dips the overlap to ~0.965.
  CHECK(worst > 0.95);
  CHECK(worst < 0.9999);
}

TEST_CASE("step-halving oracle on an M=2 micro-chain") {
  const ChainSpec spec = make_spec(2, 2);
  TransferOptions coarse;
  coarse.steps_per_circle = 1000;
  coarse.record_stride = 1 << 30;
  TransferOptions fine = coarse;
  fine.steps_per_circle = 10000;
  const TransferResult a = transfer_experiment(spec, bell_amps(), 2.0, coarse);
  const TransferResult b = transfer_experiment(spec, bell_amps(), 2.0, fine);
  CHECK(std::abs(fidelity(a.final_state(), b.final_state()) - 1.0) <= 1e-6);
}

TEST_CASE("two-branch interference under a timing offset") {
  const ChainSpec spec = make_spec(2, 5);
  State amps(2);
  amps << Complex(0.8), Complex(0.6);
  TransferOptions options;
  options.record_stride = 1 << 30;

  const TransportBlock block = transport_block_eigensystem(spec.intra_couplings);
  const double period = *common_period(block);
  const double p = std::norm(Complex(0.8 + 0.6) / std::sqrt(2.0));
  const double q = std::norm(Complex(0.8 - 0.6) / std::sqrt(2.0));

  for (double shift : {period / 8.0, period / 4.0}) {
    const TransferResult result =
        transfer_experiment(spec, amps, 10.0, options, nullptr, shift);
    const double theta = 1.0 * shift;  // edge energy is +-1 g0
    const double predicted = std::sqrt(p * p + q * q + 2.0 * p * q * std::cos(2.0 * theta));
    CHECK(result.fidelity == doctest::Approx(predicted).epsilon(2e-3));
  }
}

TEST_CASE("half-integral circles flip the global sign only (N=2)") {
  const ChainSpec spec = make_spec(2, 4);
  TransferOptions options;
  options.record_stride = 1 << 30;
  const TransferResult result = transfer_experiment(spec, bell_amps(), 5.5, options);
  REQUIRE(result.uniform_branch_phase.has_value());
  CHECK(std::abs(*result.uniform_branch_phase - Complex(-1.0)) < 1e-6);
  CHECK(result.fidelity > 0.99);
}

TEST_CASE("circle thresholds for longer chains") {
  TransferOptions options;
  options.record_stride = 1 << 30;
  const TransferResult n2m8 = transfer_experiment(make_spec(2, 8), bell_amps(), 10.0, options);
  CHECK(n2m8.fidelity >= 0.99);
  const TransferResult n3m2 = transfer_experiment(make_spec(3, 2), w_amps(), 5.0, options);
  CHECK(n3m2.fidelity == doctest::Approx(0.989957).epsilon(2e-4));
}

TEST_CASE("evolution guards") {
  const ChainSpec spec = make_spec(2, 2);
  const CouplingSchedule schedule{5.0, 0.1};
  const State psi0 = encode_left_state(spec, bell_amps());

  EvolutionConfig config;
  config.total_time = 2.0 * kPi;
  config.steps = 100;  // dt = T/100 > T/500
  CHECK_THROWS_AS((void)evolve(spec, schedule, psi0, config), std::invalid_argument);
  config.allow_large_steps = true;
  CHECK_NOTHROW((void)evolve(spec, schedule, psi0, config));

  config.allow_large_steps = false;
  config.steps = 2000;
  State unnormalized = psi0 * 2.0;
  CHECK_THROWS_AS((void)evolve(spec, schedule, unnormalized, config), std::invalid_argument);

  CHECK_THROWS_AS((void)transfer_experiment(spec, bell_amps(), 0.5), std::invalid_argument);

  ChainSpec no_period = make_spec(4, 2);
  no_period.intra_couplings = {1.0, 1.0, 1.0};
  State four(4);
  four << 1.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS((void)transfer_experiment(no_period, four, 5.0), NoCommonPeriodError);
}

TEST_CASE("unitarity and linearity of the propagators") {
  const ChainSpec spec = make_spec(2, 3);
  const CouplingSchedule schedule{5.0, 0.1};
  EvolutionConfig config;
  config.total_time = kPi / 0.1;
  config.steps = 5000;
  config.record_stride = 1 << 30;

  State e1(2), e2(2);
  e1 << 1.0, 0.0;
  e2 << 0.0, 1.0;
  const State psi1 = encode_left_state(spec, e1);
  const State psi2 = encode_left_state(spec, e2);
  const Complex alpha(0.6, 0.0), beta(0.0, 0.8);

  for (Integrator integrator : {Integrator::ExactStepExponential, Integrator::RungeKutta4}) {
    config.integrator = integrator;
    const Trajectory a = evolve(spec, schedule, psi1, config);
    const Trajectory b = evolve(spec, schedule, psi2, config);
    const Trajectory combo = evolve(spec, schedule, alpha * psi1 + beta * psi2, config);
    const double defect =
        (combo.final_state() - alpha * a.final_state() - beta * b.final_state()).norm();
    CHECK(defect <= 1e-9);
    const double drift_bound = integrator == Integrator::ExactStepExponential ? 1e-9 : 1e-6;
    CHECK(a.norm_drift <= drift_bound);
    CHECK(combo.norm_drift <= drift_bound);
  }
}

TEST_CASE("RK4 reproduces the exact step to fourth order") {
  const ChainSpec spec = make_spec(2, 2);
  const CouplingSchedule schedule{5.0, 0.1};
  const State psi0 = encode_left_state(spec, bell_amps());

  auto error_at = [&](int steps) {
    EvolutionConfig config;
    config.total_time = 2.0;
    config.steps = steps;
    config.record_stride = 1 << 30;
    config.allow_large_steps = true;
    config.integrator = Integrator::RungeKutta4;
    const Trajectory rk = evolve(spec, schedule, psi0, config);
    config.integrator = Integrator::ExactStepExponential;
    const Trajectory exact = evolve(spec, schedule, psi0, config);
    return (rk.final_state() - exact.final_state()).norm();
  };

  const double coarse = error_at(250);
  const double fine = error_at(2500);
  REQUIRE(fine > 1e-14);  // above round-off
  const double order = std::log10(coarse / fine);
  CHECK(order > 4.0 - std::log10(2.0));
  CHECK(order < 4.0 + std::log10(2.0));
}

TEST_CASE("swapping the input amplitudes leaves integral-circle fidelity unchanged") {
  const ChainSpec spec = make_spec(2, 4);
  TransferOptions options;
  options.record_stride = 1 << 30;
  State ab(2), ba(2);
  ab << Complex(0.8), Complex(0.6);
  ba << Complex(0.6), Complex(0.8);
  const double fa = transfer_experiment(spec, ab, 6.0, options).fidelity;
  const double fb = transfer_experiment(spec, ba, 6.0, options).fidelity;
  CHECK(std::abs(fa - fb) <= 1e-3);
}

}  // TEST_SUITE
