#include "topochain/dynamics.hpp"

#include <cmath>

namespace topochain {

namespace {

// (real matrix) * (complex vector) without promoting the matrix.
State apply_real(const RealMatrix& m, const State& psi) {
  State out(m.rows());
  out.real() = m * psi.real();
  out.imag() = m * psi.imag();
  return out;
}

State apply_real_transposed(const RealMatrix& m, const State& psi) {
  State out(m.cols());
  out.real() = m.transpose() * psi.real();
  out.imag() = m.transpose() * psi.imag();
  return out;
}

State rk4_step(const RealMatrix& h, const State& psi, double dt) {
  const Complex minus_i(0.0, -1.0);
  const State k1 = minus_i * apply_real(h, psi);
  const State k2 = minus_i * apply_real(h, psi + (0.5 * dt) * k1);
  const State k3 = minus_i * apply_real(h, psi + (0.5 * dt) * k2);
  const State k4 = minus_i * apply_real(h, psi + dt * k3);
  return psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

State exact_step(const RealMatrix& h, const State& psi, double dt) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
  State modal = apply_real_transposed(solver.eigenvectors(), psi);
  for (Eigen::Index j = 0; j < modal.size(); ++j)
    modal(j) *= std::exp(Complex(0.0, -solver.eigenvalues()(j) * dt));
  return apply_real(solver.eigenvectors(), modal);
}

Trajectory evolve(const ChainSpec& spec, const CouplingSchedule& schedule, const State& psi0,
                  const EvolutionConfig& config, BondNoise* noise) {
  validate(spec);
  if (psi0.size() != spec.site_count()) throw std::invalid_argument("psi0 has wrong dimension");
  if (std::abs(psi0.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("psi0 must be normalized");
  if (config.steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (!(config.total_time > 0.0)) throw std::invalid_argument("total_time must be positive");

  const double dt = config.total_time / config.steps;
  if (!config.allow_large_steps) {
    try {
      const auto period = common_period(transport_block_eigensystem(spec.intra_couplings));
      if (period && dt > *period / 500.0)
        throw std::invalid_argument(
            "step size exceeds T/500; shrink dt or set allow_large_steps");
    } catch (const DegenerateBlockError&) {
      // No reference period available; leave the step size to the caller.
    }
  }

  int stride = config.record_stride;
  if (stride <= 0) stride = (config.steps + 499) / 500;

  Trajectory traj;
  traj.times.reserve(config.steps / stride + 2);
  traj.states.reserve(config.steps / stride + 2);
  traj.times.push_back(0.0);
  traj.states.push_back(psi0);

  Eigen::SelfAdjointEigenSolver<RealMatrix> solver;
  State psi = psi0;
  for (int s = 0; s < config.steps; ++s) {
    const double t_mid = (s + 0.5) * dt;
    const auto [v, w] = schedule.value(t_mid);
    std::span<const double> offsets;
    if (noise) offsets = noise->at_time(s * dt, dt);
    const RealMatrix h = build_hamiltonian(spec, v, w, offsets);

    if (config.integrator == Integrator::ExactStepExponential) {
      solver.compute(h);
      State modal = apply_real_transposed(solver.eigenvectors(), psi);
      for (Eigen::Index j = 0; j < modal.size(); ++j)
        modal(j) *= std::exp(Complex(0.0, -solver.eigenvalues()(j) * dt));
      psi = apply_real(solver.eigenvectors(), modal);
    } else {
      psi = rk4_step(h, psi, dt);
    }

    if ((s + 1) % stride == 0 || s + 1 == config.steps) {
      traj.times.push_back((s + 1) * dt);
      traj.states.push_back(psi);
    }
  }
  traj.norm_drift = std::abs(traj.states.back().norm() - 1.0);
  return traj;
}

State analytic_adiabatic_state(const ChainSpec& spec, const CouplingSchedule& schedule,
                               double t, const State& input_amps) {
  validate(spec);
  if (input_amps.size() != spec.transport_count)
    throw std::invalid_argument("input amplitudes must have length N");
  const TransportBlock block = transport_block_eigensystem(spec.intra_couplings);
  const auto [v, w] = schedule.value(t);
  State psi = State::Zero(spec.site_count());
  for (int i = 0; i < block.size; ++i) {
    Complex coeff = 0.0;
    for (int r = 0; r < block.size; ++r) coeff += block.modes(r, i) * input_amps(r);
    if (coeff == Complex(0.0)) continue;
    const EdgeState branch = edge_wavefunction(spec, v, w, i);
    psi += coeff * std::exp(Complex(0.0, -block.energies(i) * t)) * branch.amplitudes;
  }
  return psi;
}

double fidelity(const State& a, const State& b) {
  if (a.size() != b.size()) throw std::invalid_argument("state dimensions differ");
  return std::abs(a.dot(b));
}

TransferResult transfer_experiment(const ChainSpec& spec, const State& input_amps,
                                   double circles, const TransferOptions& options,
                                   BondNoise* noise, double extra_time) {
  validate(spec);
  if (circles < 1.0) throw std::invalid_argument("circles must be >= 1");
  const TransportBlock block = transport_block_eigensystem(spec.intra_couplings);
  const auto period = common_period(block);
  if (!period)
    throw NoCommonPeriodError("edge energies admit no common dynamical period");

  TransferResult result;
  result.period = *period;
  result.total_time = circles * *period + extra_time;
  if (!(result.total_time > 0.0)) throw std::invalid_argument("total time must be positive");
  result.frequency = kPi / (circles * *period);
  result.branch_energies = block.energies;

  ChainSpec run_spec = spec;
  run_spec.drive_frequency = result.frequency;
  const CouplingSchedule schedule{run_spec.drive_amplitude, run_spec.drive_frequency};

  EvolutionConfig config;
  config.total_time = result.total_time;
  config.steps = std::max(1, static_cast<int>(std::lround(
                                  result.total_time / (*period / options.steps_per_circle))));
  config.integrator = options.integrator;
  config.record_stride = options.record_stride;
  config.allow_large_steps = options.allow_large_steps;

  const State psi0 = encode_left_state(run_spec, input_amps);
  const State target = target_right_state(run_spec, input_amps);
  Trajectory traj = evolve(run_spec, schedule, psi0, config, noise);

  result.fidelity = fidelity(target, traj.final_state());
  result.norm_drift = traj.norm_drift;
  result.times = std::move(traj.times);
  result.states = std::move(traj.states);

  result.branch_coefficients = Eigen::VectorXcd::Zero(block.size);
  for (int i = 0; i < block.size; ++i)
    for (int r = 0; r < block.size; ++r)
      result.branch_coefficients(i) += block.modes(r, i) * input_amps(r);

  result.branch_phases = Eigen::VectorXd(block.size);
  bool uniform = true;
  Complex phase0 = 0.0;
  for (int i = 0; i < block.size; ++i) {
    const double raw = block.energies(i) * result.total_time;
    result.branch_phases(i) = std::remainder(raw, 2.0 * kPi);
    const Complex factor = std::exp(Complex(0.0, -raw));
    if (i == 0) phase0 = factor;
    else if (std::abs(factor - phase0) > 1e-9) uniform = false;
  }
  if (uniform) result.uniform_branch_phase = phase0;
  return result;
}

}  // namespace topochain
