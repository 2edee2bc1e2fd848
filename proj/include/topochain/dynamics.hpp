#ifndef TOPOCHAIN_DYNAMICS_HPP
#define TOPOCHAIN_DYNAMICS_HPP

#include <optional>
#include <stdexcept>

#include "topochain/chain.hpp"
#include "topochain/disorder.hpp"
#include "topochain/edge.hpp"

namespace topochain {

struct NoCommonPeriodError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Integrator {
  ExactStepExponential,  // per-step eigendecomposition of the midpoint H
  RungeKutta4,           // classical four-stage step on the frozen midpoint H
};

// Both integrators evaluate H once per step, at the step midpoint; the exact
// integrator is unitary to round-off, RK4 reproduces the same per-step
// propagator to fourth order in the step size.
struct EvolutionConfig {
  double total_time = 0.0;  // t_f, units 1/g0
  int steps = 0;
  Integrator integrator = Integrator::ExactStepExponential;
  int record_stride = 0;     // 0 = ceil(steps/500)
  bool allow_large_steps = false;  // waive the dt <= T/500 guard (with eyes open)
};

struct Trajectory {
  std::vector<double> times;   // recorded instants, starting at t = 0
  std::vector<State> states;   // recorded states (final state always included)
  double norm_drift = 0.0;     // | ||psi(t_f)|| - 1 |

  const State& final_state() const { return states.back(); }
};

// e^{-i h dt} psi through the eigendecomposition of the real symmetric h.
State exact_step(const RealMatrix& h, const State& psi, double dt);

// Time-ordered product of per-step propagators under the drive schedule.
// When noise is given, fresh Gaussian bond offsets enter H per its redraw
// policy.  The state is never renormalized: unitarity is a property under
// test, and the map stays exactly linear.
Trajectory evolve(const ChainSpec& spec, const CouplingSchedule& schedule, const State& psi0,
                  const EvolutionConfig& config, BondNoise* noise = nullptr);

// Closed-form adiabatic solution: the input decomposed over edge branches,
// each branch carrying its dynamical phase e^{-i E_i t} on the instantaneous
// edge wavefunction.  The geometric phase vanishes in this real gauge.
State analytic_adiabatic_state(const ChainSpec& spec, const CouplingSchedule& schedule,
                               double t, const State& input_amps);

// |<a|b>|
double fidelity(const State& a, const State& b);

struct TransferOptions {
  int steps_per_circle = 1000;
  Integrator integrator = Integrator::ExactStepExponential;
  int record_stride = 0;
  bool allow_large_steps = false;
};

struct TransferResult {
  double fidelity = 0.0;            // vs the perfectly transferred state
  double period = 0.0;              // T, the evolution circle
  double frequency = 0.0;           // omega = pi / (n T)
  double total_time = 0.0;          // t_f = n T
  double norm_drift = 0.0;
  Eigen::VectorXd branch_energies;  // E_i (descending)
  Eigen::VectorXcd branch_coefficients;  // decomposition of the input
  Eigen::VectorXd branch_phases;         // E_i t_f mod 2pi
  // Common phase factor e^{-i E_i t_f} when all branches agree (1 at integral
  // circles; -1 at half-integral circles of a symmetric two-branch block).
  std::optional<Complex> uniform_branch_phase;
  std::vector<double> times;
  std::vector<State> states;

  const State& final_state() const { return states.back(); }
};

// Full protocol run: omega is derived from the circle count via
// t_f = pi/omega = n T, the input is encoded on the left cell, evolved across
// the sweep and scored against the right-cell target.
TransferResult transfer_experiment(const ChainSpec& spec, const State& input_amps,
                                   double circles, const TransferOptions& options = {},
                                   BondNoise* noise = nullptr, double extra_time = 0.0);

}  // namespace topochain

#endif
