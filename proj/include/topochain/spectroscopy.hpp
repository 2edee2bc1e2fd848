#ifndef TOPOCHAIN_SPECTROSCOPY_HPP
#define TOPOCHAIN_SPECTROSCOPY_HPP

#include <stdexcept>
#include <utility>

#include "topochain/chain.hpp"

namespace topochain {

// Probe drive hits a dark resonance: the steady-state system is singular.
struct ProbePoleError : std::runtime_error {
  ProbePoleError(const std::string& message, double eigenvalue)
      : std::runtime_error(message), eigenvalue(eigenvalue) {}
  double eigenvalue;
};

struct PeakDetectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Waveguide-probe arrangement.  All rates in units of g0.  The probe drive
// strength cancels in the reflection and is kept only for completeness.
struct ProbeSetup {
  double waveguide_decay = 2.5;      // kappa
  Eigen::VectorXd qubit_decay;       // Gamma_x, length L
  Eigen::VectorXd couplings;         // G_x, length L
  double waveguide_detuning = 0.0;   // Delta_c
  double drive = 1.0;                // epsilon
};

// Default arrangement: the waveguide couples to the first transport row only
// (G0 on every A_{1,m}, zero elsewhere), uniform qubit decay.  Coupling the
// probe to a full symmetric transport column would leave the antisymmetric
// edge branches dark.
ProbeSetup default_probe(const ChainSpec& spec, double kappa, double gamma, double g0 = 0.2);

// Steady-state input-output response at qubit detuning dq:
//   r_p = kappa / (kappa + i Delta_c + G^T M^{-1} G),  t_p = 1 - r_p,
// with M = i(dq I + Omega) + diag(Gamma).  Throws ProbePoleError when M is
// singular (a dark eigenvalue hit with zero decay), reporting the offender.
std::pair<Complex, Complex> steady_state_response(const ProbeSetup& setup,
                                                  const RealMatrix& omega_matrix, double dq);

struct ReflectionPeak {
  double detuning = 0.0;        // dq at the peak
  double deviation = 0.0;       // |r_p| contrast against the baseline
  double matched_energy = 0.0;  // nearest chain eigenvalue (as -dq)
  bool edge = false;            // matched an in-gap (transport-block) level
};

struct ReflectionScan {
  std::vector<double> detunings;
  std::vector<Complex> reflection;
  double baseline = 0.0;  // median |r_p|
  std::vector<ReflectionPeak> peaks;
};

struct ScanGrid {
  double lo = -4.0;
  double hi = 4.0;
  int points = 2001;
};

ScanGrid default_grid(const ChainSpec& spec);

// |r_p| over the detuning grid at fixed (v, w), plus detected spectral
// features.  Features are local maxima of the deviation from the baseline
// with prominence at least half the full contrast and an absolute floor of
// 0.05 (over-broadened spectra yield no detections rather than noise peaks).
ReflectionScan reflection_spectrum_scan(const ProbeSetup& setup, const ChainSpec& spec,
                                        double v, double w, const ScanGrid& grid);

// Separation of the two outermost edge-attributed peaks (2g for N=2
// chains, 2*sqrt(2)*g for N=3).  Throws PeakDetectionError with fewer than
// two edge peaks.
double edge_gap_from_spectrum(const ReflectionScan& scan);

}  // namespace topochain

#endif
