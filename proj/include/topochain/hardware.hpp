#ifndef TOPOCHAIN_HARDWARE_HPP
#define TOPOCHAIN_HARDWARE_HPP

#include <stdexcept>
#include <vector>

namespace topochain {

// Multiple junction-phase solutions exist (strong-coupling loop); reports all
// roots found in the branch around phi_ext.
struct MultivaluedPhaseError : std::runtime_error {
  MultivaluedPhaseError(const std::string& message, std::vector<double> roots)
      : std::runtime_error(message), roots(std::move(roots)) {}
  std::vector<double> roots;
};

// Junction-coupled transmon pair, SI units at this boundary (henry, rad/s).
struct CouplerParams {
  double gate_inductance = 300e-12;            // L_g
  double coupler_inductance = 1e-9;            // L_T (zero bias)
  double qubit_inductance = 8e-9;              // L_J
  double qubit_frequency = 2.0 * 3.14159265358979323846 * 5.5e9;  // omega_q
};

// Root of phi_ext = delta + (2 L_g / L_T) sin(delta).  Bisection on the
// guaranteed bracket [phi_ext - 2Lg/LT, phi_ext + 2Lg/LT] followed by a
// Newton polish; residual <= 1e-12 rad.  In the non-monotone regime
// (2Lg/LT >= 1) all roots in the bracket are located and a multivalued error
// is raised when there is more than one.
double solve_junction_phase(const CouplerParams& params, double phi_ext);

// g = -[L_g^2 cos(delta) / (2 (L_J + L_g)(L_T + 2 L_g cos(delta)))] omega_q,
// in rad/s.  Throws std::domain_error if the denominator vanishes.
double flux_to_coupling(const CouplerParams& params, double phi_ext);

struct FluxSweepRow {
  double phi_ext = 0.0;   // rad
  double delta = 0.0;     // rad
  double coupling = 0.0;  // rad/s
};

std::vector<FluxSweepRow> flux_sweep(const CouplerParams& params, double lo, double hi,
                                     int points);

}  // namespace topochain

#endif
