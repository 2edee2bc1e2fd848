#ifndef TOPOCHAIN_SPECTRA_HPP
#define TOPOCHAIN_SPECTRA_HPP

#include <vector>

#include "topochain/chain.hpp"
#include "topochain/edge.hpp"

namespace topochain {

// Full spectra sampled at uniformly spaced omega*t in [0, pi].  Eigenvalues
// are sorted ascending per sample; eigenvectors are sign-continuous along the
// sweep (overlap with the previous sample non-negative after the sign fix).
// A level is edge-flagged when its eigenvalue matches a transport-block
// eigenvalue within 1e-6 of the block scale.
struct SpectrumSweep {
  ChainSpec spec;
  double frequency = 0.0;                    // omega used for the time axis
  std::vector<double> times;                 // t_k = (omega t)_k / omega
  std::vector<double> phases;                // (omega t)_k in [0, pi]
  std::vector<Eigen::VectorXd> energies;     // ascending, one per sample
  std::vector<Eigen::MatrixXd> vectors;      // columns follow energies
  std::vector<std::vector<int>> edge_levels; // indices of edge-flagged levels
  Eigen::VectorXd block_energies;            // reference edge energies (descending)

  int sample_count() const { return static_cast<int>(times.size()); }
};

SpectrumSweep sweep_spectrum(const ChainSpec& spec, int samples);

// |<Phi_r| dH/dt |Phi_l> / (E_r - E_l)| per sample.  Samples where the pair
// is (numerically) degenerate, or where either level sits inside a degenerate
// cluster, are reported as NaN and counted: degenerate eigenvectors are
// basis-ambiguous and the raw matrix element jumps discontinuously there.
struct AdiabaticitySeries {
  std::vector<double> times;
  std::vector<double> values;  // NaN where flagged
  int flagged_count = 0;

  double max_unflagged() const;
};

// Levels are 0-based indices into the ascending spectrum.  With
// project_degenerate set, a sample whose r-level sits inside a degenerate
// cluster reports the basis-invariant value
// ||P_cluster dH/dt |Phi_l>|| / |E_r - E_l| instead of NaN (smooth curves for
// plotting); samples with E_r ~ E_l or a degenerate l stay flagged.
AdiabaticitySeries adiabaticity_metric(const SpectrumSweep& sweep, int level_l, int level_r,
                                       bool project_degenerate = false);

// max_t |<Phi|dPhi/dt>| for one level, estimated by centered differences at
// the half-steps; identically zero (round-off) for the real gauge used here.
double geometric_phase_check(const SpectrumSweep& sweep, int level);

// Same estimator over an arbitrary (possibly complex-gauged) state series
// sampled with uniform spacing dt.
double max_phase_rate(const std::vector<State>& states, double dt);

}  // namespace topochain

#endif
