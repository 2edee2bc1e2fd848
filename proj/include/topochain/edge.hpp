#ifndef TOPOCHAIN_EDGE_HPP
#define TOPOCHAIN_EDGE_HPP

#include <optional>
#include <span>
#include <stdexcept>

#include "topochain/chain.hpp"

namespace topochain {

// Thrown when the transport block has (numerically) coincident eigenvalues;
// edge-state identity is ambiguous there, so we refuse to pick a basis.
struct DegenerateBlockError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Eigensystem of the N x N zero-diagonal tridiagonal block formed by the
// intra-cell couplings.  Its eigenvalues are the in-gap edge energies of the
// full chain; its eigenvectors give the per-cell amplitude pattern of each
// edge branch.
struct TransportBlock {
  int size = 0;                      // N
  std::vector<double> couplings;     // g_1..g_{N-1}
  Eigen::VectorXd energies;          // descending
  Eigen::MatrixXd modes;             // column i <-> energies(i); real, orthonormal,
                                     // first nonzero component positive
};

TransportBlock transport_block_eigensystem(std::span<const double> couplings);

// Edge eigenstate of the full finite chain: cell-m transport amplitudes are
// proportional to lambda^m times the branch eigenvector, with zero weight on
// every mediator site.  lambda = -v/w (IEEE -inf when w = 0).
struct EdgeState {
  int branch = 0;        // index into TransportBlock (descending energies)
  double energy = 0.0;   // block eigenvalue
  double lambda = 0.0;   // -v/w
  State amplitudes;      // normalized over the whole chain
};

// Powers of lambda are evaluated on a log scale and rescaled by the largest
// cell before normalization, so |lambda| anywhere in [0, inf] is safe.
// v = 0 and w = 0 short-circuit to the exact end-localized limits.
EdgeState edge_wavefunction(const ChainSpec& spec, double v, double w, int branch);

// Smallest T > 0 with E_i * T = 0 (mod 2pi) for every nonzero block
// eigenvalue.  Eigenvalue ratios are accepted as rational p/q with q <= 64
// and residual < 1e-9; otherwise (or with no nonzero eigenvalue) there is no
// common period and nullopt is returned.
std::optional<double> common_period(const TransportBlock& block);

// Conjugates the N=2 chain into the per-cell (A1 +- A2)/sqrt(2) basis and
// compares against the expected two-branch pattern: on-site +-g on the two
// branches, v/sqrt(2) and w/sqrt(2) bonds through the mediators, no direct
// branch-branch bonds.
struct RenormalizedBasisReport {
  double max_deviation = 0.0;       // |conjugated - expected| pattern, max entry
  double spectrum_deviation = 0.0;  // sorted-eigenvalue set mismatch
  RealMatrix conjugated;            // the rotated Hamiltonian, for inspection
};

RenormalizedBasisReport renormalized_basis_check(const ChainSpec& spec, double v, double w);

}  // namespace topochain

#endif
