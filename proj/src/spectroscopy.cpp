#include "topochain/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "topochain/edge.hpp"

namespace topochain {

ProbeSetup default_probe(const ChainSpec& spec, double kappa, double gamma, double g0) {
  validate(spec);
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (gamma < 0.0) throw std::invalid_argument("gamma must be non-negative");
  ProbeSetup setup;
  setup.waveguide_decay = kappa;
  setup.qubit_decay = Eigen::VectorXd::Constant(spec.site_count(), gamma);
  setup.couplings = Eigen::VectorXd::Zero(spec.site_count());
  for (int m = 1; m <= spec.cell_count; ++m) setup.couplings(transport_site(spec, 1, m)) = g0;
  return setup;
}

std::pair<Complex, Complex> steady_state_response(const ProbeSetup& setup,
                                                  const RealMatrix& omega_matrix, double dq) {
  const Eigen::Index dim = omega_matrix.rows();
  if (omega_matrix.cols() != dim) throw std::invalid_argument("omega matrix must be square");
  if (setup.qubit_decay.size() != dim || setup.couplings.size() != dim)
    throw std::invalid_argument("probe setup does not match the chain dimension");
  if (!(setup.waveguide_decay > 0.0)) throw std::invalid_argument("kappa must be positive");
  for (Eigen::Index x = 0; x < dim; ++x)
    if (setup.qubit_decay(x) < 0.0) throw std::invalid_argument("qubit decays must be >= 0");

  Eigen::MatrixXcd m = Complex(0.0, 1.0) * omega_matrix.cast<Complex>();
  for (Eigen::Index x = 0; x < dim; ++x) m(x, x) += Complex(setup.qubit_decay(x), dq);

  const Eigen::VectorXcd g = setup.couplings.cast<Complex>();
  const Eigen::VectorXcd x = m.partialPivLu().solve(g);
  const double g_norm = setup.couplings.norm();
  if (!x.allFinite() || (m * x - g).norm() > 1e-8 * std::max(1.0, g_norm)) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(omega_matrix);
    double offender = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double dist = std::abs(solver.eigenvalues()(j) + dq);
      if (dist < best) {
        best = dist;
        offender = solver.eigenvalues()(j);
      }
    }
    throw ProbePoleError("steady-state system singular near a dark resonance", offender);
  }

  Complex coupling_term = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) coupling_term += setup.couplings(i) * x(i);
  const Complex denom =
      setup.waveguide_decay + Complex(0.0, setup.waveguide_detuning) + coupling_term;
  const Complex r_p = setup.waveguide_decay / denom;
  return {Complex(1.0) - r_p, r_p};
}

ScanGrid default_grid(const ChainSpec& spec) {
  const TransportBlock block = transport_block_eigensystem(spec.intra_couplings);
  const double span = 4.0 * std::max(1.0, block.energies.cwiseAbs().maxCoeff());
  return {-span, span, 2001};
}

ReflectionScan reflection_spectrum_scan(const ProbeSetup& setup, const ChainSpec& spec,
                                        double v, double w, const ScanGrid& grid) {
  if (grid.points < 3) throw std::invalid_argument("grid needs at least 3 points");
  if (!(grid.hi > grid.lo)) throw std::invalid_argument("grid bounds inverted");
  const RealMatrix omega_matrix = build_hamiltonian(spec, v, w);

  ReflectionScan scan;
  scan.detunings.resize(grid.points);
  scan.reflection.resize(grid.points);
  for (int i = 0; i < grid.points; ++i) {
    scan.detunings[i] = grid.lo + (grid.hi - grid.lo) * i / (grid.points - 1);
    scan.reflection[i] = steady_state_response(setup, omega_matrix, scan.detunings[i]).second;
  }

  std::vector<double> magnitude(grid.points);
  for (int i = 0; i < grid.points; ++i) magnitude[i] = std::abs(scan.reflection[i]);
  std::vector<double> sorted = magnitude;
  std::nth_element(sorted.begin(), sorted.begin() + grid.points / 2, sorted.end());
  scan.baseline = sorted[grid.points / 2];

  std::vector<double> deviation(grid.points);
  for (int i = 0; i < grid.points; ++i) deviation[i] = std::abs(magnitude[i] - scan.baseline);
  const auto [lo_it, hi_it] = std::minmax_element(deviation.begin(), deviation.end());
  const double threshold = std::max(0.5 * (*hi_it - *lo_it), 0.05);

  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(omega_matrix);
  const TransportBlock block = transport_block_eigensystem(spec.intra_couplings);
  const double scale = std::max(1.0, block.energies.cwiseAbs().maxCoeff());

  for (int i = 1; i + 1 < grid.points; ++i) {
    if (deviation[i] < threshold) continue;
    if (!(deviation[i] > deviation[i - 1] && deviation[i] >= deviation[i + 1])) continue;
    ReflectionPeak peak;
    peak.detuning = scan.detunings[i];
    peak.deviation = deviation[i];
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j) {
      const double dist = std::abs(peak.detuning + solver.eigenvalues()(j));
      if (dist < best) {
        best = dist;
        peak.matched_energy = solver.eigenvalues()(j);
      }
    }
    if (best <= 0.05 * scale) {
      for (Eigen::Index j = 0; j < block.energies.size(); ++j)
        if (std::abs(peak.matched_energy - block.energies(j)) <= 1e-6 * scale) {
          peak.edge = true;
          break;
        }
    }
    scan.peaks.push_back(peak);
  }
  return scan;
}

double edge_gap_from_spectrum(const ReflectionScan& scan) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  int count = 0;
  for (const ReflectionPeak& peak : scan.peaks) {
    if (!peak.edge) continue;
    lo = std::min(lo, peak.detuning);
    hi = std::max(hi, peak.detuning);
    ++count;
  }
  if (count < 2)
    throw PeakDetectionError("fewer than two edge-attributed peaks detected");
  return hi - lo;
}

}  // namespace topochain
