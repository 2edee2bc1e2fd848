#include "topochain/edge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace topochain {

TransportBlock transport_block_eigensystem(std::span<const double> couplings) {
  const int n = static_cast<int>(couplings.size()) + 1;
  for (double g : couplings)
    if (!(g > 0.0)) throw std::invalid_argument("transport couplings must be positive");

  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < n - 1; ++r) {
    block(r, r + 1) = couplings[r];
    block(r + 1, r) = couplings[r];
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
  TransportBlock out;
  out.size = n;
  out.couplings.assign(couplings.begin(), couplings.end());
  out.energies = solver.eigenvalues().reverse();
  out.modes = solver.eigenvectors().rowwise().reverse();

  const double scale = std::max(1.0, out.energies.cwiseAbs().maxCoeff());
  for (int i = 0; i + 1 < n; ++i)
    if (std::abs(out.energies(i) - out.energies(i + 1)) < 1e-12 * scale)
      throw DegenerateBlockError("transport block has degenerate eigenvalues");

  // Gauge: first nonzero component positive.
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < n; ++r) {
      if (std::abs(out.modes(r, i)) > 1e-12) {
        if (out.modes(r, i) < 0.0) out.modes.col(i) = -out.modes.col(i);
        break;
      }
    }
  }
  return out;
}

EdgeState edge_wavefunction(const ChainSpec& spec, double v, double w, int branch) {
  validate(spec);
  if (v < 0.0 || w < 0.0) throw std::invalid_argument("couplings v, w must be non-negative");
  if (v == 0.0 && w == 0.0)
    throw std::invalid_argument("edge state undefined for v = w = 0");
  const TransportBlock block = transport_block_eigensystem(spec.intra_couplings);
  if (branch < 0 || branch >= block.size) throw std::out_of_range("branch out of range");

  const int cells = spec.cell_count;
  Eigen::VectorXd cell_weight = Eigen::VectorXd::Zero(cells);
  if (v == 0.0) {
    cell_weight(0) = 1.0;
  } else if (w == 0.0) {
    cell_weight(cells - 1) = 1.0;
  } else {
    const double log_ratio = std::log(v) - std::log(w);
    double peak = -std::numeric_limits<double>::infinity();
    for (int m = 1; m <= cells; ++m) peak = std::max(peak, m * log_ratio);
    for (int m = 1; m <= cells; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // lambda = -v/w is negative
      cell_weight(m - 1) = sign * std::exp(m * log_ratio - peak);
    }
  }

  EdgeState out;
  out.branch = branch;
  out.energy = block.energies(branch);
  out.lambda = -v / w;
  out.amplitudes = State::Zero(spec.site_count());
  for (int m = 1; m <= cells; ++m)
    for (int r = 1; r <= spec.transport_count; ++r)
      out.amplitudes(transport_site(spec, r, m)) = cell_weight(m - 1) * block.modes(r - 1, branch);
  out.amplitudes /= out.amplitudes.norm();
  return out;
}

std::optional<double> common_period(const TransportBlock& block) {
  const double scale = std::max(1.0, block.energies.cwiseAbs().maxCoeff());
  std::vector<double> magnitudes;
  for (int i = 0; i < block.energies.size(); ++i) {
    const double e = std::abs(block.energies(i));
    if (e > 1e-9 * scale) magnitudes.push_back(e);
  }
  if (magnitudes.empty()) return std::nullopt;
  const double e_min = *std::min_element(magnitudes.begin(), magnitudes.end());

  long long q_lcm = 1;
  for (double e : magnitudes) {
    const double ratio = e / e_min;
    bool matched = false;
    for (long long q = 1; q <= 64; ++q) {
      const double p = std::round(ratio * static_cast<double>(q));
      if (p < 1.0) continue;
      if (std::abs(ratio - p / static_cast<double>(q)) < 1e-9) {
        q_lcm = std::lcm(q_lcm, q);
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  return 2.0 * kPi * static_cast<double>(q_lcm) / e_min;
}

RenormalizedBasisReport renormalized_basis_check(const ChainSpec& spec, double v, double w) {
  validate(spec);
  if (spec.transport_count != 2)
    throw std::invalid_argument("renormalized basis check supports N = 2 only");
  const double g = spec.intra_couplings[0];
  const int dim = spec.site_count();
  const RealMatrix h = build_hamiltonian(spec, v, w);

  // Orthogonal change of basis: per cell, A1 slot -> (A1+A2)/sqrt(2),
  // A2 slot -> (A1-A2)/sqrt(2); mediators untouched.
  RealMatrix q = RealMatrix::Zero(dim, dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int m = 1; m <= spec.cell_count; ++m) {
    const int a1 = transport_site(spec, 1, m);
    const int a2 = transport_site(spec, 2, m);
    q(a1, a1) = inv_sqrt2;
    q(a2, a1) = inv_sqrt2;
    q(a1, a2) = inv_sqrt2;
    q(a2, a2) = -inv_sqrt2;
  }
  for (int m = 1; m <= spec.cell_count - 1; ++m) {
    const int b = mediator_site(spec, m);
    q(b, b) = 1.0;
  }

  RenormalizedBasisReport report;
  report.conjugated = q.transpose() * h * q;

  RealMatrix expected = RealMatrix::Zero(dim, dim);
  for (int m = 1; m <= spec.cell_count; ++m) {
    expected(transport_site(spec, 1, m), transport_site(spec, 1, m)) = g;
    expected(transport_site(spec, 2, m), transport_site(spec, 2, m)) = -g;
  }
  for (int m = 1; m <= spec.cell_count - 1; ++m) {
    const int b = mediator_site(spec, m);
    for (int slot : {transport_site(spec, 1, m), transport_site(spec, 2, m)}) {
      expected(slot, b) = v * inv_sqrt2;
      expected(b, slot) = v * inv_sqrt2;
    }
    for (int slot : {transport_site(spec, 1, m + 1), transport_site(spec, 2, m + 1)}) {
      expected(slot, b) = w * inv_sqrt2;
      expected(b, slot) = w * inv_sqrt2;
    }
  }
  report.max_deviation = (report.conjugated - expected).cwiseAbs().maxCoeff();

  Eigen::SelfAdjointEigenSolver<RealMatrix> original(h);
  Eigen::SelfAdjointEigenSolver<RealMatrix> rotated(report.conjugated);
  report.spectrum_deviation =
      (original.eigenvalues() - rotated.eigenvalues()).cwiseAbs().maxCoeff();
  return report;
}

}  // namespace topochain
