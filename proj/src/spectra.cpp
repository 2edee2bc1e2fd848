#include "topochain/spectra.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace topochain {

namespace {

double block_scale(const Eigen::VectorXd& block_energies) {
  return std::max(1.0, block_energies.cwiseAbs().maxCoeff());
}

}  // namespace

SpectrumSweep sweep_spectrum(const ChainSpec& spec, int samples) {
  validate(spec);
  if (samples < 2) throw std::invalid_argument("samples must be >= 2");

  SpectrumSweep sweep;
  sweep.spec = spec;
  sweep.frequency = spec.drive_frequency;
  const TransportBlock block = transport_block_eigensystem(spec.intra_couplings);
  sweep.block_energies = block.energies;
  const double tol = 1e-6 * block_scale(block.energies);

  const CouplingSchedule schedule = schedule_for(spec);
  sweep.times.reserve(samples);
  sweep.phases.reserve(samples);
  sweep.energies.reserve(samples);
  sweep.vectors.reserve(samples);
  sweep.edge_levels.reserve(samples);

  Eigen::SelfAdjointEigenSolver<RealMatrix> solver;
  for (int k = 0; k < samples; ++k) {
    const double phase = kPi * k / (samples - 1);
    const double t = phase / spec.drive_frequency;
    const auto [v, w] = schedule.value(t);
    solver.compute(build_hamiltonian(spec, v, w));
    Eigen::VectorXd energy = solver.eigenvalues();
    Eigen::MatrixXd vec = solver.eigenvectors();

    if (k == 0) {
      // Deterministic start gauge: largest-magnitude component positive.
      for (int i = 0; i < vec.cols(); ++i) {
        int arg = 0;
        vec.col(i).cwiseAbs().maxCoeff(&arg);
        if (vec(arg, i) < 0.0) vec.col(i) = -vec.col(i);
      }
    } else {
      const Eigen::MatrixXd& prev = sweep.vectors.back();
      for (int i = 0; i < vec.cols(); ++i)
        if (prev.col(i).dot(vec.col(i)) < 0.0) vec.col(i) = -vec.col(i);
    }

    std::vector<int> edges;
    for (int i = 0; i < energy.size(); ++i)
      for (int j = 0; j < sweep.block_energies.size(); ++j)
        if (std::abs(energy(i) - sweep.block_energies(j)) <= tol) {
          edges.push_back(i);
          break;
        }

    sweep.phases.push_back(phase);
    sweep.times.push_back(t);
    sweep.energies.push_back(std::move(energy));
    sweep.vectors.push_back(std::move(vec));
    sweep.edge_levels.push_back(std::move(edges));
  }
  return sweep;
}

double AdiabaticitySeries::max_unflagged() const {
  double mx = 0.0;
  for (double x : values)
    if (std::isfinite(x)) mx = std::max(mx, x);
  return mx;
}

AdiabaticitySeries adiabaticity_metric(const SpectrumSweep& sweep, int level_l, int level_r,
                                       bool project_degenerate) {
  if (level_l == level_r) throw std::invalid_argument("levels l and r must differ");
  const int dim = sweep.spec.site_count();
  if (level_l < 0 || level_l >= dim || level_r < 0 || level_r >= dim)
    throw std::out_of_range("level out of range");

  const double tol = 1e-10 * block_scale(sweep.block_energies);
  const CouplingSchedule schedule = schedule_for(sweep.spec);
  AdiabaticitySeries series;
  series.times = sweep.times;
  series.values.reserve(sweep.sample_count());

  for (int k = 0; k < sweep.sample_count(); ++k) {
    const Eigen::VectorXd& e = sweep.energies[k];
    auto clustered = [&](int level) {
      return (level > 0 && std::abs(e(level) - e(level - 1)) < tol) ||
             (level + 1 < dim && std::abs(e(level) - e(level + 1)) < tol);
    };
    const bool r_clustered = clustered(level_r);
    const bool singular =
        std::abs(e(level_r) - e(level_l)) < tol || clustered(level_l) ||
        (r_clustered && !project_degenerate);
    if (singular) {
      series.values.push_back(std::numeric_limits<double>::quiet_NaN());
      ++series.flagged_count;
      continue;
    }
    const RealMatrix dh = drive_derivative(sweep.spec, schedule, sweep.times[k]);
    const Eigen::VectorXd driven = dh * sweep.vectors[k].col(level_l);
    if (r_clustered) {
      // Basis-invariant weight of the whole degenerate cluster.
      double sumsq = 0.0;
      for (int j = 0; j < dim; ++j)
        if (std::abs(e(j) - e(level_r)) < tol) {
          const double elem = sweep.vectors[k].col(j).dot(driven);
          sumsq += elem * elem;
        }
      series.values.push_back(std::sqrt(sumsq) / std::abs(e(level_r) - e(level_l)));
    } else {
      const double elem = sweep.vectors[k].col(level_r).dot(driven);
      series.values.push_back(std::abs(elem / (e(level_r) - e(level_l))));
    }
  }
  return series;
}

double max_phase_rate(const std::vector<State>& states, double dt) {
  if (states.size() < 2) throw std::invalid_argument("need at least two samples");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  double mx = 0.0;
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    const Complex val = (states[k] + states[k + 1]).dot(states[k + 1] - states[k]) / (2.0 * dt);
    mx = std::max(mx, std::abs(val));
  }
  return mx;
}

double geometric_phase_check(const SpectrumSweep& sweep, int level) {
  if (sweep.sample_count() < 2) throw std::invalid_argument("sweep too short");
  std::vector<State> series;
  series.reserve(sweep.sample_count());
  for (const Eigen::MatrixXd& vec : sweep.vectors)
    series.push_back(vec.col(level).cast<Complex>());
  const double dt = sweep.times[1] - sweep.times[0];
  return max_phase_rate(series, dt);
}

}  // namespace topochain
