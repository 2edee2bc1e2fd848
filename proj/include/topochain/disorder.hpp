#ifndef TOPOCHAIN_DISORDER_HPP
#define TOPOCHAIN_DISORDER_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace topochain {

// Stochastic perturbation description for robustness ensembles.
// coupling_sigma perturbs every bond (units of g0); timing_sigma perturbs the
// total evolution time (units of the evolution circle T).
struct DisorderModel {
  double coupling_sigma = 0.0;   // xi
  double timing_sigma = 0.0;     // eta
  double redraw_interval = 0.0;  // integration time between fresh draws; 0 = every step
  std::uint64_t seed = 0;
  int repetitions = 100;
};

// splitmix64-style mix; derives independent per-repetition stream seeds.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream_index);

// Deterministic Gaussian offsets for every bond of a chain.  Each repetition
// owns one stream seeded by (master seed, repetition index); within a stream,
// draws are consumed redraw-by-redraw, bond-major.  Results are identical no
// matter how repetitions are scheduled across workers.
class BondNoise {
 public:
  BondNoise(std::uint64_t master_seed, std::uint64_t repetition, double sigma,
            std::size_t bond_count, double redraw_interval = 0.0);

  // Offsets to use for the step starting at time t with step size dt.
  // A fresh draw happens when t crosses the next redraw boundary (or on every
  // call when the redraw interval does not exceed dt).
  std::span<const double> at_time(double t, double dt);

  const std::vector<double>& redraw();
  const std::vector<double>& offsets() const { return offsets_; }
  double sigma() const { return sigma_; }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
  std::vector<double> offsets_;
  double sigma_;
  double redraw_interval_;
  double next_redraw_ = 0.0;
  bool drawn_ = false;
};

}  // namespace topochain

#endif
