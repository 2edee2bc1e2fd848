#include "topochain/disorder.hpp"

namespace topochain {

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (stream_index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

BondNoise::BondNoise(std::uint64_t master_seed, std::uint64_t repetition, double sigma,
                     std::size_t bond_count, double redraw_interval)
    : rng_(derive_stream_seed(master_seed, repetition)),
      normal_(0.0, 1.0),
      offsets_(bond_count, 0.0),
      sigma_(sigma),
      redraw_interval_(redraw_interval) {}

const std::vector<double>& BondNoise::redraw() {
  for (double& x : offsets_) x = sigma_ * normal_(rng_);
  drawn_ = true;
  return offsets_;
}

std::span<const double> BondNoise::at_time(double t, double dt) {
  if (sigma_ == 0.0) return {};
  if (!drawn_ || redraw_interval_ <= dt || t >= next_redraw_) {
    redraw();
    next_redraw_ = (redraw_interval_ <= dt) ? t : t + redraw_interval_;
  }
  return offsets_;
}

}  // namespace topochain
