#ifndef TOPOCHAIN_ENSEMBLES_HPP
#define TOPOCHAIN_ENSEMBLES_HPP

#include <cstdint>

#include "topochain/dynamics.hpp"

namespace topochain {

struct EnsembleOptions {
  double circles = 10.0;
  int steps_per_circle = 1000;
  double redraw_interval = 0.0;  // 0 = fresh bond noise every step
  Integrator integrator = Integrator::ExactStepExponential;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct EnsembleResult {
  std::vector<double> fidelities;  // ordered by repetition index
  double mean = 0.0;               // arithmetic mean, exactly
  double stddev = 0.0;             // sample standard deviation
  // Parameter echo.
  double sigma = 0.0;     // xi (units g0) or eta (units T)
  double circles = 0.0;
  int transport_count = 0;
  int cell_count = 0;
  std::uint64_t seed = 0;
  int rejected_draws = 0;  // timing draws redrawn because t_f + dt <= 0
};

// Repetitions run with independent per-repetition noise streams and are
// embarrassingly parallel; results are collected by repetition index, so a
// fixed seed gives bitwise-identical fidelity lists at any thread count.
EnsembleResult coupling_disorder_ensemble(const ChainSpec& spec, const State& input_amps,
                                          double xi, int repetitions, std::uint64_t seed,
                                          const EnsembleOptions& options = {});

// Clean evolutions of length t_f + dt with dt ~ N(0, (eta T)^2); draws making
// the total time non-positive are rejected and redrawn (counted).
EnsembleResult timing_disorder_ensemble(const ChainSpec& spec, const State& input_amps,
                                        double eta, int repetitions, std::uint64_t seed,
                                        const EnsembleOptions& options = {});

struct CirclesPoint {
  double circles = 0.0;
  double fidelity = 0.0;
};

// Clean transfer fidelity per circle count.
std::vector<CirclesPoint> circles_scan(const ChainSpec& spec, const State& input_amps,
                                       const std::vector<double>& circle_counts,
                                       const EnsembleOptions& options = {});

// Minimal deterministic work-sharing loop used by the ensembles.
void parallel_for(int count, unsigned threads, const std::function<void(int)>& body);

}  // namespace topochain

#endif
