#include "topochain/ensembles.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

namespace topochain {

void parallel_for(int count, unsigned threads, const std::function<void(int)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(1, count)));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

void finish_stats(EnsembleResult& result) {
  const int n = static_cast<int>(result.fidelities.size());
  double sum = 0.0;
  for (double f : result.fidelities) sum += f;
  result.mean = sum / n;
  if (n > 1) {
    double ss = 0.0;
    for (double f : result.fidelities) ss += (f - result.mean) * (f - result.mean);
    result.stddev = std::sqrt(ss / (n - 1));
  }
}

TransferOptions to_transfer_options(const EnsembleOptions& options) {
  TransferOptions t;
  t.steps_per_circle = options.steps_per_circle;
  t.integrator = options.integrator;
  t.record_stride = 1 << 30;  // keep only the final state
  return t;
}

}  // namespace

EnsembleResult coupling_disorder_ensemble(const ChainSpec& spec, const State& input_amps,
                                          double xi, int repetitions, std::uint64_t seed,
                                          const EnsembleOptions& options) {
  if (xi < 0.0) throw std::invalid_argument("xi must be non-negative");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  EnsembleResult result;
  result.fidelities.resize(repetitions);
  result.sigma = xi;
  result.circles = options.circles;
  result.transport_count = spec.transport_count;
  result.cell_count = spec.cell_count;
  result.seed = seed;

  const std::size_t bonds = bond_count(spec);
  const TransferOptions transfer = to_transfer_options(options);
  parallel_for(repetitions, options.threads, [&](int rep) {
    BondNoise noise(seed, static_cast<std::uint64_t>(rep), xi, bonds, options.redraw_interval);
    result.fidelities[rep] =
        transfer_experiment(spec, input_amps, options.circles, transfer, &noise).fidelity;
  });
  finish_stats(result);
  return result;
}

EnsembleResult timing_disorder_ensemble(const ChainSpec& spec, const State& input_amps,
                                        double eta, int repetitions, std::uint64_t seed,
                                        const EnsembleOptions& options) {
  if (eta < 0.0) throw std::invalid_argument("eta must be non-negative");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  const auto period = common_period(transport_block_eigensystem(spec.intra_couplings));
  if (!period) throw NoCommonPeriodError("edge energies admit no common dynamical period");

  EnsembleResult result;
  result.fidelities.resize(repetitions);
  result.sigma = eta;
  result.circles = options.circles;
  result.transport_count = spec.transport_count;
  result.cell_count = spec.cell_count;
  result.seed = seed;

  const double nominal = options.circles * *period;
  std::vector<int> rejected(repetitions, 0);
  const TransferOptions transfer = to_transfer_options(options);
  parallel_for(repetitions, options.threads, [&](int rep) {
    std::mt19937_64 rng(derive_stream_seed(seed, static_cast<std::uint64_t>(rep)));
    std::normal_distribution<double> normal(0.0, eta * *period);
    double shift = eta > 0.0 ? normal(rng) : 0.0;
    while (nominal + shift <= 0.0) {
      shift = normal(rng);
      ++rejected[rep];
    }
    result.fidelities[rep] =
        transfer_experiment(spec, input_amps, options.circles, transfer, nullptr, shift).fidelity;
  });
  for (int r : rejected) result.rejected_draws += r;
  finish_stats(result);
  return result;
}

std::vector<CirclesPoint> circles_scan(const ChainSpec& spec, const State& input_amps,
                                       const std::vector<double>& circle_counts,
                                       const EnsembleOptions& options) {
  for (double n : circle_counts)
    if (n < 1.0) throw std::invalid_argument("circle counts must be >= 1");
  std::vector<CirclesPoint> table(circle_counts.size());
  const TransferOptions transfer = to_transfer_options(options);
  parallel_for(static_cast<int>(circle_counts.size()), options.threads, [&](int i) {
    table[i].circles = circle_counts[i];
    table[i].fidelity =
        transfer_experiment(spec, input_amps, circle_counts[i], transfer).fidelity;
  });
  return table;
}

}  // namespace topochain
