#include "topochain/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "topochain/dynamics.hpp"
#include "topochain/ensembles.hpp"
#include "topochain/hardware.hpp"
#include "topochain/spectra.hpp"
#include "topochain/spectroscopy.hpp"
#include "topochain/topology.hpp"

namespace topochain {

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Spectrum: return "spectrum";
    case ExperimentKind::Transfer: return "transfer";
    case ExperimentKind::EnsembleCoupling: return "ensemble_coupling";
    case ExperimentKind::EnsembleTiming: return "ensemble_timing";
    case ExperimentKind::CirclesScan: return "circles_scan";
    case ExperimentKind::Winding: return "winding";
    case ExperimentKind::Spectroscopy: return "spectroscopy";
    case ExperimentKind::Hardware: return "hardware";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from(const std::string& name) {
  for (ExperimentKind kind :
       {ExperimentKind::Spectrum, ExperimentKind::Transfer, ExperimentKind::EnsembleCoupling,
        ExperimentKind::EnsembleTiming, ExperimentKind::CirclesScan, ExperimentKind::Winding,
        ExperimentKind::Spectroscopy, ExperimentKind::Hardware})
    if (name == to_string(kind)) return kind;
  throw ConfigError("experiment", "unknown experiment kind '" + name + "'");
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

namespace {

const Json& require_field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key))
    throw ConfigError(path.empty() ? key : path + "." + key, "required field missing");
  return obj.at(key);
}

std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double get_number(const Json& obj, const std::string& key, const std::string& path) {
  const Json& value = require_field(obj, key, path);
  if (!value.is_number()) throw ConfigError(join_path(path, key), "must be a number");
  return value.get<double>();
}

double get_number_or(const Json& obj, const std::string& key, const std::string& path,
                     double fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return get_number(obj, key, path);
}

long long get_integer_or(const Json& obj, const std::string& key, const std::string& path,
                         long long fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const Json& value = obj.at(key);
  if (!value.is_number_integer())
    throw ConfigError(join_path(path, key), "must be an integer");
  return value.get<long long>();
}

std::string get_string_or(const Json& obj, const std::string& key, const std::string& path,
                          const std::string& fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const Json& value = obj.at(key);
  if (!value.is_string()) throw ConfigError(join_path(path, key), "must be a string");
  return value.get<std::string>();
}

ChainSpec parse_chain(const Json& config) {
  const Json& chain = require_field(config, "chain", "");
  ChainSpec spec;
  spec.transport_count = static_cast<int>(get_integer_or(chain, "transport_count", "chain", 2));
  spec.cell_count = static_cast<int>(get_integer_or(chain, "cell_count", "chain", 2));
  if (spec.transport_count < 1)
    throw ConfigError("chain.transport_count", "must be >= 1");
  if (spec.cell_count < 2) throw ConfigError("chain.cell_count", "must be >= 2");

  if (chain.contains("intra_couplings")) {
    const Json& arr = chain.at("intra_couplings");
    if (!arr.is_array())
      throw ConfigError("chain.intra_couplings", "must be an array of numbers");
    spec.intra_couplings.clear();
    for (const Json& value : arr) {
      if (!value.is_number())
        throw ConfigError("chain.intra_couplings", "must be an array of numbers");
      spec.intra_couplings.push_back(value.get<double>());
    }
  } else {
    spec.intra_couplings.assign(spec.transport_count - 1, 1.0);
  }
  if (static_cast<int>(spec.intra_couplings.size()) != spec.transport_count - 1)
    throw ConfigError("chain.intra_couplings", "must hold transport_count-1 entries");
  for (double g : spec.intra_couplings)
    if (!(g > 0.0)) throw ConfigError("chain.intra_couplings", "entries must be positive");

  spec.drive_amplitude = get_number_or(chain, "drive_amplitude", "chain", 5.0);
  if (!(spec.drive_amplitude > 0.0))
    throw ConfigError("chain.drive_amplitude", "must be positive");
  spec.drive_frequency = get_number_or(chain, "drive_frequency", "chain", 0.1);
  if (!(spec.drive_frequency > 0.0))
    throw ConfigError("chain.drive_frequency", "must be positive");

  // All qubits resonant: detuned chains are rejected outright rather than
  // silently dropping the on-site terms.
  if (chain.contains("onsite_energies")) {
    const Json& onsite = chain.at("onsite_energies");
    if (!onsite.is_array())
      throw ConfigError("chain.onsite_energies", "must be an array of numbers");
    for (const Json& value : onsite) {
      if (!value.is_number())
        throw ConfigError("chain.onsite_energies", "must be an array of numbers");
      if (value.get<double>() != 0.0)
        throw ConfigError("chain.onsite_energies",
                          "detuned qubits are not supported; all entries must be 0");
    }
  }
  return spec;
}

State parse_amps(const Json& config, int transport_count) {
  const Json& arr = require_field(config, "input_amps", "");
  if (!arr.is_array() || static_cast<int>(arr.size()) != transport_count)
    throw ConfigError("input_amps", "must be an array of length transport_count");
  State amps(transport_count);
  for (int i = 0; i < transport_count; ++i) {
    const Json& value = arr.at(i);
    if (value.is_number()) {
      amps(i) = Complex(value.get<double>(), 0.0);
    } else if (value.is_array() && value.size() == 2 && value.at(0).is_number() &&
               value.at(1).is_number()) {
      amps(i) = Complex(value.at(0).get<double>(), value.at(1).get<double>());
    } else {
      throw ConfigError("input_amps", "entries must be numbers or [re, im] pairs");
    }
  }
  const double norm = amps.norm();
  if (std::abs(norm - 1.0) > 1e-9)
    throw ConfigError("input_amps", "must be normalized (|norm - 1| <= 1e-9)");
  return amps / norm;
}

Integrator parse_integrator(const Json& config) {
  const std::string name = get_string_or(config, "integrator", "", "exact");
  if (name == "exact") return Integrator::ExactStepExponential;
  if (name == "rk4") return Integrator::RungeKutta4;
  throw ConfigError("integrator", "must be 'exact' or 'rk4'");
}

std::vector<double> parse_positive_list(const Json& config, const std::string& scalar_key,
                                        const std::string& list_key, bool allow_zero) {
  std::vector<double> values;
  if (config.contains(list_key)) {
    const Json& arr = config.at(list_key);
    if (!arr.is_array() || arr.empty())
      throw ConfigError(list_key, "must be a non-empty array of numbers");
    for (const Json& value : arr) {
      if (!value.is_number()) throw ConfigError(list_key, "must be an array of numbers");
      values.push_back(value.get<double>());
    }
  } else {
    values.push_back(get_number(config, scalar_key, ""));
  }
  for (double x : values) {
    if (x < 0.0 || (!allow_zero && x == 0.0))
      throw ConfigError(values.size() > 1 ? list_key : scalar_key,
                        allow_zero ? "must be >= 0" : "must be > 0");
  }
  return values;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& file, const std::string& header) : out_(file) {
    if (!out_) throw std::runtime_error("cannot open " + file.string());
    out_ << header << "\n";
  }
  void row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const std::string& cell : cells) {
      if (!first) out_ << ",";
      out_ << cell;
      first = false;
    }
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

std::string fmt(double value) { return format_double(value); }

double to_microseconds(double t, double g0_mhz) { return t / (2.0 * kPi * g0_mhz); }

// --- per-kind runners -------------------------------------------------------

struct RunContext {
  ExperimentConfig parsed;
  std::filesystem::path out_dir;
  RunArtifacts artifacts;
  Json headline;

  std::filesystem::path emit(const std::string& suffix) {
    std::filesystem::path file = out_dir / (parsed.name + suffix);
    artifacts.files.push_back(file);
    return file;
  }
};

void run_spectrum(RunContext& ctx) {
  const Json& config = ctx.parsed.raw;
  const int samples = static_cast<int>(get_integer_or(config, "samples", "", 201));
  if (samples < 2) throw ConfigError("samples", "must be >= 2");
  const SpectrumSweep sweep = sweep_spectrum(ctx.parsed.chain, samples);

  CsvWriter csv(ctx.emit(".csv"), "t(1/g0),omega_t(rad),level,energy(g0),edge_flag");
  for (int k = 0; k < sweep.sample_count(); ++k) {
    std::vector<bool> is_edge(ctx.parsed.chain.site_count(), false);
    for (int level : sweep.edge_levels[k]) is_edge[level] = true;
    for (int level = 0; level < ctx.parsed.chain.site_count(); ++level)
      csv.row({fmt(sweep.times[k]), fmt(sweep.phases[k]), std::to_string(level + 1),
               fmt(sweep.energies[k](level)), is_edge[level] ? "1" : "0"});
  }

  int min_edges = ctx.parsed.chain.site_count(), max_edges = 0;
  for (const auto& edges : sweep.edge_levels) {
    min_edges = std::min(min_edges, static_cast<int>(edges.size()));
    max_edges = std::max(max_edges, static_cast<int>(edges.size()));
  }
  ctx.headline["edge_levels_min"] = min_edges;
  ctx.headline["edge_levels_max"] = max_edges;
  ctx.headline["block_energies"] = std::vector<double>(
      sweep.block_energies.data(), sweep.block_energies.data() + sweep.block_energies.size());

  if (config.contains("metric")) {
    const Json& metric = config.at("metric");
    const int level_l = static_cast<int>(get_integer_or(metric, "level_l", "metric", 0));
    if (level_l < 1 || level_l > ctx.parsed.chain.site_count())
      throw ConfigError("metric.level_l", "1-based level out of range");
    const Json& levels_r = require_field(metric, "levels_r", "metric");
    if (!levels_r.is_array()) throw ConfigError("metric.levels_r", "must be an array");
    const bool project = metric.value("project_degenerate", false);
    CsvWriter mcsv(ctx.emit(".metric.csv"), "t(1/g0),level_r,value,flagged");
    double max_value = 0.0;
    int flagged = 0;
    for (const Json& entry : levels_r) {
      if (!entry.is_number_integer())
        throw ConfigError("metric.levels_r", "must be an array of integers");
      const int level_r = entry.get<int>();
      if (level_r < 1 || level_r > ctx.parsed.chain.site_count())
        throw ConfigError("metric.levels_r", "1-based level out of range");
      const AdiabaticitySeries series =
          adiabaticity_metric(sweep, level_l - 1, level_r - 1, project);
      for (std::size_t k = 0; k < series.values.size(); ++k) {
        const bool bad = !std::isfinite(series.values[k]);
        mcsv.row({fmt(series.times[k]), std::to_string(level_r),
                  bad ? "nan" : fmt(series.values[k]), bad ? "1" : "0"});
      }
      flagged += series.flagged_count;
      max_value = std::max(max_value, series.max_unflagged());
    }
    ctx.headline["metric_max"] = max_value;
    ctx.headline["metric_flagged_samples"] = flagged;
  }
}

void run_transfer(RunContext& ctx) {
  const Json& config = ctx.parsed.raw;
  const State amps = parse_amps(config, ctx.parsed.chain.transport_count);
  const double circles = get_number(config, "circles", "");
  if (circles < 1.0) throw ConfigError("circles", "must be >= 1");

  TransferOptions options;
  options.steps_per_circle =
      static_cast<int>(get_integer_or(config, "steps_per_circle", "", 1000));
  if (options.steps_per_circle < 1) throw ConfigError("steps_per_circle", "must be >= 1");
  options.integrator = parse_integrator(config);
  options.record_stride = static_cast<int>(get_integer_or(config, "record_stride", "", 0));
  options.allow_large_steps = config.value("allow_large_steps", false);

  const TransferResult result = transfer_experiment(ctx.parsed.chain, amps, circles, options);

  CsvWriter populations(ctx.emit(".csv"), "t(1/g0),site,abs_amplitude");
  for (std::size_t k = 0; k < result.times.size(); ++k)
    for (int site = 0; site < ctx.parsed.chain.site_count(); ++site)
      populations.row({fmt(result.times[k]), std::to_string(site + 1),
                       fmt(std::abs(result.states[k](site)))});

  const State target = target_right_state(ctx.parsed.chain, amps);
  const CouplingSchedule schedule{ctx.parsed.chain.drive_amplitude, result.frequency};
  CsvWriter indicator(ctx.emit(".indicator.csv"), "t(1/g0),numeric,analytic");
  for (std::size_t k = 0; k < result.times.size(); ++k) {
    const double numeric = fidelity(target, result.states[k]);
    const double analytic = fidelity(
        target, analytic_adiabatic_state(ctx.parsed.chain, schedule, result.times[k], amps));
    indicator.row({fmt(result.times[k]), fmt(numeric), fmt(analytic)});
  }

  ctx.headline["fidelity"] = result.fidelity;
  ctx.headline["period"] = result.period;
  ctx.headline["period_us"] = to_microseconds(result.period, ctx.parsed.g0_mhz);
  ctx.headline["omega"] = result.frequency;
  ctx.headline["total_time"] = result.total_time;
  ctx.headline["total_time_us"] = to_microseconds(result.total_time, ctx.parsed.g0_mhz);
  ctx.headline["norm_drift"] = result.norm_drift;
  ctx.headline["branch_phases_mod_2pi"] = std::vector<double>(
      result.branch_phases.data(), result.branch_phases.data() + result.branch_phases.size());
}

void run_ensemble(RunContext& ctx, bool timing) {
  const Json& config = ctx.parsed.raw;
  const State amps = parse_amps(config, ctx.parsed.chain.transport_count);

  EnsembleOptions options;
  options.circles = get_number(config, "circles", "");
  if (options.circles < 1.0) throw ConfigError("circles", "must be >= 1");
  options.steps_per_circle =
      static_cast<int>(get_integer_or(config, "steps_per_circle", "", 1000));
  if (options.steps_per_circle < 1) throw ConfigError("steps_per_circle", "must be >= 1");
  options.threads = ctx.parsed.threads;

  DisorderModel model;
  model.redraw_interval = get_number_or(config, "redraw_interval", "", 0.0);
  if (model.redraw_interval < 0.0) throw ConfigError("redraw_interval", "must be >= 0");
  model.seed = ctx.parsed.seed;
  model.repetitions = static_cast<int>(get_integer_or(config, "repetitions", "", 100));
  if (model.repetitions < 1) throw ConfigError("repetitions", "must be >= 1");
  options.redraw_interval = model.redraw_interval;

  const std::vector<double> sigmas =
      timing ? parse_positive_list(config, "eta", "eta_list", true)
             : parse_positive_list(config, "xi", "xi_list", true);

  CsvWriter csv(ctx.emit(".csv"),
                timing ? "eta(T),rep,fidelity" : "xi(g0),rep,fidelity");
  Json table = Json::array();
  for (double sigma : sigmas) {
    (timing ? model.timing_sigma : model.coupling_sigma) = sigma;
    const EnsembleResult result =
        timing ? timing_disorder_ensemble(ctx.parsed.chain, amps, model.timing_sigma,
                                          model.repetitions, model.seed, options)
               : coupling_disorder_ensemble(ctx.parsed.chain, amps, model.coupling_sigma,
                                            model.repetitions, model.seed, options);
    for (std::size_t rep = 0; rep < result.fidelities.size(); ++rep)
      csv.row({fmt(sigma), std::to_string(rep), fmt(result.fidelities[rep])});
    Json row;
    row[timing ? "eta" : "xi"] = sigma;
    row["mean_fidelity"] = result.mean;
    row["std_fidelity"] = result.stddev;
    if (timing) row["rejected_draws"] = result.rejected_draws;
    table.push_back(row);
  }
  ctx.headline["repetitions"] = model.repetitions;
  ctx.headline["results"] = table;
}

void run_circles_scan(RunContext& ctx) {
  const Json& config = ctx.parsed.raw;
  const State amps = parse_amps(config, ctx.parsed.chain.transport_count);
  const std::vector<double> circle_counts =
      parse_positive_list(config, "circles", "circles_list", false);
  for (double n : circle_counts)
    if (n < 1.0) throw ConfigError("circles_list", "entries must be >= 1");

  EnsembleOptions options;
  options.steps_per_circle =
      static_cast<int>(get_integer_or(config, "steps_per_circle", "", 1000));
  options.threads = ctx.parsed.threads;

  const auto table = circles_scan(ctx.parsed.chain, amps, circle_counts, options);
  CsvWriter csv(ctx.emit(".csv"), "circles,fidelity");
  int non_monotone = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    csv.row({fmt(table[i].circles), fmt(table[i].fidelity)});
    if (i > 0 && table[i].fidelity < table[i - 1].fidelity - 1e-12) ++non_monotone;
  }
  ctx.headline["final_fidelity"] = table.back().fidelity;
  ctx.headline["monotone_violations"] = non_monotone;
}

void run_winding(RunContext& ctx) {
  const Json& config = ctx.parsed.raw;
  const std::string convention = get_string_or(config, "convention", "", "left");
  if (convention != "left" && convention != "right")
    throw ConfigError("convention", "must be 'left' or 'right'");
  BlochModel model;
  model.convention =
      convention == "left" ? CellConvention::LeftCell : CellConvention::RightCell;
  model.v = get_number(config, "v", "");
  model.w = get_number(config, "w", "");
  if (model.v < 0.0) throw ConfigError("v", "must be >= 0");
  if (model.w < 0.0) throw ConfigError("w", "must be >= 0");
  model.k_points = static_cast<int>(get_integer_or(config, "k_points", "", 2001));
  if (model.k_points < 16) throw ConfigError("k_points", "must be >= 16");

  const WindingResult result = winding_number(model);
  CsvWriter csv(ctx.emit(".csv"), "k(rad),dx(g0),dy(g0)");
  for (int j = 0; j < model.k_points; ++j) {
    const double k = -kPi + 2.0 * kPi * j / (model.k_points - 1);
    const Complex h = bloch_vector(model, k);
    csv.row({fmt(k), fmt(h.real()), fmt(h.imag())});
  }
  ctx.headline["winding"] = result.winding;
  ctx.headline["residual"] = result.residual;

  if (config.contains("sweep_pairs")) {
    const Json& pairs = config.at("sweep_pairs");
    if (!pairs.is_array()) throw ConfigError("sweep_pairs", "must be an array of [v, w]");
    CsvWriter sweep(ctx.emit(".sweep.csv"), "v(g0),w(g0),convention,winding,residual");
    for (const Json& pair : pairs) {
      if (!pair.is_array() || pair.size() != 2 || !pair.at(0).is_number() ||
          !pair.at(1).is_number())
        throw ConfigError("sweep_pairs", "must be an array of [v, w]");
      BlochModel point = model;
      point.v = pair.at(0).get<double>();
      point.w = pair.at(1).get<double>();
      const WindingResult r = winding_number(point);
      sweep.row({fmt(point.v), fmt(point.w), convention, std::to_string(r.winding),
                 fmt(r.residual)});
    }
  }
}

void run_spectroscopy(RunContext& ctx) {
  const Json& config = ctx.parsed.raw;
  const ChainSpec& spec = ctx.parsed.chain;

  double v, w;
  if (config.contains("v") || config.contains("w")) {
    v = get_number(config, "v", "");
    w = get_number(config, "w", "");
    if (v < 0.0) throw ConfigError("v", "must be >= 0");
    if (w < 0.0) throw ConfigError("w", "must be >= 0");
  } else {
    const double phase = get_number_or(config, "omega_t", "", kPi / 6.0);
    if (phase < 0.0 || phase > kPi) throw ConfigError("omega_t", "must lie in [0, pi]");
    v = spec.drive_amplitude * (1.0 - std::cos(phase));
    w = spec.drive_amplitude * (1.0 + std::cos(phase));
  }

  const double kappa = get_number_or(config, "kappa", "", 2.5);
  if (!(kappa > 0.0)) throw ConfigError("kappa", "must be positive");
  const double gamma = get_number_or(config, "gamma", "", 0.01);
  if (gamma < 0.0) throw ConfigError("gamma", "must be >= 0");
  const double g0 = get_number_or(config, "probe_coupling", "", 0.2);

  ProbeSetup setup = default_probe(spec, kappa, gamma, g0);
  if (config.contains("coupling_profile")) {
    const Json& profile = config.at("coupling_profile");
    if (!profile.is_array() || static_cast<int>(profile.size()) != spec.site_count())
      throw ConfigError("coupling_profile", "must be an array of length L");
    for (int i = 0; i < spec.site_count(); ++i) {
      if (!profile.at(i).is_number())
        throw ConfigError("coupling_profile", "entries must be numbers");
      setup.couplings(i) = profile.at(i).get<double>();
    }
  }

  ScanGrid grid = default_grid(spec);
  if (config.contains("grid")) {
    const Json& g = config.at("grid");
    grid.lo = get_number_or(g, "lo", "grid", grid.lo);
    grid.hi = get_number_or(g, "hi", "grid", grid.hi);
    grid.points = static_cast<int>(get_integer_or(g, "points", "grid", grid.points));
    if (!(grid.hi > grid.lo)) throw ConfigError("grid", "hi must exceed lo");
    if (grid.points < 3) throw ConfigError("grid.points", "must be >= 3");
  }

  const ReflectionScan scan = reflection_spectrum_scan(setup, spec, v, w, grid);
  CsvWriter csv(ctx.emit(".csv"), "delta_q(g0),re_rp,im_rp,abs_rp");
  for (std::size_t i = 0; i < scan.detunings.size(); ++i)
    csv.row({fmt(scan.detunings[i]), fmt(scan.reflection[i].real()),
             fmt(scan.reflection[i].imag()), fmt(std::abs(scan.reflection[i]))});

  Json peaks = Json::array();
  for (const ReflectionPeak& peak : scan.peaks) {
    Json row;
    row["detuning"] = peak.detuning;
    row["deviation"] = peak.deviation;
    row["matched_energy"] = peak.matched_energy;
    row["edge"] = peak.edge;
    peaks.push_back(row);
  }
  ctx.headline["peaks"] = peaks;
  ctx.headline["baseline"] = scan.baseline;
  try {
    const double gap = edge_gap_from_spectrum(scan);
    ctx.headline["edge_gap"] = gap;
    ctx.headline["edge_gap_mhz"] = gap * ctx.parsed.g0_mhz;
  } catch (const PeakDetectionError& error) {
    ctx.headline["edge_gap"] = nullptr;
    ctx.headline["detection_error"] = error.what();
  }
}

void run_hardware(RunContext& ctx) {
  const Json& config = ctx.parsed.raw;
  CouplerParams params;
  params.gate_inductance = get_number_or(config, "gate_inductance_pH", "", 300.0) * 1e-12;
  params.coupler_inductance = get_number_or(config, "coupler_inductance_nH", "", 1.0) * 1e-9;
  params.qubit_inductance = get_number_or(config, "qubit_inductance_nH", "", 8.0) * 1e-9;
  params.qubit_frequency =
      2.0 * kPi * get_number_or(config, "qubit_frequency_GHz", "", 5.5) * 1e9;
  if (!(params.gate_inductance > 0.0))
    throw ConfigError("gate_inductance_pH", "must be positive");
  if (!(params.coupler_inductance > 0.0))
    throw ConfigError("coupler_inductance_nH", "must be positive");
  if (!(params.qubit_inductance > 0.0))
    throw ConfigError("qubit_inductance_nH", "must be positive");
  if (!(params.qubit_frequency > 0.0))
    throw ConfigError("qubit_frequency_GHz", "must be positive");

  const double lo = get_number_or(config, "phi_lo", "", -2.0 * kPi);
  const double hi = get_number_or(config, "phi_hi", "", 2.0 * kPi);
  const int points = static_cast<int>(get_integer_or(config, "points", "", 801));
  if (!(hi > lo)) throw ConfigError("phi_hi", "must exceed phi_lo");
  if (points < 2) throw ConfigError("points", "must be >= 2");

  const auto rows = flux_sweep(params, lo, hi, points);
  CsvWriter csv(ctx.emit(".csv"), "phi_ext(rad),delta(rad),g_over_2pi(MHz)");
  double g_min = std::numeric_limits<double>::infinity();
  double g_max = -std::numeric_limits<double>::infinity();
  for (const FluxSweepRow& row : rows) {
    const double mhz = row.coupling / (2.0 * kPi) / 1e6;
    csv.row({fmt(row.phi_ext), fmt(row.delta), fmt(mhz)});
    g_min = std::min(g_min, mhz);
    g_max = std::max(g_max, mhz);
  }
  const double g_zero = flux_to_coupling(params, 0.0) / (2.0 * kPi) / 1e6;
  ctx.headline["g_zero_bias_mhz"] = g_zero;
  ctx.headline["g_min_mhz"] = g_min;
  ctx.headline["g_max_mhz"] = g_max;
  // The chain model takes g > 0; report the magnitude with the sign recorded.
  ctx.headline["chain_coupling_mhz"] = std::abs(g_zero);
  ctx.headline["coupling_sign"] = g_zero >= 0.0 ? 1 : -1;
}

}  // namespace

ExperimentConfig parse_config(const Json& config) {
  if (!config.is_object()) throw ConfigError("", "config must be a JSON object");
  ExperimentConfig parsed;
  const Json& kind = require_field(config, "experiment", "");
  if (!kind.is_string()) throw ConfigError("experiment", "must be a string");
  parsed.kind = experiment_kind_from(kind.get<std::string>());
  parsed.name = get_string_or(config, "name", "", to_string(parsed.kind));
  if (parsed.name.empty() || parsed.name.find('/') != std::string::npos)
    throw ConfigError("name", "must be a non-empty file stem");
  const long long seed = get_integer_or(config, "seed", "", 0);
  if (seed < 0) throw ConfigError("seed", "must be non-negative");
  parsed.seed = static_cast<std::uint64_t>(seed);
  const long long threads = get_integer_or(config, "threads", "", 0);
  if (threads < 0) throw ConfigError("threads", "must be non-negative");
  parsed.threads = static_cast<unsigned>(threads);
  parsed.g0_mhz = get_number_or(config, "g0_mhz", "", 10.0);
  if (!(parsed.g0_mhz > 0.0)) throw ConfigError("g0_mhz", "must be positive");
  if (parsed.kind != ExperimentKind::Hardware) {
    parsed.chain = parse_chain(config);
    parsed.chain.energy_unit = 2.0 * kPi * parsed.g0_mhz * 1e6;
  }
  parsed.raw = config;

  // Kind-specific validation runs in the dispatchers; exercise it here by
  // dry-parsing the cheap fields so `validate` catches what it can without
  // running the experiment.
  switch (parsed.kind) {
    case ExperimentKind::Transfer:
    case ExperimentKind::CirclesScan:
    case ExperimentKind::EnsembleCoupling:
    case ExperimentKind::EnsembleTiming:
      parse_amps(config, parsed.chain.transport_count);
      break;
    default: break;
  }
  if (parsed.kind == ExperimentKind::EnsembleCoupling)
    parse_positive_list(config, "xi", "xi_list", true);
  if (parsed.kind == ExperimentKind::EnsembleTiming)
    parse_positive_list(config, "eta", "eta_list", true);
  return parsed;
}

RunArtifacts run_experiment(const Json& config, const std::filesystem::path& out_dir,
                            std::optional<std::uint64_t> seed_override,
                            std::optional<unsigned> threads_override) {
  RunContext ctx;
  ctx.parsed = parse_config(config);
  if (seed_override) {
    ctx.parsed.seed = *seed_override;
    ctx.parsed.raw["seed"] = *seed_override;
  }
  if (threads_override) ctx.parsed.threads = *threads_override;
  ctx.out_dir = out_dir;
  std::filesystem::create_directories(out_dir);

  switch (ctx.parsed.kind) {
    case ExperimentKind::Spectrum: run_spectrum(ctx); break;
    case ExperimentKind::Transfer: run_transfer(ctx); break;
    case ExperimentKind::EnsembleCoupling: run_ensemble(ctx, false); break;
    case ExperimentKind::EnsembleTiming: run_ensemble(ctx, true); break;
    case ExperimentKind::CirclesScan: run_circles_scan(ctx); break;
    case ExperimentKind::Winding: run_winding(ctx); break;
    case ExperimentKind::Spectroscopy: run_spectroscopy(ctx); break;
    case ExperimentKind::Hardware: run_hardware(ctx); break;
  }

  Json summary;
  summary["schema"] = "topochain-summary-v1";
  summary["experiment"] = to_string(ctx.parsed.kind);
  summary["name"] = ctx.parsed.name;
  summary["seed"] = ctx.parsed.seed;
  summary["parameters"] = ctx.parsed.raw;
  summary["headline"] = ctx.headline;
  Json outputs = Json::array();
  for (const auto& file : ctx.artifacts.files) outputs.push_back(file.filename().string());
  summary["outputs"] = outputs;
  summary["units"] = {{"energy", "g0"}, {"time", "1/g0"}, {"g0_mhz", ctx.parsed.g0_mhz}};

  ctx.artifacts.summary = out_dir / (ctx.parsed.name + ".summary.json");
  std::ofstream out(ctx.artifacts.summary);
  if (!out) throw std::runtime_error("cannot open " + ctx.artifacts.summary.string());
  out << summary.dump(2) << "\n";
  ctx.artifacts.summary_json = std::move(summary);
  return std::move(ctx.artifacts);
}

}  // namespace topochain
