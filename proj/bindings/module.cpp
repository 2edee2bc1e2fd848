#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "topochain/dynamics.hpp"
#include "topochain/ensembles.hpp"
#include "topochain/experiment.hpp"
#include "topochain/hardware.hpp"
#include "topochain/spectra.hpp"
#include "topochain/spectroscopy.hpp"
#include "topochain/topology.hpp"

namespace py = pybind11;
using namespace topochain;

namespace {

Integrator integrator_from(const std::string& name) {
  if (name == "exact") return Integrator::ExactStepExponential;
  if (name == "rk4") return Integrator::RungeKutta4;
  throw std::invalid_argument("integrator must be 'exact' or 'rk4'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Adiabatic state transfer on extended SSH qubit chains";

  py::register_exception<NoCommonPeriodError>(m, "NoCommonPeriodError");
  py::register_exception<DegenerateBlockError>(m, "DegenerateBlockError");
  py::register_exception<GapClosedError>(m, "GapClosedError");
  py::register_exception<PeakDetectionError>(m, "PeakDetectionError");

  py::class_<ChainSpec>(m, "ChainSpec")
      .def(py::init([](int transport_count, int cell_count, std::vector<double> couplings,
                       double drive_amplitude, double drive_frequency, double energy_unit) {
             ChainSpec spec;
             spec.transport_count = transport_count;
             spec.cell_count = cell_count;
             if (couplings.empty() && transport_count > 1)
               couplings.assign(transport_count - 1, 1.0);
             spec.intra_couplings = std::move(couplings);
             spec.drive_amplitude = drive_amplitude;
             spec.drive_frequency = drive_frequency;
             spec.energy_unit = energy_unit;
             validate(spec);
             return spec;
           }),
           py::arg("transport_count"), py::arg("cell_count"),
           py::arg("intra_couplings") = std::vector<double>{},
           py::arg("drive_amplitude") = 5.0, py::arg("drive_frequency") = 0.1,
           py::arg("energy_unit") = 2.0 * kPi * 10.0e6)
      .def_readonly("transport_count", &ChainSpec::transport_count)
      .def_readonly("cell_count", &ChainSpec::cell_count)
      .def_readonly("intra_couplings", &ChainSpec::intra_couplings)
      .def_readonly("drive_amplitude", &ChainSpec::drive_amplitude)
      .def_readonly("drive_frequency", &ChainSpec::drive_frequency)
      .def_readonly("energy_unit", &ChainSpec::energy_unit)
      .def_property_readonly("site_count", &ChainSpec::site_count)
      .def("__repr__", [](const ChainSpec& spec) {
        return "ChainSpec(N=" + std::to_string(spec.transport_count) +
               ", M=" + std::to_string(spec.cell_count) + ")";
      });

  m.def("transport_site", &transport_site, py::arg("spec"), py::arg("row"), py::arg("cell"));
  m.def("mediator_site", &mediator_site, py::arg("spec"), py::arg("cell"));
  m.def(
      "build_hamiltonian",
      [](const ChainSpec& spec, double v, double w, std::vector<double> offsets) {
        return build_hamiltonian(spec, v, w, offsets);
      },
      py::arg("spec"), py::arg("v"), py::arg("w"),
      py::arg("bond_offsets") = std::vector<double>{});
  m.def(
      "coupling_at",
      [](const ChainSpec& spec, double t) { return coupling_at(schedule_for(spec), t); },
      py::arg("spec"), py::arg("t"), "(v, w) of the drive at time t, range-checked");
  m.def("encode_left_state", &encode_left_state, py::arg("spec"), py::arg("amps"));
  m.def("target_right_state", &target_right_state, py::arg("spec"), py::arg("amps"));

  py::class_<TransportBlock>(m, "TransportBlock")
      .def_readonly("size", &TransportBlock::size)
      .def_readonly("energies", &TransportBlock::energies)
      .def_readonly("modes", &TransportBlock::modes);
  m.def(
      "transport_block_eigensystem",
      [](std::vector<double> couplings) { return transport_block_eigensystem(couplings); },
      py::arg("couplings"));
  m.def(
      "common_period",
      [](std::vector<double> couplings) -> py::object {
        const auto period = common_period(transport_block_eigensystem(couplings));
        if (!period) return py::none();
        return py::float_(*period);
      },
      py::arg("couplings"), "least common dynamical period, or None");

  py::class_<EdgeState>(m, "EdgeState")
      .def_readonly("branch", &EdgeState::branch)
      .def_readonly("energy", &EdgeState::energy)
      .def_readonly("lambda_", &EdgeState::lambda)
      .def_readonly("amplitudes", &EdgeState::amplitudes);
  m.def("edge_wavefunction", &edge_wavefunction, py::arg("spec"), py::arg("v"), py::arg("w"),
        py::arg("branch"));

  py::class_<SpectrumSweep>(m, "SpectrumSweep")
      .def_readonly("times", &SpectrumSweep::times)
      .def_readonly("phases", &SpectrumSweep::phases)
      .def_readonly("energies", &SpectrumSweep::energies)
      .def_readonly("vectors", &SpectrumSweep::vectors)
      .def_readonly("edge_levels", &SpectrumSweep::edge_levels)
      .def_readonly("block_energies", &SpectrumSweep::block_energies);
  m.def("sweep_spectrum", &sweep_spectrum, py::arg("spec"), py::arg("samples"));

  py::class_<AdiabaticitySeries>(m, "AdiabaticitySeries")
      .def_readonly("times", &AdiabaticitySeries::times)
      .def_readonly("values", &AdiabaticitySeries::values)
      .def_readonly("flagged_count", &AdiabaticitySeries::flagged_count)
      .def("max_unflagged", &AdiabaticitySeries::max_unflagged);
  m.def("adiabaticity_metric", &adiabaticity_metric, py::arg("sweep"), py::arg("level_l"),
        py::arg("level_r"), py::arg("project_degenerate") = false);
  m.def("geometric_phase_check", &geometric_phase_check, py::arg("sweep"), py::arg("level"));

  m.def("exact_step", &exact_step, py::arg("hamiltonian"), py::arg("psi"), py::arg("dt"));
  m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
  m.def(
      "analytic_adiabatic_state",
      [](const ChainSpec& spec, double t, const State& amps) {
        return analytic_adiabatic_state(spec, schedule_for(spec), t, amps);
      },
      py::arg("spec"), py::arg("t"), py::arg("input_amps"));

  py::class_<TransferResult>(m, "TransferResult")
      .def_readonly("fidelity", &TransferResult::fidelity)
      .def_readonly("period", &TransferResult::period)
      .def_readonly("frequency", &TransferResult::frequency)
      .def_readonly("total_time", &TransferResult::total_time)
      .def_readonly("norm_drift", &TransferResult::norm_drift)
      .def_readonly("branch_energies", &TransferResult::branch_energies)
      .def_readonly("branch_coefficients", &TransferResult::branch_coefficients)
      .def_readonly("branch_phases", &TransferResult::branch_phases)
      .def_readonly("times", &TransferResult::times)
      .def_readonly("states", &TransferResult::states)
      .def_property_readonly("final_state",
                             [](const TransferResult& r) { return r.final_state(); });
  m.def(
      "transfer_experiment",
      [](const ChainSpec& spec, const State& amps, double circles, int steps_per_circle,
         const std::string& integrator, int record_stride) {
        TransferOptions options;
        options.steps_per_circle = steps_per_circle;
        options.integrator = integrator_from(integrator);
        options.record_stride = record_stride;
        return transfer_experiment(spec, amps, circles, options);
      },
      py::arg("spec"), py::arg("input_amps"), py::arg("circles"),
      py::arg("steps_per_circle") = 1000, py::arg("integrator") = "exact",
      py::arg("record_stride") = 0);

  py::class_<EnsembleResult>(m, "EnsembleResult")
      .def_readonly("fidelities", &EnsembleResult::fidelities)
      .def_readonly("mean", &EnsembleResult::mean)
      .def_readonly("stddev", &EnsembleResult::stddev)
      .def_readonly("sigma", &EnsembleResult::sigma)
      .def_readonly("circles", &EnsembleResult::circles)
      .def_readonly("seed", &EnsembleResult::seed)
      .def_readonly("rejected_draws", &EnsembleResult::rejected_draws);
  m.def(
      "coupling_disorder_ensemble",
      [](const ChainSpec& spec, const State& amps, double xi, int repetitions,
         std::uint64_t seed, double circles, int steps_per_circle, double redraw_interval,
         unsigned threads) {
        EnsembleOptions options;
        options.circles = circles;
        options.steps_per_circle = steps_per_circle;
        options.redraw_interval = redraw_interval;
        options.threads = threads;
        return coupling_disorder_ensemble(spec, amps, xi, repetitions, seed, options);
      },
      py::arg("spec"), py::arg("input_amps"), py::arg("xi"), py::arg("repetitions") = 100,
      py::arg("seed") = 0, py::arg("circles") = 10.0, py::arg("steps_per_circle") = 1000,
      py::arg("redraw_interval") = 0.0, py::arg("threads") = 0);
  m.def(
      "timing_disorder_ensemble",
      [](const ChainSpec& spec, const State& amps, double eta, int repetitions,
         std::uint64_t seed, double circles, int steps_per_circle, unsigned threads) {
        EnsembleOptions options;
        options.circles = circles;
        options.steps_per_circle = steps_per_circle;
        options.threads = threads;
        return timing_disorder_ensemble(spec, amps, eta, repetitions, seed, options);
      },
      py::arg("spec"), py::arg("input_amps"), py::arg("eta"), py::arg("repetitions") = 100,
      py::arg("seed") = 0, py::arg("circles") = 10.0, py::arg("steps_per_circle") = 1000,
      py::arg("threads") = 0);
  m.def(
      "circles_scan",
      [](const ChainSpec& spec, const State& amps, std::vector<double> circle_counts,
         int steps_per_circle, unsigned threads) {
        EnsembleOptions options;
        options.steps_per_circle = steps_per_circle;
        options.threads = threads;
        std::vector<std::pair<double, double>> out;
        for (const CirclesPoint& point : circles_scan(spec, amps, circle_counts, options))
          out.emplace_back(point.circles, point.fidelity);
        return out;
      },
      py::arg("spec"), py::arg("input_amps"), py::arg("circles_list"),
      py::arg("steps_per_circle") = 1000, py::arg("threads") = 0);

  m.def(
      "winding_number",
      [](const std::string& convention, double v, double w, int k_points) {
        BlochModel model;
        if (convention == "left") model.convention = CellConvention::LeftCell;
        else if (convention == "right") model.convention = CellConvention::RightCell;
        else throw std::invalid_argument("convention must be 'left' or 'right'");
        model.v = v;
        model.w = w;
        model.k_points = k_points;
        const WindingResult result = winding_number(model);
        return std::make_pair(result.winding, result.residual);
      },
      py::arg("convention"), py::arg("v"), py::arg("w"), py::arg("k_points") = 2001,
      "(winding, residual) of h(k) for the chosen unit-cell grouping");

  py::class_<ProbeSetup>(m, "ProbeSetup")
      .def_readwrite("waveguide_decay", &ProbeSetup::waveguide_decay)
      .def_readwrite("qubit_decay", &ProbeSetup::qubit_decay)
      .def_readwrite("couplings", &ProbeSetup::couplings)
      .def_readwrite("waveguide_detuning", &ProbeSetup::waveguide_detuning)
      .def_readwrite("drive", &ProbeSetup::drive);
  m.def("default_probe", &default_probe, py::arg("spec"), py::arg("kappa"), py::arg("gamma"),
        py::arg("probe_coupling") = 0.2);
  m.def("steady_state_response", &steady_state_response, py::arg("setup"),
        py::arg("omega_matrix"), py::arg("delta_q"), "(t_p, r_p) at the given detuning");
  py::class_<ReflectionPeak>(m, "ReflectionPeak")
      .def_readonly("detuning", &ReflectionPeak::detuning)
      .def_readonly("deviation", &ReflectionPeak::deviation)
      .def_readonly("matched_energy", &ReflectionPeak::matched_energy)
      .def_readonly("edge", &ReflectionPeak::edge);
  py::class_<ReflectionScan>(m, "ReflectionScan")
      .def_readonly("detunings", &ReflectionScan::detunings)
      .def_readonly("reflection", &ReflectionScan::reflection)
      .def_readonly("baseline", &ReflectionScan::baseline)
      .def_readonly("peaks", &ReflectionScan::peaks);
  m.def(
      "reflection_spectrum_scan",
      [](const ProbeSetup& setup, const ChainSpec& spec, double v, double w, double lo,
         double hi, int points) {
        ScanGrid grid{lo, hi, points};
        if (points <= 0) grid = default_grid(spec);
        return reflection_spectrum_scan(setup, spec, v, w, grid);
      },
      py::arg("setup"), py::arg("spec"), py::arg("v"), py::arg("w"), py::arg("lo") = -4.0,
      py::arg("hi") = 4.0, py::arg("points") = 2001);
  m.def("edge_gap_from_spectrum", &edge_gap_from_spectrum, py::arg("scan"));

  py::class_<CouplerParams>(m, "CouplerParams")
      .def(py::init([](double lg, double lt, double lj, double wq) {
             return CouplerParams{lg, lt, lj, wq};
           }),
           py::arg("gate_inductance") = 300e-12, py::arg("coupler_inductance") = 1e-9,
           py::arg("qubit_inductance") = 8e-9,
           py::arg("qubit_frequency") = 2.0 * kPi * 5.5e9)
      .def_readonly("gate_inductance", &CouplerParams::gate_inductance)
      .def_readonly("coupler_inductance", &CouplerParams::coupler_inductance)
      .def_readonly("qubit_inductance", &CouplerParams::qubit_inductance)
      .def_readonly("qubit_frequency", &CouplerParams::qubit_frequency);
  m.def("solve_junction_phase", &solve_junction_phase, py::arg("params"), py::arg("phi_ext"));
  m.def("flux_to_coupling", &flux_to_coupling, py::arg("params"), py::arg("phi_ext"),
        "coupling in rad/s for the given reduced external flux");

  m.def(
      "run_experiment",
      [](const std::string& config_json, const std::string& out_dir) {
        const Json config = Json::parse(config_json);
        const RunArtifacts artifacts = run_experiment(config, out_dir);
        return artifacts.summary_json.dump();
      },
      py::arg("config_json"), py::arg("out_dir"),
      "run a config (JSON string); returns the summary JSON string");
  m.def("recipe_names", [] {
    std::vector<std::string> names;
    for (const Recipe& recipe : recipe_catalog()) names.push_back(recipe.name);
    return names;
  });
  m.def(
      "recipe_config",
      [](const std::string& name) { return find_recipe(name).config.dump(); },
      py::arg("name"));

  m.attr("__version__") = "0.1.0";
}
