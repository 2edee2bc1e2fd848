#include "topochain/experiment.hpp"

namespace topochain {

namespace {

Json chain_json(int n, int m, std::vector<double> couplings = {}, double j = 5.0) {
  Json chain;
  chain["transport_count"] = n;
  chain["cell_count"] = m;
  if (couplings.empty()) couplings.assign(n - 1, 1.0);
  chain["intra_couplings"] = couplings;
  chain["drive_amplitude"] = j;
  chain["drive_frequency"] = 0.1;
  return chain;
}

Json bell_amps() { return Json::array({0.7071067811865476, 0.7071067811865476}); }

Json w_amps() {
  const double a = 0.5773502691896258;
  return Json::array({a, a, a});
}

std::vector<Recipe> build_catalog() {
  std::vector<Recipe> recipes;
  auto add = [&](const std::string& name, const std::string& title,
                 const std::string& expectation, Json config) {
    config["name"] = name;
    recipes.push_back({name, title, expectation, std::move(config)});
  };

  // Two-qubit chain, 14 qubits (N=2, M=5).
  add("fig2a", "energy spectrum across the sweep (N=2, M=5)",
      "flat edge levels at +-1 g0 (1e-8); middle band 4-fold degenerate",
      Json{{"experiment", "spectrum"}, {"chain", chain_json(2, 5)}, {"samples", 201}});
  add("fig2b", "eigenvalue ladder including omega t = pi/6 (N=2, M=5)",
      "2 edge levels between three bulk bands",
      Json{{"experiment", "spectrum"}, {"chain", chain_json(2, 5)}, {"samples", 7}});
  add("fig2c", "adiabaticity metric for the lower edge level (N=2, M=5)",
      "max unflagged metric < 0.5; degenerate middle band flagged",
      Json{{"experiment", "spectrum"},
           {"chain", chain_json(2, 5)},
           {"samples", 101},
           {"metric", Json{{"level_l", 5}, {"levels_r", Json::array({3, 4, 6, 7, 8, 9})}}}});
  add("fig2d", "Bell-state transfer indicator, 5 circles (N=2, M=5, omega=0.1g)",
      "final fidelity 0.9944 +- 0.0005; indicator rises without oscillation",
      Json{{"experiment", "transfer"},
           {"chain", chain_json(2, 5)},
           {"input_amps", bell_amps()},
           {"circles", 5}});
  add("fig2e", "single-qubit transfer populations, 5 circles (N=2, M=5)",
      "site populations shift left to right with period-T oscillation",
      Json{{"experiment", "transfer"},
           {"chain", chain_json(2, 5)},
           {"input_amps", Json::array({1.0, 0.0})},
           {"circles", 5}});
  add("fig2f", "Bell-state transfer populations, 5 circles (N=2, M=5)",
      "smooth left-to-right population flow, no oscillation",
      Json{{"experiment", "transfer"},
           {"chain", chain_json(2, 5)},
           {"input_amps", bell_amps()},
           {"circles", 5}});

  // Robustness of the two-qubit protocol.
  add("fig3a", "fidelity vs evolution circles (N=2, M=8)",
      "F(10) = 0.9979 +- 0.0005 (>= 0.99 from 10 circles on)",
      Json{{"experiment", "circles_scan"},
           {"chain", chain_json(2, 8)},
           {"input_amps", bell_amps()},
           {"circles_list", Json::array({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14})}});
  add("fig3b", "fidelity histogram under coupling disorder (N=2, M=4, xi=0.5g)",
      "100 repetitions concentrated near the mean",
      Json{{"experiment", "ensemble_coupling"},
           {"chain", chain_json(2, 4)},
           {"input_amps", bell_amps()},
           {"circles", 10},
           {"xi", 0.5},
           {"repetitions", 100},
           {"seed", 1234}});
  add("fig3c", "average fidelity vs coupling disorder (N=2, M=4)",
      "plateau with mean fidelity >= 0.99 for xi <= 0.1 g0",
      Json{{"experiment", "ensemble_coupling"},
           {"chain", chain_json(2, 4)},
           {"input_amps", bell_amps()},
           {"circles", 10},
           {"xi_list", Json::array({0.001, 0.003, 0.01, 0.03, 0.1, 0.3, 1.0})},
           {"repetitions", 100},
           {"seed", 1234}});
  add("fig3d", "average fidelity vs timing disorder (N=2, M=4)",
      "mean fidelity >= 0.99 for eta <= 0.01 T",
      Json{{"experiment", "ensemble_timing"},
           {"chain", chain_json(2, 4)},
           {"input_amps", bell_amps()},
           {"circles", 10},
           {"eta_list", Json::array({0.001, 0.003, 0.01, 0.03, 0.1})},
           {"repetitions", 100},
           {"seed", 1234}});

  // Three-qubit chain (N=3).
  add("fig4a", "energy spectrum across the sweep (N=3, M=6, 23 qubits)",
      "three flat edge levels {+-sqrt(2), 0} g0 dividing four bulk bands",
      Json{{"experiment", "spectrum"}, {"chain", chain_json(3, 6)}, {"samples", 201}});
  add("fig4b", "eigenvalue ladder including omega t = pi/6 (N=3, M=6)",
      "inner bulk bands 5-fold degenerate",
      Json{{"experiment", "spectrum"}, {"chain", chain_json(3, 6)}, {"samples", 7}});
  add("fig4c", "fidelity vs evolution circles for the W state (N=3, M=8)",
      "F(20) = 0.9865 +- 0.0005; 5 circles suffice at M=2",
      Json{{"experiment", "circles_scan"},
           {"chain", chain_json(3, 8)},
           {"input_amps", w_amps()},
           {"circles_list",
            Json::array({1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 14, 16, 18, 20, 22, 24})}});
  add("fig4d", "W-state transfer populations, 20 circles (N=3, M=8)",
      "population flows left to right with rapid oscillation",
      Json{{"experiment", "transfer"},
           {"chain", chain_json(3, 8)},
           {"input_amps", w_amps()},
           {"circles", 20}});
  add("fig4e", "average fidelity vs coupling disorder (N=3, M=4)",
      "plateau with mean fidelity >= 0.96 for xi <= 0.1 g0",
      Json{{"experiment", "ensemble_coupling"},
           {"chain", chain_json(3, 4)},
           {"input_amps", w_amps()},
           {"circles", 20},
           {"xi_list", Json::array({0.001, 0.003, 0.01, 0.03, 0.1, 0.3, 1.0})},
           {"repetitions", 100},
           {"seed", 1234}});
  add("fig4f", "average fidelity vs timing disorder (N=3, M=4)",
      "mean fidelity >= 0.96 for eta <= 0.01 T",
      Json{{"experiment", "ensemble_timing"},
           {"chain", chain_json(3, 4)},
           {"input_amps", w_amps()},
           {"circles", 20},
           {"eta_list", Json::array({0.001, 0.003, 0.01, 0.03, 0.1})},
           {"repetitions", 100},
           {"seed", 1234}});

  // Four- and five-qubit parameter sets.
  add("fig5a", "energy spectrum for 4-qubit transfer (N=4, M=5, 24 qubits)",
      "edge levels {+-2, +-1} g0 with couplings {sqrt(2), 1, sqrt(2)}",
      Json{{"experiment", "spectrum"},
           {"chain", chain_json(4, 5, {1.4142135623730951, 1.0, 1.4142135623730951})},
           {"samples", 201}});
  add("fig5b", "eigenvalue ladder at omega t = pi/6 (N=4, M=5)",
      "four edge levels; inner bulk bands 4-fold degenerate",
      Json{{"experiment", "spectrum"},
           {"chain", chain_json(4, 5, {1.4142135623730951, 1.0, 1.4142135623730951})},
           {"samples", 7}});
  add("fig5c", "energy spectrum for 5-qubit transfer (N=5, M=5, 29 qubits)",
      "edge levels {+-3, +-1, 0} g0 with couplings {1, 2, 2, 1}",
      Json{{"experiment", "spectrum"},
           {"chain", chain_json(5, 5, {1.0, 2.0, 2.0, 1.0})},
           {"samples", 201}});
  add("fig5d", "eigenvalue ladder at omega t = pi/6 (N=5, M=5)",
      "five edge levels; inner bulk bands 4-fold degenerate",
      Json{{"experiment", "spectrum"},
           {"chain", chain_json(5, 5, {1.0, 2.0, 2.0, 1.0})},
           {"samples", 7}});

  // Hardware map and topology.
  add("fig6ab", "junction phase and coupling vs external flux",
      "g(phi=0)/2pi = -18.64 MHz; sweep spans about [-18.6, +74.6] MHz",
      Json{{"experiment", "hardware"}, {"points", 801}});
  add("fig7e", "winding of h(k) in the d_x-d_y plane",
      "winding 1 for every v < w pair under the left-cell grouping",
      Json{{"experiment", "winding"},
           {"chain", chain_json(2, 5)},
           {"convention", "left"},
           {"v", 1.0},
           {"w", 9.0},
           {"sweep_pairs",
            Json::array({Json::array({1.0, 9.0}), Json::array({2.0, 8.0}),
                         Json::array({3.0, 7.0}), Json::array({4.0, 6.0})})}});

  // Waveguide spectroscopy.
  add("fig10b", "probe-coupling profile for the 14-qubit chain (explicit)",
      "G = 0.2 g0 on the first transport row, zero elsewhere",
      Json{{"experiment", "spectroscopy"},
           {"chain", chain_json(2, 5)},
           {"omega_t", 0.5235987755982988},
           {"kappa", 2.5},
           {"gamma", 0.01},
           {"coupling_profile",
            Json::array({0.2, 0.0, 0.0, 0.2, 0.0, 0.0, 0.2, 0.0, 0.0, 0.2, 0.0, 0.0, 0.2,
                         0.0})}});
  add("fig10c", "reflection spectrum of the 14-qubit chain",
      "edge features split by 2 g0 (within 5%)",
      Json{{"experiment", "spectroscopy"},
           {"chain", chain_json(2, 5)},
           {"omega_t", 0.5235987755982988},
           {"kappa", 2.5},
           {"gamma", 0.01}});
  add("fig10d", "probe-coupling profile for the 23-qubit chain (explicit)",
      "G = 0.2 g0 on the first transport row, zero elsewhere",
      Json{{"experiment", "spectroscopy"},
           {"chain", chain_json(3, 6)},
           {"omega_t", 0.5235987755982988},
           {"kappa", 2.5},
           {"gamma", 0.01},
           {"coupling_profile",
            Json::array({0.2, 0.0, 0.0, 0.0, 0.2, 0.0, 0.0, 0.0, 0.2, 0.0, 0.0, 0.0,
                         0.2, 0.0, 0.0, 0.0, 0.2, 0.0, 0.0, 0.0, 0.2, 0.0, 0.0})}});
  add("fig10e", "reflection spectrum of the 23-qubit chain",
      "edge features split by 2 sqrt(2) g0 (within 5%)",
      Json{{"experiment", "spectroscopy"},
           {"chain", chain_json(3, 6)},
           {"omega_t", 0.5235987755982988},
           {"kappa", 2.5},
           {"gamma", 0.01}});

  return recipes;
}

}  // namespace

const std::vector<Recipe>& recipe_catalog() {
  static const std::vector<Recipe> catalog = build_catalog();
  return catalog;
}

const Recipe& find_recipe(const std::string& name) {
  for (const Recipe& recipe : recipe_catalog())
    if (recipe.name == name) return recipe;
  throw std::out_of_range("no recipe named '" + name + "'");
}

}  // namespace topochain
