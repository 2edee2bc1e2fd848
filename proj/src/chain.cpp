#include "topochain/chain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace topochain {

void validate(const ChainSpec& spec) {
  if (spec.transport_count < 1)
    throw std::invalid_argument("transport_count must be >= 1");
  if (spec.cell_count < 2)
    throw std::invalid_argument("cell_count must be >= 2");
  if (static_cast<int>(spec.intra_couplings.size()) != spec.transport_count - 1)
    throw std::invalid_argument("intra_couplings must hold N-1 entries, got " +
                                std::to_string(spec.intra_couplings.size()));
  for (double g : spec.intra_couplings)
    if (!(g > 0.0)) throw std::invalid_argument("intra_couplings must be positive");
  if (!(spec.drive_amplitude > 0.0))
    throw std::invalid_argument("drive_amplitude must be positive");
  if (!(spec.drive_frequency > 0.0))
    throw std::invalid_argument("drive_frequency must be positive");
  if (!(spec.energy_unit > 0.0))
    throw std::invalid_argument("energy_unit must be positive");
}

int transport_site(const ChainSpec& spec, int row, int cell) {
  if (row < 1 || row > spec.transport_count || cell < 1 || cell > spec.cell_count)
    throw std::out_of_range("transport site (row,cell) out of range");
  return (cell - 1) * (spec.transport_count + 1) + (row - 1);
}

int mediator_site(const ChainSpec& spec, int cell) {
  if (cell < 1 || cell > spec.cell_count - 1)
    throw std::out_of_range("mediator cell out of range");
  return (cell - 1) * (spec.transport_count + 1) + spec.transport_count;
}

SiteIndex site_at(const ChainSpec& spec, int flat) {
  if (flat < 0 || flat >= spec.site_count())
    throw std::out_of_range("flat site index out of range");
  const int per_cell = spec.transport_count + 1;
  const int cell = flat / per_cell + 1;
  const int within = flat % per_cell;
  if (within == spec.transport_count)
    return {SiteIndex::Kind::Mediator, 0, cell, flat};
  return {SiteIndex::Kind::Transport, within + 1, cell, flat};
}

std::vector<int> mediator_sites(const ChainSpec& spec) {
  std::vector<int> out;
  out.reserve(spec.cell_count - 1);
  for (int m = 1; m <= spec.cell_count - 1; ++m) out.push_back(mediator_site(spec, m));
  return out;
}

std::vector<Bond> bond_list(const ChainSpec& spec) {
  validate(spec);
  std::vector<Bond> bonds;
  bonds.reserve(bond_count(spec));
  for (int m = 1; m <= spec.cell_count; ++m) {
    for (int r = 1; r <= spec.transport_count - 1; ++r)
      bonds.push_back({Bond::Kind::Intra, r, m, transport_site(spec, r, m),
                       transport_site(spec, r + 1, m)});
    if (m <= spec.cell_count - 1) {
      bonds.push_back({Bond::Kind::V, 0, m, transport_site(spec, 1, m), mediator_site(spec, m)});
      bonds.push_back(
          {Bond::Kind::W, 0, m, transport_site(spec, 1, m + 1), mediator_site(spec, m)});
    }
  }
  return bonds;
}

std::size_t bond_count(const ChainSpec& spec) {
  return static_cast<std::size_t>(spec.cell_count) * (spec.transport_count - 1) +
         2 * static_cast<std::size_t>(spec.cell_count - 1);
}

RealMatrix build_hamiltonian(const ChainSpec& spec, double v, double w,
                             std::span<const double> bond_offsets) {
  validate(spec);
  if (v < 0.0 || w < 0.0) throw std::invalid_argument("couplings v, w must be non-negative");
  const auto bonds = bond_list(spec);
  if (!bond_offsets.empty() && bond_offsets.size() != bonds.size())
    throw std::invalid_argument("bond_offsets must supply one offset per bond");

  RealMatrix h = RealMatrix::Zero(spec.site_count(), spec.site_count());
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    const Bond& bond = bonds[i];
    double strength = 0.0;
    switch (bond.kind) {
      case Bond::Kind::Intra: strength = spec.intra_couplings[bond.row - 1]; break;
      case Bond::Kind::V: strength = v; break;
      case Bond::Kind::W: strength = w; break;
    }
    if (!bond_offsets.empty()) strength += bond_offsets[i];
    h(bond.a, bond.b) += strength;
    h(bond.b, bond.a) += strength;
  }
  return h;
}

std::pair<double, double> CouplingSchedule::value(double t) const {
  const double c = std::cos(frequency * t);
  return {amplitude * (1.0 - c), amplitude * (1.0 + c)};
}

std::pair<double, double> CouplingSchedule::rate(double t) const {
  const double s = amplitude * frequency * std::sin(frequency * t);
  return {s, -s};
}

CouplingSchedule schedule_for(const ChainSpec& spec) {
  return {spec.drive_amplitude, spec.drive_frequency};
}

std::pair<double, double> coupling_at(const CouplingSchedule& schedule, double t) {
  if (t < 0.0 || t > schedule.sweep_time())
    throw std::out_of_range("t outside the sweep [0, pi/omega]");
  return schedule.value(t);
}

RealMatrix drive_derivative(const ChainSpec& spec, const CouplingSchedule& schedule, double t) {
  const auto [dv, dw] = schedule.rate(t);
  RealMatrix dh = RealMatrix::Zero(spec.site_count(), spec.site_count());
  for (const Bond& bond : bond_list(spec)) {
    double d = 0.0;
    if (bond.kind == Bond::Kind::V) d = dv;
    else if (bond.kind == Bond::Kind::W) d = dw;
    else continue;
    dh(bond.a, bond.b) += d;
    dh(bond.b, bond.a) += d;
  }
  return dh;
}

namespace {

State place_on_cell(const ChainSpec& spec, const State& amps, int cell) {
  validate(spec);
  if (amps.size() != spec.transport_count)
    throw std::invalid_argument("amplitude vector must have length N");
  if (std::abs(amps.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("amplitude vector must be normalized");
  State psi = State::Zero(spec.site_count());
  for (int r = 1; r <= spec.transport_count; ++r)
    psi(transport_site(spec, r, cell)) = amps(r - 1);
  return psi;
}

}  // namespace

State encode_left_state(const ChainSpec& spec, const State& amps) {
  return place_on_cell(spec, amps, 1);
}

State target_right_state(const ChainSpec& spec, const State& amps) {
  return place_on_cell(spec, amps, spec.cell_count);
}

}  // namespace topochain
