#ifndef TOPOCHAIN_CHAIN_HPP
#define TOPOCHAIN_CHAIN_HPP

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace topochain {

using Complex = std::complex<double>;
using State = Eigen::VectorXcd;      // amplitudes over chain sites, unit norm
using RealMatrix = Eigen::MatrixXd;  // hopping matrix in the one-excitation sector

constexpr double kPi = 3.14159265358979323846;

// Static description of an extended SSH chain: M unit cells, each holding N
// transport qubits coupled in a row (couplings g_1..g_{N-1}) plus one mediator
// qubit, with the mediator of the last cell removed.  Energies are expressed
// in units of g0, times in 1/g0; energy_unit anchors g0 in rad/s for external
// reporting only.
struct ChainSpec {
  int transport_count = 2;                    // N
  int cell_count = 2;                         // M
  std::vector<double> intra_couplings{1.0};   // g_1..g_{N-1} (units of g0)
  double drive_amplitude = 5.0;               // J (units of g0)
  double drive_frequency = 0.1;               // omega (units of g0)
  double energy_unit = 2.0 * kPi * 10.0e6;    // g0 in rad/s

  int site_count() const { return (transport_count + 1) * cell_count - 1; }
};

// Throws std::invalid_argument when a field violates its range.
void validate(const ChainSpec& spec);

struct SiteIndex {
  enum class Kind { Transport, Mediator };
  Kind kind;
  int row;   // 1..N for transport sites, 0 otherwise
  int cell;  // 1..M (mediators: 1..M-1)
  int flat;  // serial index, cell-major: A_{1,m}..A_{N,m}, B_m, A_{1,m+1}, ...
};

int transport_site(const ChainSpec& spec, int row, int cell);
int mediator_site(const ChainSpec& spec, int cell);
SiteIndex site_at(const ChainSpec& spec, int flat);
std::vector<int> mediator_sites(const ChainSpec& spec);

// One coupled pair of sites.  Bonds are enumerated in a fixed canonical order
// (cell-major; intra-cell rungs first, then the v and w bonds leaving the
// cell) so that disorder offsets map onto bonds reproducibly.
struct Bond {
  enum class Kind { Intra, V, W };
  Kind kind;
  int row;   // coupling index r for intra bonds, 0 otherwise
  int cell;  // owning cell
  int a, b;  // flat site indices
};

std::vector<Bond> bond_list(const ChainSpec& spec);
std::size_t bond_count(const ChainSpec& spec);

// Real symmetric hopping matrix for staggered couplings (v, w).  When present,
// bond_offsets supplies one additive offset per bond in canonical order.
RealMatrix build_hamiltonian(const ChainSpec& spec, double v, double w,
                             std::span<const double> bond_offsets = {});

// v(t) = J[1 - cos(omega t)], w(t) = J[1 + cos(omega t)]; v + w = 2J.
struct CouplingSchedule {
  double amplitude;   // J
  double frequency;   // omega

  double sweep_time() const { return kPi / frequency; }
  // Unchecked trigonometric evaluation, valid for any t (the drive formula
  // extends smoothly past the sweep; timing-disorder runs rely on this).
  std::pair<double, double> value(double t) const;
  // (dv/dt, dw/dt)
  std::pair<double, double> rate(double t) const;
};

CouplingSchedule schedule_for(const ChainSpec& spec);

// Range-checked sweep evaluation; throws std::out_of_range outside [0, pi/omega].
std::pair<double, double> coupling_at(const CouplingSchedule& schedule, double t);

// dH/dt for the drive (the v and w bonds only; intra-cell bonds are static).
RealMatrix drive_derivative(const ChainSpec& spec, const CouplingSchedule& schedule, double t);

// State with the given amplitudes on the transport row of the first (left)
// or last (right) cell and zero elsewhere.  amps must have length N and unit
// norm within 1e-12.
State encode_left_state(const ChainSpec& spec, const State& amps);
State target_right_state(const ChainSpec& spec, const State& amps);

}  // namespace topochain

#endif
