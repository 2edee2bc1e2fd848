#include "topochain/hardware.hpp"

#include <cmath>

namespace topochain {

namespace {

void check(const CouplerParams& params) {
  if (!(params.gate_inductance > 0.0) || !(params.coupler_inductance > 0.0) ||
      !(params.qubit_inductance > 0.0))
    throw std::invalid_argument("inductances must be positive");
  if (!(params.qubit_frequency > 0.0))
    throw std::invalid_argument("qubit frequency must be positive");
}

double refine(double delta, double ratio, double phi_ext) {
  // Newton polish; the bisection seed is already within ~1e-10.
  for (int it = 0; it < 8; ++it) {
    const double f = delta + ratio * std::sin(delta) - phi_ext;
    const double fp = 1.0 + ratio * std::cos(delta);
    if (std::abs(fp) < 1e-12) break;
    const double next = delta - f / fp;
    if (std::abs(next - delta) < 1e-15) return next;
    delta = next;
  }
  return delta;
}

double bisect(double lo, double hi, double ratio, double phi_ext) {
  auto f = [&](double d) { return d + ratio * std::sin(d) - phi_ext; };
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((flo < 0.0) == (fmid < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-14) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double solve_junction_phase(const CouplerParams& params, double phi_ext) {
  check(params);
  const double ratio = 2.0 * params.gate_inductance / params.coupler_inductance;
  const double lo = phi_ext - ratio;
  const double hi = phi_ext + ratio;

  if (ratio < 1.0) {
    // Strictly monotone map: unique root inside the bracket.
    const double root = refine(bisect(lo, hi, ratio, phi_ext), ratio, phi_ext);
    return root;
  }

  // Non-monotone regime: scan for every sign change in the bracket.
  auto f = [&](double d) { return d + ratio * std::sin(d) - phi_ext; };
  std::vector<double> roots;
  const int cells = 4096;
  double prev_d = lo;
  double prev_f = f(lo);
  for (int i = 1; i <= cells; ++i) {
    const double d = lo + (hi - lo) * i / cells;
    const double fd = f(d);
    if (prev_f == 0.0) roots.push_back(prev_d);
    else if ((prev_f < 0.0) != (fd < 0.0))
      roots.push_back(refine(bisect(prev_d, d, ratio, phi_ext), ratio, phi_ext));
    prev_d = d;
    prev_f = fd;
  }
  if (roots.empty()) roots.push_back(refine(bisect(lo, hi, ratio, phi_ext), ratio, phi_ext));
  if (roots.size() > 1)
    throw MultivaluedPhaseError("junction phase is multivalued for 2Lg/LT >= 1", roots);
  return roots.front();
}

double flux_to_coupling(const CouplerParams& params, double phi_ext) {
  const double delta = solve_junction_phase(params, phi_ext);
  const double lg = params.gate_inductance;
  const double denom =
      params.coupler_inductance + 2.0 * lg * std::cos(delta);
  if (std::abs(denom) < 1e-18)
    throw std::domain_error("coupling diverges: L_T + 2 L_g cos(delta) = 0");
  return -(lg * lg * std::cos(delta)) /
         (2.0 * (params.qubit_inductance + lg) * denom) * params.qubit_frequency;
}

std::vector<FluxSweepRow> flux_sweep(const CouplerParams& params, double lo, double hi,
                                     int points) {
  if (points < 2) throw std::invalid_argument("need at least 2 sweep points");
  if (!(hi > lo)) throw std::invalid_argument("sweep bounds inverted");
  std::vector<FluxSweepRow> rows(points);
  for (int i = 0; i < points; ++i) {
    const double phi = lo + (hi - lo) * i / (points - 1);
    rows[i].phi_ext = phi;
    rows[i].delta = solve_junction_phase(params, phi);
    rows[i].coupling = flux_to_coupling(params, phi);
  }
  return rows;
}

}  // namespace topochain
