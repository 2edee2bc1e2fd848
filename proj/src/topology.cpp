#include "topochain/topology.hpp"

#include <cmath>

namespace topochain {

Complex bloch_vector(const BlochModel& model, double k) {
  if (model.convention == CellConvention::LeftCell)
    return {model.v + model.w * std::cos(k), model.w * std::sin(k)};
  return {model.w + model.v * std::cos(k), model.v * std::sin(k)};
}

WindingResult winding_number(const BlochModel& model) {
  if (model.v < 0.0 || model.w < 0.0)
    throw std::invalid_argument("couplings v, w must be non-negative");
  if (model.k_points < 16) throw std::invalid_argument("k_points too small");

  const double scale = std::max(model.v + model.w, 1e-300);
  double total = 0.0;
  Complex prev = bloch_vector(model, -kPi);
  double min_mag = std::abs(prev);
  for (int j = 1; j < model.k_points; ++j) {
    const double k = -kPi + 2.0 * kPi * j / (model.k_points - 1);
    const Complex cur = bloch_vector(model, k);
    min_mag = std::min(min_mag, std::abs(cur));
    total += std::arg(cur / prev);
    prev = cur;
  }
  if (min_mag <= 1e-9 * scale)
    throw GapClosedError("bulk gap closed: h(k) reaches the origin (v = w)");

  const double raw = total / (2.0 * kPi);
  WindingResult result;
  result.winding = static_cast<int>(std::lround(raw));
  result.residual = std::abs(raw - result.winding);
  return result;
}

}  // namespace topochain
