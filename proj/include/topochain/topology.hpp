#ifndef TOPOCHAIN_TOPOLOGY_HPP
#define TOPOCHAIN_TOPOLOGY_HPP

#include <stdexcept>

#include "topochain/chain.hpp"

namespace topochain {

struct GapClosedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two-band Bloch reduction of the chain with the mediator row as the second
// sublattice.  LeftCell groups (A_m, B_m): h(k) = (v + w cos k) sx + w sin k sy.
// RightCell groups (B_m, A_{m+1}): h(k) = (w + v cos k) sx + v sin k sy.
// With an odd site count one of the two groupings always winds once, so the
// convention is the caller's choice rather than auto-selected.
enum class CellConvention { LeftCell, RightCell };

struct BlochModel {
  CellConvention convention = CellConvention::LeftCell;
  double v = 0.0;
  double w = 0.0;
  int k_points = 2001;
};

// h(k) = d_x(k) + i d_y(k)
Complex bloch_vector(const BlochModel& model, double k);

struct WindingResult {
  int winding = 0;
  double residual = 0.0;  // |raw phase total / 2pi - winding|
};

// Accumulated argument increments of h(k) over k in [-pi, pi], segment by
// segment (branch-cut safe); requires the gap open (min |h| > 1e-9 scale).
WindingResult winding_number(const BlochModel& model);

}  // namespace topochain

#endif
