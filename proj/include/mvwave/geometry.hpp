// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mvwave Project Contributors

#pragma once

#include "mvwave/core.hpp"

namespace mvwave {

// Unit rectangular pulse: 1 strictly inside (-1/2, 1/2), 1/2 exactly on the
// edges, 0 outside.
inline double rect_pulse(double x) {
  double a = std::abs(x);
  if (a < 0.5) return 1.0;
  if (a == 0.5) return 0.5;
  return 0.0;
}

// Placement of the order-n pulse group inside its support, in cell units.
// An order-n pattern spreads n pulses of width 1/n (unit height, total area
// 1) over its support. For planes in front of the screen the pulses are
// pushed apart, first/last pulse flush with the outer support boundary; for
// planes behind the screen they are pulled together, flush with the inner
// boundary of the outermost cells. Order 1 is a single centred pulse filling
// one cell; the sign is ignored and period/gap are not applicable.
struct PatternGeometry {
  int order = 1;
  Sign sign = Sign::Plus;
  int support_cells = 1;
  Fraction pulse_width;                   // 1/order of a cell
  Fraction initial_phase;                 // centre of the first pulse
  std::optional<Fraction> pulse_period;   // centre-to-centre distance
  std::optional<Fraction> pulse_gap;      // edge-to-edge distance
};

inline PatternGeometry pattern_geometry(int order, Sign sign) {
  require(order >= 1, "pattern order must be >= 1, got " + std::to_string(order));
  PatternGeometry g;
  g.order = order;
  g.sign = sign;
  g.pulse_width = Fraction(1, order);
  if (order == 1) {
    g.support_cells = 1;
    g.initial_phase = Fraction(1, 2);
    return g;
  }
  g.support_cells = order;
  if (sign == Sign::Plus) {
    g.initial_phase = Fraction(1, 2 * order);
    g.pulse_period = Fraction(order + 1, order);
    g.pulse_gap = Fraction(1);
  } else {
    g.initial_phase = Fraction(2 * order - 1, 2 * order);
    g.pulse_period = Fraction(order - 1, order);
    g.pulse_gap = Fraction(order - 2, order);  // collapses to 0 at order 2
  }
  return g;
}

inline PatternGeometry pattern_geometry_for(int depth) {
  return pattern_geometry(order_of(depth), sign_of(depth));
}

// Left edge of every pulse, in cells from the support's left edge.
// Adjacent spans may touch (gap 0 at order 2, behind the screen), which
// merges the two pulses into one double-width pulse.
inline std::vector<Fraction> pulse_left_edges(const PatternGeometry& g) {
  std::vector<Fraction> edges;
  edges.reserve(static_cast<std::size_t>(g.order));
  Fraction half_width(1, 2LL * g.order);
  for (int i = 0; i < g.order; ++i) {
    Fraction centre = g.initial_phase;
    if (g.pulse_period) centre = centre + Fraction(i) * *g.pulse_period;
    edges.push_back(centre - half_width);
  }
  return edges;
}

}  // namespace mvwave
