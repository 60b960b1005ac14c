// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mvwave Project Contributors

#pragma once

#include <utility>

#include "mvwave/geometry.hpp"

namespace mvwave {

enum class KernelKind : std::uint8_t {
  Pattern,
  Wavelet1D,
  Wavelet2D,
  Scaling1D,
  Scaling2D,
  PulseTrain,
  Chirp,
};

inline const char* to_string(KernelKind k) {
  switch (k) {
    case KernelKind::Pattern: return "pattern";
    case KernelKind::Wavelet1D: return "wavelet1d";
    case KernelKind::Wavelet2D: return "wavelet2d";
    case KernelKind::Scaling1D: return "scaling1d";
    case KernelKind::Scaling2D: return "scaling2d";
    case KernelKind::PulseTrain: return "pulse-train";
    case KernelKind::Chirp: return "chirp";
  }
  return "?";
}

// A kernel sampled at pixel centres, (i + 1/2)/cell_px cells from its left
// support edge. 1D kinds hold a single sample row; 2D kinds are square.
//
// Wavelet samples already include the normalisation coefficient, so a
// wavelet's value set is exactly {coeff*bias, coeff*(bias+1)}. Scaling
// kernels keep all-ones samples; there `coeff` is the export factor the
// transforms apply (1/2 in 1D, 1/4 in 2D). Patterns and the auxiliary
// generators are plain {0,1} signals with bias 0, coeff 1.
struct Kernel {
  KernelKind kind = KernelKind::Pattern;
  int order = 1;
  Sign sign = Sign::Plus;
  int cell_px = 1;
  int support_cells = 1;  // horizontal extent; 2D kinds are square
  double bias = 0.0;
  double coeff = 1.0;
  Array2D samples;  // height 1 for 1D kinds
};

inline void check_cell_divisibility(int order, int cell_px) {
  require(cell_px >= 1, "cell size must be at least 1 px, got " + std::to_string(cell_px));
  require(cell_px % order == 0,
          "cell size " + std::to_string(cell_px) + " px is not divisible by pattern order " +
              std::to_string(order) + " (each pulse must span a whole number of pixels)");
}

namespace detail {

// Integer pixel spans [start, end) of every pulse. Exact because every pulse
// edge is a multiple of 1/order of a cell and order divides cell_px.
inline std::vector<std::pair<int, int>> pulse_spans_px(const PatternGeometry& g, int cell_px) {
  std::vector<std::pair<int, int>> spans;
  spans.reserve(static_cast<std::size_t>(g.order));
  int pulse_px = cell_px / g.order;
  for (const Fraction& left : pulse_left_edges(g)) {
    long long px = left.num * cell_px / left.den;
    spans.emplace_back(static_cast<int>(px), static_cast<int>(px) + pulse_px);
  }
  return spans;
}

}  // namespace detail

// The binary voxel pattern of one depth plane, sampled over its support.
inline Kernel sample_pattern(int order, Sign sign, int cell_px) {
  PatternGeometry g = pattern_geometry(order, sign);
  check_cell_divisibility(order, cell_px);
  Kernel k;
  k.kind = KernelKind::Pattern;
  k.order = order;
  k.sign = sign;
  k.cell_px = cell_px;
  k.support_cells = g.support_cells;
  k.samples = Array2D(g.support_cells * cell_px, 1, 0.0);
  for (auto [s, e] : detail::pulse_spans_px(g, cell_px))
    for (int x = s; x < e; ++x) k.samples.at(x, 0) = 1.0;
  return k;
}

inline double wavelet_bias(int order, int dims) {
  require(dims == 1 || dims == 2, "wavelet dimensionality must be 1 or 2");
  if (dims == 1) return order == 1 ? -0.5 : -1.0 / order;
  return order == 1 ? -0.25 : -1.0 / (static_cast<double>(order) * order);
}

inline double wavelet_coeff(int order, int dims) {
  require(dims == 1 || dims == 2, "wavelet dimensionality must be 1 or 2");
  if (order == 1) return 1.0;
  double n = order;
  if (dims == 1) return 0.5 * n / (n - 1.0);
  return 0.5 * (n * n) / (n * n - 1.0);
}

// 1D wavelet: coeff * (bias + pattern). Support is the pattern support,
// except order 1 whose support is stretched to two cells so the -1/2 bias
// cancels the single whole-cell pulse; the pulse fills the first cell. (That
// cell-aligned layout is a circular half-cell shift of the order-2 wavelet.)
inline Kernel make_wavelet_1d(int order, Sign sign, int cell_px) {
  check_cell_divisibility(order, cell_px);
  Kernel k;
  k.kind = KernelKind::Wavelet1D;
  k.order = order;
  k.sign = sign;
  k.cell_px = cell_px;
  k.support_cells = order == 1 ? 2 : order;
  k.bias = wavelet_bias(order, 1);
  k.coeff = wavelet_coeff(order, 1);
  double lo = k.coeff * k.bias;
  double hi = k.coeff * (k.bias + 1.0);
  k.samples = Array2D(k.support_cells * cell_px, 1, lo);
  if (order == 1) {
    for (int x = 0; x < cell_px; ++x) k.samples.at(x, 0) = hi;
  } else {
    PatternGeometry g = pattern_geometry(order, sign);
    for (auto [s, e] : detail::pulse_spans_px(g, cell_px))
      for (int x = s; x < e; ++x) k.samples.at(x, 0) = hi;
  }
  return k;
}

// 2D wavelet: coeff * (bias + P(x)*P(y)), the separable product of the 1D
// pattern with itself. Square support; order 1 spans 2x2 cells with the
// product pulse on the first cell.
inline Kernel make_wavelet_2d(int order, Sign sign, int cell_px) {
  check_cell_divisibility(order, cell_px);
  Kernel k;
  k.kind = KernelKind::Wavelet2D;
  k.order = order;
  k.sign = sign;
  k.cell_px = cell_px;
  k.support_cells = order == 1 ? 2 : order;
  k.bias = wavelet_bias(order, 2);
  k.coeff = wavelet_coeff(order, 2);
  double lo = k.coeff * k.bias;
  double hi = k.coeff * (k.bias + 1.0);

  int side = k.support_cells * cell_px;
  std::vector<char> mask(static_cast<std::size_t>(side), 0);
  if (order == 1) {
    for (int x = 0; x < cell_px; ++x) mask[static_cast<std::size_t>(x)] = 1;
  } else {
    PatternGeometry g = pattern_geometry(order, sign);
    for (auto [s, e] : detail::pulse_spans_px(g, cell_px))
      for (int x = s; x < e; ++x) mask[static_cast<std::size_t>(x)] = 1;
  }
  k.samples = Array2D(side, side, lo);
  for (int y = 0; y < side; ++y) {
    if (!mask[static_cast<std::size_t>(y)]) continue;
    double* row = k.samples.row(y);
    for (int x = 0; x < side; ++x)
      if (mask[static_cast<std::size_t>(x)]) row[x] = hi;
  }
  return k;
}

// Scaling function: all-ones over two cells per axis. `coeff` carries the
// export factor (1/2 or 1/4) applied when the transforms use the kernel.
inline Kernel make_scaling(int dims, int cell_px) {
  require(dims == 1 || dims == 2, "scaling dimensionality must be 1 or 2");
  require(cell_px >= 1, "cell size must be at least 1 px, got " + std::to_string(cell_px));
  Kernel k;
  k.kind = dims == 1 ? KernelKind::Scaling1D : KernelKind::Scaling2D;
  k.order = 1;
  k.sign = Sign::Plus;
  k.cell_px = cell_px;
  k.support_cells = 2;
  k.bias = 0.0;
  k.coeff = dims == 1 ? 0.5 : 0.25;
  k.samples = Array2D(2 * cell_px, dims == 1 ? 1 : 2 * cell_px, 1.0);
  return k;
}

// Test/inspection signal generators; not used by the transforms.
//
// PulseTrain: one pulse per cell, width 1/2 cell, left edge on the cell edge.
// Chirp: per-cell pulse bursts at 50% duty whose period shrinks linearly from
// 1/2 cell in the first cell to 2 px in the last; each cell's first pulse
// starts at the cell's left edge.
inline Kernel make_auxiliary(KernelKind kind, int cell_px, int length_cells) {
  require(kind == KernelKind::PulseTrain || kind == KernelKind::Chirp,
          "auxiliary kind must be pulse-train or chirp");
  require(cell_px >= 1, "cell size must be at least 1 px, got " + std::to_string(cell_px));
  require(length_cells >= 1, "signal length must be at least 1 cell");
  if (kind == KernelKind::Chirp)
    require(cell_px >= 4,
            "chirp needs a cell of at least 4 px (the final period is 2 px), got " +
                std::to_string(cell_px));

  Kernel k;
  k.kind = kind;
  k.order = 1;
  k.sign = Sign::Plus;
  k.cell_px = cell_px;
  k.support_cells = length_cells;
  k.samples = Array2D(length_cells * cell_px, 1, 0.0);

  for (int c = 0; c < length_cells; ++c) {
    double period;  // cells
    if (kind == KernelKind::PulseTrain) {
      period = 1.0;
    } else {
      double t = length_cells == 1 ? 1.0 : static_cast<double>(c) / (length_cells - 1);
      period = 0.5 + (2.0 / cell_px - 0.5) * t;
    }
    double duty = kind == KernelKind::PulseTrain ? 0.5 : period * 0.5;
    for (int i = 0; i < cell_px; ++i) {
      double local = (i + 0.5) / cell_px;  // position within the cell
      double phase = std::fmod(local, period);
      if (phase < duty) k.samples.at(c * cell_px + i, 0) = 1.0;
    }
  }
  return k;
}

}  // namespace mvwave
