// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mvwave Project Contributors

#pragma once

#include "mvwave/core.hpp"

namespace mvwave {

// A luminance image whose pixel grid is partitioned into square cells of
// cell_px pixels. Intensities are kept as doubles in [0, 1] while working;
// quantization happens only on export.
struct MultiviewImage {
  Array2D pixels;
  int cell_px = 0;
  Parallax parallax = Parallax::FP;

  int width() const { return pixels.width; }
  int height() const { return pixels.height; }
  int width_cells() const { return pixels.width / cell_px; }
  int height_cells() const { return pixels.height / cell_px; }
};

inline MultiviewImage make_image(int width_px, int height_px, int cell_px, Parallax parallax) {
  require(cell_px >= 1, "cell size must be at least 1 px, got " + std::to_string(cell_px));
  require(width_px > 0 && height_px > 0,
          "image dimensions must be positive, got " + std::to_string(width_px) + "x" +
              std::to_string(height_px));
  require(width_px % cell_px == 0 && height_px % cell_px == 0,
          "image dimensions " + std::to_string(width_px) + "x" + std::to_string(height_px) +
              " are not a whole number of " + std::to_string(cell_px) + " px cells");
  return MultiviewImage{Array2D(width_px, height_px), cell_px, parallax};
}

inline double clamp01(double v) { return v < 0.0 ? 0.0 : v > 1.0 ? 1.0 : v; }

inline void clamp01_inplace(Array2D& a) {
  for (double& v : a.data) v = clamp01(v);
}

// Pearson correlation between two equally sized arrays. Returns 0 when
// either side is constant (no variance to correlate against).
inline double ncc(const Array2D& a, const Array2D& b) {
  require(a.width == b.width && a.height == b.height,
          "correlation needs equally sized arrays");
  std::size_t n = a.data.size();
  require(n > 0, "correlation of empty arrays");
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a.data[i];
    mb += b.data[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double da = a.data[i] - ma, db = b.data[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace mvwave
