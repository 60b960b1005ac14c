// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mvwave Project Contributors

#pragma once

#include <complex>
#include <numbers>
#include <span>

#include "mvwave/kernels.hpp"

namespace mvwave {

// Spectra are tabulated against angular frequency in radians per cell.
// `analytic` and `numeric` hold the signed real amplitude of the Fourier
// transform with the linear phase of the support centre removed; for a
// kernel with no symmetry about its centre, `numeric` falls back to the
// magnitude. Empty vectors mean "column not computed".
struct SpectrumTable {
  std::vector<double> omega;
  std::vector<double> analytic;
  std::vector<double> numeric;
  std::vector<double> power;
};

namespace detail {

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

enum class Parity { Even, Odd, None };

inline Parity profile_parity(const std::vector<double>& p) {
  bool even = true, odd = true;
  std::size_t n = p.size();
  for (std::size_t i = 0; i < n && (even || odd); ++i) {
    double a = p[i], b = p[n - 1 - i];
    if (a != b) even = false;
    if (a != -b) odd = false;
  }
  if (even) return Parity::Even;
  if (odd) return Parity::Odd;
  return Parity::None;
}

}  // namespace detail

inline bool analytic_ft_supported(KernelKind kind) {
  return kind == KernelKind::Pattern || kind == KernelKind::Wavelet1D ||
         kind == KernelKind::Scaling1D;
}

// Exact continuous Fourier transform, one shifted-sinc term per pulse plus
// the bias term for wavelets, phase-referenced to the support centre. The
// order-1 wavelet is odd about its centre, so its signed amplitude is the
// sine (imaginary) component; everything else is even and uses the cosine
// component.
inline SpectrumTable analytic_ft(const Kernel& k, std::span<const double> omegas) {
  require(analytic_ft_supported(k.kind),
          std::string("analytic spectrum unsupported for kernel kind '") + to_string(k.kind) +
              "' (use the numeric spectrum)");

  SpectrumTable t;
  t.omega.assign(omegas.begin(), omegas.end());
  t.analytic.reserve(omegas.size());

  if (k.kind == KernelKind::Scaling1D) {
    for (double w : omegas) t.analytic.push_back(2.0 * detail::sinc(w));
    return t;
  }

  PatternGeometry g = pattern_geometry(k.order, k.sign);
  int support = k.kind == KernelKind::Wavelet1D && k.order == 1 ? 2 : g.support_cells;
  double centre = support / 2.0;
  double pulse_width = 1.0 / k.order;

  std::vector<double> offsets;  // pulse centres relative to the support centre
  {
    Fraction half_width(1, 2LL * k.order);
    for (const Fraction& left : pulse_left_edges(g))
      offsets.push_back((left + half_width).value() - centre);
  }

  bool wavelet = k.kind == KernelKind::Wavelet1D;
  bool odd = wavelet && k.order == 1;
  for (double w : omegas) {
    if (w == 0.0) {
      // Limits: pulses carry unit total area; a wavelet's bias cancels it.
      t.analytic.push_back(wavelet ? 0.0 : 1.0);
      continue;
    }
    std::complex<double> acc(0.0, 0.0);
    double pulse_ft = pulse_width * detail::sinc(w * pulse_width / 2.0);
    for (double u : offsets) acc += pulse_ft * std::exp(std::complex<double>(0.0, -w * u));
    if (wavelet) {
      // bias * support = -1 exactly, spread over the whole support
      acc = k.coeff * (acc - detail::sinc(support * w / 2.0));
    }
    t.analytic.push_back(odd ? acc.imag() : acc.real());
  }
  return t;
}

// Discrete Fourier transform of the samples on the zero-padded DFT bin grid,
// rescaled to radians per cell and corrected by the piecewise-constant
// reconstruction factor sinc(w/(2*cell_px)). Pulse edges always lie on pixel
// boundaries, so this is the exact continuous transform of the kernel and
// serves as an independent cross-check of analytic_ft. For 2D kernels the
// rows are integrated out first, giving the w_y = 0 slice of the 2D
// transform. omega_max <= 0 means "up to the pixel Nyquist rate".
inline SpectrumTable numeric_ft(const Kernel& k, int pad_factor, double omega_max = 0.0) {
  require(pad_factor >= 1, "pad factor must be >= 1, got " + std::to_string(pad_factor));
  int len = k.samples.width;
  std::vector<double> profile(static_cast<std::size_t>(len), 0.0);
  if (k.samples.height == 1) {
    const double* row = k.samples.row(0);
    profile.assign(row, row + len);
  } else {
    for (int x = 0; x < len; ++x) {
      double s = 0.0;
      for (int y = 0; y < k.samples.height; ++y) s += k.samples.at(x, y);
      profile[static_cast<std::size_t>(x)] = s / k.cell_px;
    }
  }

  double dx = 1.0 / k.cell_px;
  double nyquist = std::numbers::pi * k.cell_px;
  if (omega_max <= 0.0 || omega_max > nyquist) omega_max = nyquist;
  long long n_bins = static_cast<long long>(len) * pad_factor;
  double centre = k.support_cells / 2.0;
  detail::Parity parity = detail::profile_parity(profile);

  SpectrumTable t;
  for (long long j = 0;; ++j) {
    double w = 2.0 * std::numbers::pi * static_cast<double>(j) * k.cell_px / n_bins;
    if (w > omega_max * (1.0 + 1e-12) || j > n_bins / 2) break;
    std::complex<double> acc(0.0, 0.0);
    std::complex<double> phase = std::exp(std::complex<double>(0.0, -w * dx / 2.0));
    std::complex<double> step = std::exp(std::complex<double>(0.0, -w * dx));
    for (double v : profile) {
      acc += v * phase;
      phase *= step;
    }
    acc *= dx * detail::sinc(w * dx / 2.0);
    std::complex<double> g = std::exp(std::complex<double>(0.0, w * centre)) * acc;
    double value = parity == detail::Parity::Even  ? g.real()
                   : parity == detail::Parity::Odd ? g.imag()
                                                   : std::abs(g);
    t.omega.push_back(w);
    t.numeric.push_back(value);
  }
  return t;
}

// Analytic + numeric on a shared grid, plus the power column (|F|^2 of the
// analytic curve where available, of the numeric one otherwise).
inline SpectrumTable spectrum_table(const Kernel& k, int pad_factor, double omega_max) {
  SpectrumTable t = numeric_ft(k, pad_factor, omega_max);
  if (analytic_ft_supported(k.kind)) t.analytic = analytic_ft(k, t.omega).analytic;
  const std::vector<double>& base = t.analytic.empty() ? t.numeric : t.analytic;
  t.power.reserve(base.size());
  for (double v : base) t.power.push_back(v * v);
  return t;
}

// Published closed forms, kept as cross-checks for the per-pulse summation.
namespace closed_form {

// Order-1 pattern: a single cell-wide pulse.
inline double single_cell_pattern(double w) { return detail::sinc(w / 2.0); }

// Order-2 pattern behind the screen: the two pulses merge into one cell-wide
// pulse, so the spectrum coincides with the order-1 pattern's.
inline double merged_pulse_pattern(double w) { return detail::sinc(w / 2.0); }

// Order-2 pattern in front of the screen: two half-cell pulses at the outer
// support edges.
inline double split_pulse_pattern(double w) {
  if (w == 0.0) return 1.0;
  double c = std::cos(w / 4.0);
  return (2.0 / w) * std::sin(w / 2.0) * (4.0 * c * c - 3.0);
}

// Order-2 wavelet (sign behind the screen; the front sign is its negative).
inline double two_cell_wavelet(double w) { return detail::sinc(w / 2.0) - detail::sinc(w); }

}  // namespace closed_form

}  // namespace mvwave
