// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mvwave Project Contributors

#pragma once

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <thread>

#include "mvwave/image.hpp"
#include "mvwave/kernels.hpp"

namespace mvwave {

struct TransformConfig {
  std::vector<int> planes;  // empty means the default +/-1..+/-8 band
  bool include_scaling = true;
};

struct Rect {
  int x = 0, y = 0, width = 0, height = 0;
};

// Output of the direct transform: one correlation plane per depth, plus the
// optional scaling (local mean) plane. plane_ids is kept sorted ascending and
// planes[i] corresponds to plane_ids[i]. The scaling plane already carries
// its export weight.
struct CoefficientVolume {
  int width = 0, height = 0, cell_px = 0;
  Parallax analysis_parallax = Parallax::FP;
  std::vector<int> plane_ids;
  std::vector<Array2D> planes;
  Array2D scaling;

  bool has_scaling() const { return !scaling.empty(); }
};

inline std::vector<int> default_planes() {
  std::vector<int> p;
  for (int d = -8; d <= 8; ++d)
    if (d != 0) p.push_back(d);
  return p;
}

// Divisibility check that names the plane, so a bad plane in a long list is
// easy to spot from the message alone.
inline void check_plane_divisibility(int depth, int cell_px) {
  try {
    check_cell_divisibility(order_of(depth), cell_px);
  } catch (const Error& e) {
    throw Error("depth plane " + std::to_string(depth) + ": " + e.what());
  }
}

namespace detail {

inline int thread_budget() {
  if (const char* env = std::getenv("MVWAVE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min(v, 64L));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(0..count-1) on up to thread_budget() workers. Each index must
// write only to its own output slot; results are then independent of the
// schedule.
template <typename Fn>
void run_tasks(std::size_t count, Fn&& fn) {
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_budget()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Correlation with the kernel anchored at its top-left corner and the image
// zero-padded, so the output has the image's size. The accumulation order is
// fixed (kernel rows, then columns) to keep results reproducible.
inline Array2D correlate(const Array2D& img, const Array2D& taps) {
  Array2D out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    int jmax = std::min(taps.height, img.height - y);
    for (int x = 0; x < img.width; ++x) {
      int imax = std::min(taps.width, img.width - x);
      double acc = 0.0;
      for (int j = 0; j < jmax; ++j) {
        const double* ir = img.row(y + j) + x;
        const double* kr = taps.row(j);
        for (int i = 0; i < imax; ++i) acc += ir[i] * kr[i];
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

// Transpose of correlate: scatters scale * coeffs(x, y) * taps back onto the
// pixel grid. Accumulates into out, which must have the coefficient plane's
// size. stride > 1 restricts the scatter to coefficients on that lattice,
// which is how synthesis re-renders one kernel per cell anchor instead of one
// per pixel shift.
inline void correlate_adjoint_accum(Array2D& out, const Array2D& coeffs, const Array2D& taps,
                                    double scale, int stride = 1) {
  for (int y = 0; y < coeffs.height; y += stride) {
    int jmax = std::min(taps.height, coeffs.height - y);
    for (int x = 0; x < coeffs.width; x += stride) {
      double v = coeffs.at(x, y) * scale;
      if (v == 0.0) continue;
      int imax = std::min(taps.width, coeffs.width - x);
      for (int j = 0; j < jmax; ++j) {
        double* orow = out.row(y + j) + x;
        const double* kr = taps.row(j);
        for (int i = 0; i < imax; ++i) orow[i] += v * kr[i];
      }
    }
  }
}

inline double tap_energy(const Array2D& taps) {
  double e = 0.0;
  for (double v : taps.data) e += v * v;
  return e;
}

}  // namespace detail

// Analysis kernel for one depth plane. Full-parallax images get the 2D
// wavelet; horizontal-parallax-only images get the 1D wavelet repeated over
// one cell of rows, so every view row is analysed identically.
inline Array2D analysis_wavelet(int depth, Parallax parallax, int cell_px) {
  int n = order_of(depth);
  Sign s = sign_of(depth);
  if (parallax == Parallax::FP) return make_wavelet_2d(n, s, cell_px).samples;
  Kernel k = make_wavelet_1d(n, s, cell_px);
  Array2D taps(k.samples.width, cell_px);
  for (int y = 0; y < cell_px; ++y)
    std::copy(k.samples.row(0), k.samples.row(0) + k.samples.width, taps.row(y));
  return taps;
}

inline Array2D analysis_scaling_taps(Parallax parallax, int cell_px) {
  Array2D taps(2 * cell_px, parallax == Parallax::FP ? 2 * cell_px : cell_px);
  std::fill(taps.data.begin(), taps.data.end(), 1.0);
  return taps;
}

inline double scaling_export_coeff(Parallax parallax) {
  return parallax == Parallax::FP ? 0.25 : 0.5;
}

inline void validate_volume(const CoefficientVolume& vol) {
  require(vol.width > 0 && vol.height > 0 && vol.cell_px >= 1, "coefficient volume has empty geometry");
  require(vol.width % vol.cell_px == 0 && vol.height % vol.cell_px == 0,
          "coefficient volume size is not a whole number of cells");
  require(vol.plane_ids.size() == vol.planes.size(),
          "coefficient volume has mismatched plane id and plane data counts");
  for (std::size_t i = 0; i < vol.plane_ids.size(); ++i) {
    order_of(vol.plane_ids[i]);  // rejects 0
    require(i == 0 || vol.plane_ids[i - 1] < vol.plane_ids[i],
            "coefficient volume plane ids must be strictly ascending");
    require(vol.planes[i].width == vol.width && vol.planes[i].height == vol.height,
            "coefficient plane " + std::to_string(vol.plane_ids[i]) + " has the wrong size");
  }
  if (vol.has_scaling())
    require(vol.scaling.width == vol.width && vol.scaling.height == vol.height,
            "scaling plane has the wrong size");
}

// Correlates the image against the wavelet of every requested depth plane
// (and the scaling kernel), producing one same-sized coefficient plane each.
inline CoefficientVolume direct_cwt(const MultiviewImage& img, const TransformConfig& cfg = {}) {
  require(!img.pixels.empty(), "cannot transform an empty image");
  std::vector<int> ids = cfg.planes.empty() ? default_planes() : cfg.planes;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (int d : ids) check_plane_divisibility(d, img.cell_px);
  require(!ids.empty() || cfg.include_scaling, "transform needs at least one plane");

  CoefficientVolume vol;
  vol.width = img.width();
  vol.height = img.height();
  vol.cell_px = img.cell_px;
  vol.analysis_parallax = img.parallax;
  vol.plane_ids = ids;
  vol.planes.resize(ids.size());

  std::vector<Array2D> taps(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i)
    taps[i] = analysis_wavelet(ids[i], img.parallax, img.cell_px);

  std::size_t tasks = ids.size() + (cfg.include_scaling ? 1 : 0);
  detail::run_tasks(tasks, [&](std::size_t i) {
    if (i < ids.size()) {
      vol.planes[i] = detail::correlate(img.pixels, taps[i]);
    } else {
      Array2D s = detail::correlate(img.pixels, analysis_scaling_taps(img.parallax, img.cell_px));
      double w = scaling_export_coeff(img.parallax);
      for (double& v : s.data) v *= w;
      vol.scaling = std::move(s);
    }
  });
  return vol;
}

// Synthesis back onto the display's cell grid: the coefficient sampled at
// each cell anchor re-renders that plane's kernel there, weighted by the
// kernel's energy so a unit-amplitude pattern analysed and re-rendered comes
// back at unit amplitude, and the scaling plane restores the local mean.
// Voxel patterns live on cell anchors, so this rebuilds an image in the
// displayable intensity range instead of smearing every pixel-shifted
// coefficient (which would amplify the pass band by the kernel support size).
// target_parallax selects the kernel family to rebuild with, which is how a
// full-parallax analysis can be re-rendered for a horizontal-parallax-only
// display. The result is not clamped; display clamping happens on export.
inline MultiviewImage inverse_cwt(const CoefficientVolume& vol, Parallax target_parallax) {
  validate_volume(vol);
  for (int d : vol.plane_ids) check_plane_divisibility(d, vol.cell_px);
  MultiviewImage out = make_image(vol.width, vol.height, vol.cell_px, target_parallax);

  std::size_t nplanes = vol.plane_ids.size();
  std::vector<Array2D> partial(nplanes + (vol.has_scaling() ? 1 : 0));
  detail::run_tasks(partial.size(), [&](std::size_t i) {
    Array2D acc(vol.width, vol.height);
    if (i < nplanes) {
      Array2D taps = analysis_wavelet(vol.plane_ids[i], target_parallax, vol.cell_px);
      detail::correlate_adjoint_accum(acc, vol.planes[i], taps, 1.0 / detail::tap_energy(taps),
                                      vol.cell_px);
    } else {
      Array2D taps = analysis_scaling_taps(target_parallax, vol.cell_px);
      double n_src =
          static_cast<double>(analysis_scaling_taps(vol.analysis_parallax, vol.cell_px).size());
      // each pixel sits under (taps.width / cell) * (taps.height / cell)
      // anchored copies of the all-ones scaling kernel
      double cover = static_cast<double>(taps.size()) /
                     (static_cast<double>(vol.cell_px) * vol.cell_px);
      double w0 = 1.0 / (scaling_export_coeff(vol.analysis_parallax) * n_src * cover);
      detail::correlate_adjoint_accum(acc, vol.scaling, taps, w0, vol.cell_px);
    }
    partial[i] = std::move(acc);
  });
  for (const Array2D& p : partial)
    for (std::size_t k = 0; k < p.data.size(); ++k) out.pixels.data[k] += p.data[k];
  return out;
}

// Exact transpose of direct_cwt at the volume's own parallax: no energy
// normalisation, and the scaling plane keeps its export weight. Satisfies
// <direct(I), V> == <I, adjoint(V)> for all images I and volumes V.
inline MultiviewImage inverse_adjoint(const CoefficientVolume& vol) {
  validate_volume(vol);
  for (int d : vol.plane_ids) check_plane_divisibility(d, vol.cell_px);
  MultiviewImage out = make_image(vol.width, vol.height, vol.cell_px, vol.analysis_parallax);

  std::size_t nplanes = vol.plane_ids.size();
  std::vector<Array2D> partial(nplanes + (vol.has_scaling() ? 1 : 0));
  detail::run_tasks(partial.size(), [&](std::size_t i) {
    Array2D acc(vol.width, vol.height);
    if (i < nplanes) {
      Array2D taps = analysis_wavelet(vol.plane_ids[i], vol.analysis_parallax, vol.cell_px);
      detail::correlate_adjoint_accum(acc, vol.planes[i], taps, 1.0);
    } else {
      Array2D taps = analysis_scaling_taps(vol.analysis_parallax, vol.cell_px);
      detail::correlate_adjoint_accum(acc, vol.scaling, taps,
                                      scaling_export_coeff(vol.analysis_parallax));
    }
    partial[i] = std::move(acc);
  });
  for (const Array2D& p : partial)
    for (std::size_t k = 0; k < p.data.size(); ++k) out.pixels.data[k] += p.data[k];
  return out;
}

// Mirrors the scene depth-wise about the screen: every plane keeps its data
// but takes the opposite depth id. Applying it twice is the identity.
inline CoefficientVolume reverse_depth(CoefficientVolume vol) {
  for (int& d : vol.plane_ids) d = -d;
  std::reverse(vol.plane_ids.begin(), vol.plane_ids.end());
  std::reverse(vol.planes.begin(), vol.planes.end());
  return vol;
}

struct PlaneEnergy {
  int depth = 0;
  double energy = 0.0;
};

// Sum of squared coefficients per wavelet plane, optionally over a pixel
// rectangle, in plane id order. The scaling plane measures brightness, not
// depth content, so it never appears in the table.
inline std::vector<PlaneEnergy> plane_energy(const CoefficientVolume& vol,
                                             const std::optional<Rect>& roi = std::nullopt) {
  validate_volume(vol);
  Rect r = roi.value_or(Rect{0, 0, vol.width, vol.height});
  require(r.width > 0 && r.height > 0, "energy region must be non-empty");
  require(r.x >= 0 && r.y >= 0 && r.x + r.width <= vol.width && r.y + r.height <= vol.height,
          "energy region extends outside the coefficient volume");
  auto sum_sq = [&](const Array2D& a) {
    double e = 0.0;
    for (int y = r.y; y < r.y + r.height; ++y) {
      const double* row = a.row(y);
      for (int x = r.x; x < r.x + r.width; ++x) e += row[x] * row[x];
    }
    return e;
  };
  std::vector<PlaneEnergy> out;
  out.reserve(vol.planes.size());
  for (std::size_t i = 0; i < vol.planes.size(); ++i)
    out.push_back({vol.plane_ids[i], sum_sq(vol.planes[i])});
  return out;
}

}  // namespace mvwave
