// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mvwave Project Contributors

#pragma once

#include <cmath>
#include <sstream>

#include "mvwave/image.hpp"
#include "mvwave/kernels.hpp"

namespace mvwave {

// One displayed point: cell-grid position of its centre cell (fractional
// positions are snapped to the nearest cell when rendered) and the depth
// plane it sits on.
struct Voxel {
  double cx = 0.0;
  double cy = 0.0;
  int depth = 1;
  double intensity = 1.0;
};

struct SceneSpec {
  int width_cells = 0;
  int height_cells = 0;
  int cell_px = 0;
  Parallax parallax = Parallax::FP;
  std::vector<Voxel> voxels;
};

// Cells covered by the voxel pattern itself.
inline int stamp_footprint_cells(int depth) {
  return pattern_geometry_for(depth).support_cells;
}

// Cells the matching analysis wavelet needs around the voxel; the fit check
// uses this so every rendered voxel is fully analysable.
inline int fit_footprint_cells(int depth) { return std::max(order_of(depth), 2); }

// Draws every voxel's pattern onto a fresh canvas. Overlaps compose with a
// saturating max, so crossing patterns reinforce rather than sum past white.
inline MultiviewImage render_scene(const SceneSpec& scene) {
  require(scene.width_cells > 0 && scene.height_cells > 0,
          "scene canvas must be at least 1x1 cells");
  MultiviewImage img = make_image(scene.width_cells * scene.cell_px,
                                  scene.height_cells * scene.cell_px, scene.cell_px,
                                  scene.parallax);
  int cp = scene.cell_px;
  for (std::size_t vi = 0; vi < scene.voxels.size(); ++vi) {
    const Voxel& v = scene.voxels[vi];
    int n = order_of(v.depth);
    check_cell_divisibility(n, cp);
    require(v.intensity >= 0.0 && v.intensity <= 1.0,
            "voxel " + std::to_string(vi) + " intensity must be in [0, 1]");
    double level = v.intensity;
    int foot = stamp_footprint_cells(v.depth);
    int fit = fit_footprint_cells(v.depth);
    int cx = static_cast<int>(std::llround(v.cx));
    int cy = static_cast<int>(std::llround(v.cy));
    int ox = cx - (foot - 1) / 2;
    int oy = scene.parallax == Parallax::FP ? cy - (foot - 1) / 2 : cy;
    bool fits = ox >= 0 && ox + fit <= scene.width_cells;
    if (scene.parallax == Parallax::FP)
      fits = fits && oy >= 0 && oy + fit <= scene.height_cells;
    else
      fits = fits && oy >= 0 && oy < scene.height_cells;
    require(fits, "voxel " + std::to_string(vi) + " at cell (" + std::to_string(cx) + ", " +
                      std::to_string(cy) + ") depth " + std::to_string(v.depth) +
                      " does not fit on the canvas");

    Kernel mask = sample_pattern(n, sign_of(v.depth), cp);
    const double* m = mask.samples.row(0);
    int mw = mask.samples.width;
    if (scene.parallax == Parallax::FP) {
      for (int py = 0; py < mw; ++py) {
        if (m[py] == 0.0) continue;
        double* row = img.pixels.row(oy * cp + py) + ox * cp;
        for (int px = 0; px < mw; ++px)
          if (m[px] != 0.0 && row[px] < level) row[px] = level;
      }
    } else {
      for (int py = 0; py < cp; ++py) {
        double* row = img.pixels.row(oy * cp + py) + ox * cp;
        for (int px = 0; px < mw; ++px)
          if (m[px] != 0.0 && row[px] < level) row[px] = level;
      }
    }
  }
  return img;
}

struct TetrahedronParams {
  int base_depth = 2;
  int apex_depth = 5;
  int size_cells = 12;
  int samples_per_edge = 8;
  int cell_px = 20;
  Parallax parallax = Parallax::FP;
  std::vector<int> available_planes;  // empty: round slant depths to integers
};

namespace detail {

// Rounds an interpolated depth to a representable plane lying between the
// edge's endpoint planes (endpoints included). With an explicit plane list
// the nearest in-range entry wins; ties and the forbidden value 0 resolve
// toward the apex end of the edge.
inline int snap_depth(double d, int base_depth, int apex_depth, const std::vector<int>& available) {
  int lo = std::min(base_depth, apex_depth);
  int hi = std::max(base_depth, apex_depth);
  if (!available.empty()) {
    std::vector<int> cand;
    for (int a : available)
      if (a >= lo && a <= hi) cand.push_back(a);
    cand.push_back(base_depth);
    cand.push_back(apex_depth);
    int best = cand.front();
    for (int a : cand) {
      double da = std::abs(a - d), db = std::abs(best - d);
      if (da < db || (da == db && std::abs(a - apex_depth) < std::abs(best - apex_depth)))
        best = a;
    }
    return best;
  }
  int r = static_cast<int>(std::llround(d));
  r = std::max(lo, std::min(hi, r));
  if (r == 0) r = apex_depth >= 0 ? 1 : -1;
  return r;
}

}  // namespace detail

// A wireframe tetrahedron standing on the canvas: three base vertices at one
// depth, the apex above their centroid at another, all six edges dotted with
// evenly spaced voxels. Slant edges interpolate depth from base to apex.
inline SceneSpec tetrahedron_scene(const TetrahedronParams& p) {
  require(p.samples_per_edge >= 2, "tetrahedron edges need at least 2 samples");
  order_of(p.base_depth);
  order_of(p.apex_depth);
  require(p.base_depth != p.apex_depth,
          "tetrahedron base and apex must sit on different depth planes");
  for (int a : p.available_planes) order_of(a);
  int maxfoot = 2;
  for (int k = 0; k < p.samples_per_edge; ++k) {
    double t = static_cast<double>(k) / (p.samples_per_edge - 1);
    double d = p.base_depth + t * (p.apex_depth - p.base_depth);
    maxfoot = std::max(
        maxfoot, fit_footprint_cells(
                     detail::snap_depth(d, p.base_depth, p.apex_depth, p.available_planes)));
  }
  int lo = (maxfoot - 1) / 2;
  int hi = p.size_cells - maxfoot + lo;
  require(hi > lo, "canvas of " + std::to_string(p.size_cells) +
                       " cells is too small for depth order " + std::to_string(maxfoot));

  struct P {
    int x, y;
  };
  P v0{lo, lo}, v1{hi, lo}, v2{(lo + hi) / 2, hi};
  P apex{(v0.x + v1.x + v2.x) / 3, (v0.y + v1.y + v2.y) / 3};

  SceneSpec scene{p.size_cells, p.size_cells, p.cell_px, p.parallax, {}};
  auto edge = [&](P a, P b, int da, int db) {
    for (int k = 0; k < p.samples_per_edge; ++k) {
      double t = static_cast<double>(k) / (p.samples_per_edge - 1);
      double x = a.x + t * (b.x - a.x);
      double y = a.y + t * (b.y - a.y);
      int d = da == db ? da
                       : detail::snap_depth(da + t * (db - da), da, db, p.available_planes);
      scene.voxels.push_back(Voxel{x, y, d, 1.0});
    }
  };
  edge(v0, v1, p.base_depth, p.base_depth);
  edge(v1, v2, p.base_depth, p.base_depth);
  edge(v2, v0, p.base_depth, p.base_depth);
  edge(v0, apex, p.base_depth, p.apex_depth);
  edge(v1, apex, p.base_depth, p.apex_depth);
  edge(v2, apex, p.base_depth, p.apex_depth);
  return scene;
}

// Physical pinhole mask in front of the panel: every cell keeps a disc of
// hole_radius pixels around its centre and is black elsewhere. Applying the
// same mask twice changes nothing.
struct MaskSpec {
  int cell_px = 0;
  double hole_radius = 0.0;
};

inline void apply_vignette(MultiviewImage& img, const MaskSpec& mask) {
  require(mask.cell_px == img.cell_px,
          "mask cell size " + std::to_string(mask.cell_px) + " px does not match image cell size " +
              std::to_string(img.cell_px) + " px");
  require(mask.hole_radius > 0.0, "mask hole radius must be positive");
  int cp = img.cell_px;
  double r2 = mask.hole_radius * mask.hole_radius;
  for (int y = 0; y < img.height(); ++y) {
    double dy = (y % cp) + 0.5 - cp / 2.0;
    double* row = img.pixels.row(y);
    for (int x = 0; x < img.width(); ++x) {
      double dx = (x % cp) + 0.5 - cp / 2.0;
      if (dx * dx + dy * dy > r2) row[x] = 0.0;
    }
  }
}

// Plain text scene description:
//   # comment
//   canvas <w_cells> <h_cells> cell <px> parallax <hpo|fp>
//   voxel <cx> <cy> <depth> [intensity]
inline SceneSpec parse_scene(const std::string& text) {
  SceneSpec scene;
  bool have_canvas = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error("scene line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    if (word == "canvas") {
      std::string cell_kw, par_kw, par;
      if (!(ls >> scene.width_cells >> scene.height_cells >> cell_kw >> scene.cell_px >> par_kw >>
            par) ||
          cell_kw != "cell" || par_kw != "parallax")
        fail("expected 'canvas <w> <h> cell <px> parallax <hpo|fp>'");
      if (par == "hpo")
        scene.parallax = Parallax::HPO;
      else if (par == "fp")
        scene.parallax = Parallax::FP;
      else
        fail("unknown parallax '" + par + "' (expected hpo or fp)");
      have_canvas = true;
    } else if (word == "voxel") {
      if (!have_canvas) fail("voxel before canvas line");
      Voxel v;
      if (!(ls >> v.cx >> v.cy >> v.depth)) fail("expected 'voxel <cx> <cy> <depth> [intensity]'");
      if (!(ls >> v.intensity)) v.intensity = 1.0;
      if (v.depth == 0) fail("depth plane 0 does not exist (the screen plane is |d| = 1)");
      if (v.intensity < 0.0 || v.intensity > 1.0) fail("voxel intensity must be in [0, 1]");
      scene.voxels.push_back(v);
    } else {
      fail("unknown directive '" + word + "'");
    }
  }
  require(have_canvas, "scene has no canvas line");
  return scene;
}

inline std::string format_scene(const SceneSpec& scene) {
  std::ostringstream out;
  out << "canvas " << scene.width_cells << ' ' << scene.height_cells << " cell " << scene.cell_px
      << " parallax " << (scene.parallax == Parallax::HPO ? "hpo" : "fp") << '\n';
  for (const Voxel& v : scene.voxels) {
    out << "voxel " << v.cx << ' ' << v.cy << ' ' << v.depth;
    if (v.intensity != 1.0) out << ' ' << v.intensity;
    out << '\n';
  }
  return out.str();
}

}  // namespace mvwave
