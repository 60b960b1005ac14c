// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mvwave Project Contributors

#pragma once

#include <CLI11.hpp>
#include <iostream>

#include "mvwave/io.hpp"
#include "mvwave/synth.hpp"

namespace mvwave {

namespace cli_detail {

inline KernelKind parse_kind(const std::string& s) {
  if (s == "pattern") return KernelKind::Pattern;
  if (s == "wavelet1d") return KernelKind::Wavelet1D;
  if (s == "wavelet2d") return KernelKind::Wavelet2D;
  if (s == "scaling1d") return KernelKind::Scaling1D;
  if (s == "scaling2d") return KernelKind::Scaling2D;
  if (s == "pulse-train") return KernelKind::PulseTrain;
  if (s == "chirp") return KernelKind::Chirp;
  throw Error("unknown kernel kind '" + s +
              "' (expected pattern, wavelet1d, wavelet2d, scaling1d, scaling2d, pulse-train or "
              "chirp)");
}

inline Sign parse_sign(const std::string& s) {
  if (s == "plus" || s == "+") return Sign::Plus;
  if (s == "minus" || s == "-") return Sign::Minus;
  throw Error("unknown sign '" + s + "' (expected plus or minus)");
}

inline Parallax parse_parallax(const std::string& s) {
  if (s == "hpo") return Parallax::HPO;
  if (s == "fp") return Parallax::FP;
  throw Error("unknown parallax '" + s + "' (expected hpo or fp)");
}

inline int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw Error("'" + s + "' is not an integer");
  }
  require(used == s.size(), "'" + s + "' is not an integer");
  return v;
}

// Comma-separated depth ids and inclusive ranges, e.g. "-6..-2,2..6".
// Ranges step over 0 silently; naming 0 outright is an error.
inline std::vector<int> parse_planes(const std::string& spec) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string token = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
    pos = comma == std::string::npos ? spec.size() + 1 : comma + 1;
    if (token.empty()) continue;
    std::size_t dots = token.find("..");
    if (dots == std::string::npos) {
      int d = parse_int(token);
      require(d != 0, "depth plane 0 does not exist (the screen plane is |d| = 1)");
      out.push_back(d);
    } else {
      int a = parse_int(token.substr(0, dots));
      int b = parse_int(token.substr(dots + 2));
      require(a <= b, "empty depth range '" + token + "'");
      for (int d = a; d <= b; ++d)
        if (d != 0) out.push_back(d);
    }
  }
  require(!out.empty(), "no depth planes requested");
  return out;
}

inline Rect parse_roi(const std::string& s) {
  Rect r;
  char extra = 0;
  require(std::sscanf(s.c_str(), "%d,%d,%d,%d%c", &r.x, &r.y, &r.width, &r.height, &extra) == 4,
          "bad region '" + s + "' (expected x,y,w,h in pixels)");
  return r;
}

inline Kernel build_kernel(const std::string& kind_s, int n, const std::string& sign_s, int cell,
                           int length_cells) {
  KernelKind kind = parse_kind(kind_s);
  switch (kind) {
    case KernelKind::Pattern:
      return sample_pattern(n, parse_sign(sign_s), cell);
    case KernelKind::Wavelet1D:
      return make_wavelet_1d(n, parse_sign(sign_s), cell);
    case KernelKind::Wavelet2D:
      return make_wavelet_2d(n, parse_sign(sign_s), cell);
    case KernelKind::Scaling1D:
      return make_scaling(1, cell);
    case KernelKind::Scaling2D:
      return make_scaling(2, cell);
    default:
      return make_auxiliary(kind, cell, length_cells);
  }
}

inline PlaneStyle parse_style(const std::string& s) {
  if (s == "pseudo") return PlaneStyle::Pseudo;
  if (s == "gray") return PlaneStyle::Gray;
  throw Error("unknown style '" + s + "' (expected pseudo or gray)");
}

inline std::optional<int> cell_option(int cell) {
  return cell > 0 ? std::optional<int>(cell) : std::nullopt;
}

inline void check_distinct(const std::string& in, const std::string& out) {
  require(!in.empty() && !out.empty(), "file paths must not be empty");
  require(std::filesystem::path(in).lexically_normal() !=
              std::filesystem::path(out).lexically_normal(),
          "input and output paths must be distinct");
}

inline void write_kernel_output(const std::string& path, const Array2D& samples,
                                const std::string& style) {
  if (std::filesystem::path(path).extension() == ".txt")
    write_matrix(path, samples);
  else
    write_gray_image(path, render_plane_image(samples, parse_style(style)));
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{"wavelet toolkit for layered-depth multiview displays"};
  app.require_subcommand(1);

  // gen-kernel
  std::string gk_kind, gk_sign = "plus", gk_style = "pseudo", gk_output;
  int gk_n = 1, gk_cell = 8, gk_length = 8;
  CLI::App* gen = app.add_subcommand("gen-kernel", "sample a kernel and export it");
  gen->add_option("--kind", gk_kind, "pattern|wavelet1d|wavelet2d|scaling1d|scaling2d|pulse-train|chirp")
      ->required();
  gen->add_option("--n", gk_n, "pattern order (ignored by scaling and auxiliary kinds)");
  gen->add_option("--sign", gk_sign, "plus|minus: in front of or behind the screen");
  gen->add_option("--cell", gk_cell, "cell size in pixels");
  gen->add_option("--length", gk_length, "length in cells (auxiliary kinds only)");
  gen->add_option("--style", gk_style, "pseudo|gray rendering for image outputs");
  gen->add_option("--output", gk_output, ".txt for a matrix, .pgm/.png for an image")->required();
  gen->callback([&] {
    Kernel k = cli_detail::build_kernel(gk_kind, gk_n, gk_sign, gk_cell, gk_length);
    cli_detail::write_kernel_output(gk_output, k.samples, gk_style);
  });

  // spectrum
  std::string sp_kind, sp_sign = "plus", sp_output;
  int sp_n = 1, sp_cell = 8, sp_length = 8, sp_pad = 8;
  double sp_omega_max = 6.0 * std::numbers::pi;
  CLI::App* spec = app.add_subcommand("spectrum", "tabulate a kernel's Fourier spectrum as CSV");
  spec->add_option("--kind", sp_kind, "kernel kind (same choices as gen-kernel)")->required();
  spec->add_option("--n", sp_n, "pattern order");
  spec->add_option("--sign", sp_sign, "plus|minus");
  spec->add_option("--cell", sp_cell, "cell size in pixels");
  spec->add_option("--length", sp_length, "length in cells (auxiliary kinds only)");
  spec->add_option("--pad", sp_pad, "zero-padding factor for the frequency grid");
  spec->add_option("--omega-max", sp_omega_max, "highest angular frequency, rad per cell");
  spec->add_option("--output", sp_output, "CSV path")->required();
  spec->callback([&] {
    Kernel k = cli_detail::build_kernel(sp_kind, sp_n, sp_sign, sp_cell, sp_length);
    write_spectrum_csv(sp_output, spectrum_table(k, sp_pad, sp_omega_max));
  });

  // analyze
  std::string an_input, an_parallax, an_planes = "-8..-1,1..8", an_output;
  int an_cell = 0;
  bool an_no_scaling = false;
  CLI::App* analyze = app.add_subcommand("analyze", "transform an image into a coefficient volume");
  analyze->add_option("--input", an_input, "PGM or PNG image")->required();
  analyze->add_option("--cell", an_cell, "cell size in pixels (default: <input>.cell sidecar)");
  analyze->add_option("--parallax", an_parallax, "hpo|fp")->required();
  analyze->add_option("--planes", an_planes, "depth ids, e.g. -6..-2,2..6");
  analyze->add_flag("--no-scaling", an_no_scaling, "skip the scaling (local mean) plane");
  analyze->add_option("--output", an_output, "coefficient volume path")->required();
  analyze->callback([&] {
    cli_detail::check_distinct(an_input, an_output);
    MultiviewImage img = read_image(an_input, cli_detail::cell_option(an_cell),
                                    cli_detail::parse_parallax(an_parallax));
    TransformConfig cfg;
    cfg.planes = cli_detail::parse_planes(an_planes);
    cfg.include_scaling = !an_no_scaling;
    write_volume(an_output, direct_cwt(img, cfg));
  });

  // reconstruct
  std::string rc_input, rc_parallax = "same", rc_output;
  CLI::App* rec = app.add_subcommand("reconstruct", "rebuild a display image from a volume");
  rec->add_option("--input", rc_input, "coefficient volume path")->required();
  rec->add_option("--parallax", rc_parallax, "hpo|fp|same: kernel family to rebuild with");
  rec->add_option("--output", rc_output, "PGM or PNG image")->required();
  rec->callback([&] {
    cli_detail::check_distinct(rc_input, rc_output);
    CoefficientVolume vol = read_volume(rc_input);
    Parallax target = rc_parallax == "same" ? vol.analysis_parallax
                                            : cli_detail::parse_parallax(rc_parallax);
    write_image(rc_output, inverse_cwt(vol, target));
  });

  // to-hpo
  std::string th_input, th_output;
  CLI::App* tohpo =
      app.add_subcommand("to-hpo", "rebuild a volume for a horizontal-parallax-only display");
  tohpo->add_option("--input", th_input, "coefficient volume path")->required();
  tohpo->add_option("--output", th_output, "PGM or PNG image")->required();
  tohpo->callback([&] {
    cli_detail::check_distinct(th_input, th_output);
    write_image(th_output, inverse_cwt(read_volume(th_input), Parallax::HPO));
  });

  // reverse-depth
  std::string rd_input, rd_output;
  CLI::App* rev = app.add_subcommand("reverse-depth", "mirror a volume's depth about the screen");
  rev->add_option("--input", rd_input, "coefficient volume path")->required();
  rev->add_option("--output", rd_output, "coefficient volume path")->required();
  rev->callback([&] {
    cli_detail::check_distinct(rd_input, rd_output);
    write_volume(rd_output, reverse_depth(read_volume(rd_input)));
  });

  // render-scene
  std::string rs_scene, rs_output;
  CLI::App* rsc = app.add_subcommand("render-scene", "rasterise a voxel scene description");
  rsc->add_option("--scene", rs_scene, "scene text file")->required();
  rsc->add_option("--output", rs_output, "PGM or PNG image")->required();
  rsc->callback([&] {
    cli_detail::check_distinct(rs_scene, rs_output);
    write_image(rs_output, render_scene(parse_scene(detail::read_file(rs_scene))));
  });

  // tetrahedron
  std::string tt_parallax = "fp", tt_planes, tt_output, tt_scene_out;
  int tt_apex = 5, tt_base = 2, tt_size = 12, tt_samples = 8, tt_cell = 20;
  CLI::App* tet = app.add_subcommand("tetrahedron", "render the wireframe tetrahedron test scene");
  tet->add_option("--apex", tt_apex, "depth plane of the apex");
  tet->add_option("--base", tt_base, "depth plane of the base triangle");
  tet->add_option("--size", tt_size, "canvas size in cells");
  tet->add_option("--samples", tt_samples, "voxels per edge");
  tet->add_option("--cell", tt_cell, "cell size in pixels");
  tet->add_option("--parallax", tt_parallax, "hpo|fp");
  tet->add_option("--planes", tt_planes, "depth ids slant voxels may use (default: any integer)");
  tet->add_option("--output", tt_output, "PGM or PNG image")->required();
  tet->add_option("--scene-out", tt_scene_out, "also save the scene text");
  tet->callback([&] {
    TetrahedronParams p;
    p.base_depth = tt_base;
    p.apex_depth = tt_apex;
    p.size_cells = tt_size;
    p.samples_per_edge = tt_samples;
    p.cell_px = tt_cell;
    p.parallax = cli_detail::parse_parallax(tt_parallax);
    if (!tt_planes.empty()) p.available_planes = cli_detail::parse_planes(tt_planes);
    if (!tt_scene_out.empty()) cli_detail::check_distinct(tt_scene_out, tt_output);
    SceneSpec scene = tetrahedron_scene(p);
    if (!tt_scene_out.empty()) detail::write_file_atomic(tt_scene_out, format_scene(scene));
    write_image(tt_output, render_scene(scene));
  });

  // mask
  std::string mk_input, mk_output;
  int mk_cell = 0;
  double mk_radius = -1.0;
  CLI::App* mask = app.add_subcommand("mask", "apply the per-cell pinhole vignette");
  mask->add_option("--input", mk_input, "PGM or PNG image")->required();
  mask->add_option("--cell", mk_cell, "cell size in pixels (default: <input>.cell sidecar)");
  mask->add_option("--radius", mk_radius, "hole radius in pixels")->required();
  mask->add_option("--output", mk_output, "PGM or PNG image")->required();
  mask->callback([&] {
    cli_detail::check_distinct(mk_input, mk_output);
    MultiviewImage img =
        read_image(mk_input, cli_detail::cell_option(mk_cell), Parallax::FP);
    apply_vignette(img, MaskSpec{img.cell_px, mk_radius});
    write_image(mk_output, img);
  });

  // depth-report
  std::string dr_input, dr_roi;
  CLI::App* rep = app.add_subcommand("depth-report", "print per-plane energy as CSV on stdout");
  rep->add_option("--input", dr_input, "coefficient volume path")->required();
  rep->add_option("--roi", dr_roi, "restrict to a pixel region x,y,w,h");
  rep->callback([&] {
    CoefficientVolume vol = read_volume(dr_input);
    std::optional<Rect> roi;
    if (!dr_roi.empty()) roi = cli_detail::parse_roi(dr_roi);
    std::cout << "depth,energy\n";
    for (const PlaneEnergy& e : plane_energy(vol, roi))
      std::cout << e.depth << ',' << detail::format_double(e.energy) << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "mvwave: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "mvwave: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

inline int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("mvwave");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace mvwave
