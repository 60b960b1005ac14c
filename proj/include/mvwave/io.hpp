// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mvwave Project Contributors

#pragma once

#include <png.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "mvwave/image.hpp"
#include "mvwave/spectrum.hpp"
#include "mvwave/transform.hpp"

namespace mvwave {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a sibling temp file and renames it into place, so readers
// never observe a half-written file.
inline void write_file_atomic(const std::string& path, const std::string& bytes) {
  std::filesystem::path target(path);
  std::filesystem::path tmp(path + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), "cannot open '" + tmp.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    require(out.good(), "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  require(!ec, "cannot move temporary file onto '" + path + "': " + ec.message());
}

inline void put_u16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
}

inline void put_u32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_f32(std::string& s, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(s, bits);
}

struct Cursor {
  const std::string& bytes;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    require(pos + n <= bytes.size(), "truncated coefficient volume file");
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes[pos++]);
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(static_cast<std::uint8_t>(bytes[pos]) |
                                                 (static_cast<std::uint8_t>(bytes[pos + 1]) << 8));
    pos += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes[pos + i])) << (8 * i);
    pos += 4;
    return v;
  }
  float f32() {
    std::uint32_t bits = u32();
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
};

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::uint8_t quantize8(double v) {
  return static_cast<std::uint8_t>(std::floor(255.0 * clamp01(v) + 0.5));
}

inline GrayImage8 to_gray8(const MultiviewImage& img) {
  GrayImage8 g{img.width(), img.height(), {}};
  g.pixels.reserve(img.pixels.data.size());
  for (double v : img.pixels.data) g.pixels.push_back(quantize8(v));
  return g;
}

inline MultiviewImage image_from_gray8(const GrayImage8& g, int cell_px, Parallax parallax) {
  MultiviewImage img = make_image(g.width, g.height, cell_px, parallax);
  for (std::size_t i = 0; i < g.pixels.size(); ++i) img.pixels.data[i] = g.pixels[i] / 255.0;
  return img;
}

// ---- PGM (binary P5, maxval 255) ----

inline std::string encode_pgm(const GrayImage8& g) {
  std::string out = "P5\n" + std::to_string(g.width) + " " + std::to_string(g.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(g.pixels.data()), g.pixels.size());
  return out;
}

inline GrayImage8 decode_pgm(const std::string& bytes) {
  std::size_t pos = 0;
  auto skip = [&] {
    for (;;) {
      while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
      if (pos < bytes.size() && bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        return;
      }
    }
  };
  auto number = [&]() -> long {
    skip();
    std::size_t start = pos;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) ++pos;
    require(pos > start, "malformed PGM header");
    return std::stol(bytes.substr(start, pos - start));
  };
  require(bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5', "not a binary PGM (P5) file");
  pos = 2;
  long w = number(), h = number(), maxval = number();
  require(w > 0 && h > 0, "PGM has empty dimensions");
  require(maxval == 255, "unsupported PGM maxval " + std::to_string(maxval) + " (expected 255)");
  require(pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos])),
          "malformed PGM header");
  ++pos;
  std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  require(bytes.size() - pos >= count, "PGM pixel data truncated");
  GrayImage8 g{static_cast<int>(w), static_cast<int>(h), {}};
  g.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                  bytes.begin() + static_cast<std::ptrdiff_t>(pos + count));
  return g;
}

// ---- PNG (8-bit grayscale via libpng, in-memory buffers) ----

inline std::string encode_png(const GrayImage8& g) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  require(png != nullptr, "libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("libpng initialisation failed");
  }
  std::string out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("PNG encoding failed");
  }
  png_set_write_fn(
      png, &out,
      [](png_structp p, png_bytep data, png_size_t n) {
        static_cast<std::string*>(png_get_io_ptr(p))->append(reinterpret_cast<char*>(data), n);
      },
      nullptr);
  png_set_IHDR(png, info, static_cast<png_uint_32>(g.width), static_cast<png_uint_32>(g.height), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < g.height; ++y)
    png_write_row(png, const_cast<png_bytep>(g.pixels.data() + static_cast<std::size_t>(y) * g.width));
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
  return out;
}

namespace detail {
struct PngReadState {
  const unsigned char* data;
  std::size_t size;
  std::size_t pos;
};
}  // namespace detail

inline GrayImage8 decode_png(const std::string& bytes) {
  require(bytes.size() >= 8 &&
              png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) == 0,
          "not a PNG file");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  require(png != nullptr, "libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error("libpng initialisation failed");
  }
  detail::PngReadState state{reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), 0};
  GrayImage8 g;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error("PNG decoding failed");
  }
  png_set_read_fn(png, &state, [](png_structp p, png_bytep dst, png_size_t n) {
    auto* s = static_cast<detail::PngReadState*>(png_get_io_ptr(p));
    if (s->pos + n > s->size) png_error(p, "unexpected end of PNG data");
    std::memcpy(dst, s->data + s->pos, n);
    s->pos += n;
  });
  png_read_info(png, info);
  png_byte color = png_get_color_type(png, info);
  png_byte depth = png_get_bit_depth(png, info);
  if (color != PNG_COLOR_TYPE_GRAY || depth != 8) {
    std::string msg = color != PNG_COLOR_TYPE_GRAY
                          ? "unsupported PNG color type (need 8-bit grayscale)"
                          : "unsupported PNG bit depth " + std::to_string(depth) +
                                " (need 8-bit grayscale)";
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(msg);
  }
  png_read_update_info(png, info);
  g.width = static_cast<int>(png_get_image_width(png, info));
  g.height = static_cast<int>(png_get_image_height(png, info));
  require(png_get_rowbytes(png, info) == static_cast<std::size_t>(g.width),
          "PNG did not reduce to 8-bit grayscale");
  g.pixels.resize(static_cast<std::size_t>(g.width) * static_cast<std::size_t>(g.height));
  for (int y = 0; y < g.height; ++y)
    png_read_row(png, g.pixels.data() + static_cast<std::size_t>(y) * g.width, nullptr);
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return g;
}

// ---- image files (format chosen by extension / sniffed by magic) ----

inline void write_gray_image(const std::string& path, const GrayImage8& g) {
  std::filesystem::path p(path);
  std::string ext = p.extension().string();
  if (ext == ".pgm")
    detail::write_file_atomic(path, encode_pgm(g));
  else if (ext == ".png")
    detail::write_file_atomic(path, encode_png(g));
  else
    throw Error("unsupported image extension '" + ext + "' (use .pgm or .png)");
}

// Writes the quantized image plus a "<path>.cell" sidecar recording the cell
// size, so the pair round-trips without external bookkeeping.
inline void write_image(const std::string& path, const MultiviewImage& img) {
  write_gray_image(path, to_gray8(img));
  detail::write_file_atomic(path + ".cell", std::to_string(img.cell_px) + "\n");
}

inline GrayImage8 read_gray_image(const std::string& path) {
  std::string bytes = detail::read_file(path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return decode_pgm(bytes);
  if (bytes.size() >= 8 && png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) == 0)
    return decode_png(bytes);
  throw Error("unrecognised image format in '" + path + "' (expected binary PGM or PNG)");
}

inline MultiviewImage read_image(const std::string& path, std::optional<int> cell_px,
                                 Parallax parallax) {
  GrayImage8 g = read_gray_image(path);
  int cell = 0;
  if (cell_px) {
    cell = *cell_px;
  } else {
    std::string sidecar = path + ".cell";
    require(std::filesystem::exists(sidecar),
            "cell size unknown for '" + path + "' (pass --cell or provide " + sidecar + ")");
    try {
      cell = std::stoi(detail::read_file(sidecar));
    } catch (const std::exception&) {
      throw Error("cannot parse cell size from '" + sidecar + "'");
    }
  }
  return image_from_gray8(g, cell, parallax);
}

// ---- coefficient volume container ----
//
// Layout (little endian): "MVWV", u16 version, u8 parallax (0 hpo / 1 fp),
// u32 width, u32 height, u32 cell_px, u16 plane count, then per plane an i16
// depth id, a u8 kind (0 wavelet / 1 scaling), and width*height f32 samples
// in row-major order. Wavelet planes come in ascending id order and the
// scaling plane, when present, is last with id 0.

inline constexpr char kVolumeMagic[4] = {'M', 'V', 'W', 'V'};
inline constexpr std::uint16_t kVolumeVersion = 1;

inline std::string encode_volume(const CoefficientVolume& vol) {
  validate_volume(vol);
  std::size_t count = vol.planes.size() + (vol.has_scaling() ? 1 : 0);
  require(count <= 0xffff, "too many planes for the volume container");
  std::string out(kVolumeMagic, 4);
  detail::put_u16(out, kVolumeVersion);
  out.push_back(static_cast<char>(vol.analysis_parallax == Parallax::FP ? 1 : 0));
  detail::put_u32(out, static_cast<std::uint32_t>(vol.width));
  detail::put_u32(out, static_cast<std::uint32_t>(vol.height));
  detail::put_u32(out, static_cast<std::uint32_t>(vol.cell_px));
  detail::put_u16(out, static_cast<std::uint16_t>(count));
  auto put_plane = [&](int depth, std::uint8_t kind, const Array2D& a) {
    detail::put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(depth)));
    out.push_back(static_cast<char>(kind));
    for (double v : a.data) detail::put_f32(out, static_cast<float>(v));
  };
  for (std::size_t i = 0; i < vol.planes.size(); ++i)
    put_plane(vol.plane_ids[i], 0, vol.planes[i]);
  if (vol.has_scaling()) put_plane(0, 1, vol.scaling);
  return out;
}

inline CoefficientVolume decode_volume(const std::string& bytes) {
  detail::Cursor c{bytes};
  c.need(4);
  require(std::memcmp(bytes.data(), kVolumeMagic, 4) == 0,
          "not a coefficient volume file (bad magic)");
  c.pos = 4;
  std::uint16_t version = c.u16();
  require(version == kVolumeVersion,
          "unsupported coefficient volume version " + std::to_string(version));
  std::uint8_t par = c.u8();
  require(par <= 1, "bad parallax flag in coefficient volume");
  CoefficientVolume vol;
  vol.analysis_parallax = par == 1 ? Parallax::FP : Parallax::HPO;
  vol.width = static_cast<int>(c.u32());
  vol.height = static_cast<int>(c.u32());
  vol.cell_px = static_cast<int>(c.u32());
  require(vol.width > 0 && vol.height > 0 && vol.cell_px > 0,
          "coefficient volume has empty geometry");
  std::uint16_t count = c.u16();  // 0 is legal: an empty volume
  for (std::uint16_t i = 0; i < count; ++i) {
    int depth = static_cast<std::int16_t>(c.u16());
    std::uint8_t kind = c.u8();
    require(kind <= 1, "bad plane kind in coefficient volume");
    Array2D a(vol.width, vol.height);
    for (double& v : a.data) v = c.f32();
    if (kind == 1) {
      require(depth == 0, "scaling plane must have depth id 0");
      require(!vol.has_scaling(), "coefficient volume has two scaling planes");
      vol.scaling = std::move(a);
    } else {
      order_of(depth);  // rejects 0
      vol.plane_ids.push_back(depth);
      vol.planes.push_back(std::move(a));
    }
  }
  require(c.pos == bytes.size(), "trailing bytes after coefficient volume data");
  for (std::size_t i = 1; i < vol.plane_ids.size(); ++i)
    require(vol.plane_ids[i - 1] < vol.plane_ids[i],
            "coefficient volume plane ids must be strictly ascending");
  return vol;
}

inline void write_volume(const std::string& path, const CoefficientVolume& vol) {
  detail::write_file_atomic(path, encode_volume(vol));
}

inline CoefficientVolume read_volume(const std::string& path) {
  return decode_volume(detail::read_file(path));
}

// ---- text exports ----

inline void write_matrix(const std::string& path, const Array2D& a) {
  std::string out;
  for (int y = 0; y < a.height; ++y) {
    for (int x = 0; x < a.width; ++x) {
      if (x) out += ' ';
      out += detail::format_double(a.at(x, y));
    }
    out += '\n';
  }
  detail::write_file_atomic(path, out);
}

inline void write_spectrum_csv(const std::string& path, const SpectrumTable& t) {
  std::string out = "omega,analytic,numeric,power\n";
  for (std::size_t i = 0; i < t.omega.size(); ++i) {
    out += detail::format_double(t.omega[i]);
    out += ',';
    if (i < t.analytic.size()) out += detail::format_double(t.analytic[i]);
    out += ',';
    if (i < t.numeric.size()) out += detail::format_double(t.numeric[i]);
    out += ',';
    if (i < t.power.size()) out += detail::format_double(t.power[i]);
    out += '\n';
  }
  detail::write_file_atomic(path, out);
}

// ---- coefficient plane renderings ----

enum class PlaneStyle {
  Pseudo,  // signed: zero maps to mid gray, +peak to black, -peak to white
  Gray,    // unsigned: min..max stretched to 0..255
};

inline GrayImage8 render_plane_image(const Array2D& a, PlaneStyle style) {
  GrayImage8 g{a.width, a.height, std::vector<std::uint8_t>(a.data.size(), 128)};
  if (style == PlaneStyle::Pseudo) {
    double peak = 0.0;
    for (double v : a.data) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return g;
    for (std::size_t i = 0; i < a.data.size(); ++i)
      g.pixels[i] =
          static_cast<std::uint8_t>(std::floor(127.5 - 127.5 * a.data[i] / peak + 0.5));
  } else {
    auto [lo, hi] = std::minmax_element(a.data.begin(), a.data.end());
    if (*lo == *hi) return g;
    for (std::size_t i = 0; i < a.data.size(); ++i)
      g.pixels[i] =
          static_cast<std::uint8_t>(std::floor(255.0 * (a.data[i] - *lo) / (*hi - *lo) + 0.5));
  }
  return g;
}

}  // namespace mvwave
