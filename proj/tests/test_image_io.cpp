// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mvwave Project Contributors

#include <png.h>

#include <catch2/catch_amalgamated.hpp>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "mvwave/mvwave.hpp"

using namespace mvwave;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string scratch(const std::string& name) {
  static std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / "mvwave_io_tests";
    std::filesystem::create_directories(d);
    return d;
  }();
  return (dir / name).string();
}

GrayImage8 random_gray(int w, int h, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(0, 255);
  GrayImage8 g{w, h, {}};
  g.pixels.reserve(static_cast<std::size_t>(w) * h);
  for (int i = 0; i < w * h; ++i) g.pixels.push_back(static_cast<std::uint8_t>(dist(rng)));
  return g;
}

std::string volume_header(std::uint8_t parallax, std::uint32_t w, std::uint32_t h,
                          std::uint32_t cell, std::uint16_t count) {
  std::string out(kVolumeMagic, 4);
  detail::put_u16(out, kVolumeVersion);
  out.push_back(static_cast<char>(parallax));
  detail::put_u32(out, w);
  detail::put_u32(out, h);
  detail::put_u32(out, cell);
  detail::put_u16(out, count);
  return out;
}

void append_plane(std::string& out, int depth, std::uint8_t kind, const std::vector<float>& v) {
  detail::put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(depth)));
  out.push_back(static_cast<char>(kind));
  for (float f : v) detail::put_f32(out, f);
}

// Encodes a tiny PNG with an arbitrary colour type and bit depth, to probe
// the strict-grayscale decode path with files we cannot produce ourselves.
std::string make_png_bytes(int color_type, int bit_depth) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  REQUIRE(png != nullptr);
  png_infop info = png_create_info_struct(png);
  REQUIRE(info != nullptr);
  std::string out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    FAIL("png helper encoding failed");
  }
  png_set_write_fn(
      png, &out,
      [](png_structp p, png_bytep data, png_size_t n) {
        static_cast<std::string*>(png_get_io_ptr(p))->append(reinterpret_cast<char*>(data), n);
      },
      nullptr);
  png_set_IHDR(png, info, 2, 2, bit_depth, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  int channels = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
  std::vector<unsigned char> row(2u * channels * (bit_depth / 8), 0x40);
  for (int y = 0; y < 2; ++y) png_write_row(png, row.data());
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace

TEST_CASE("quantize8 rounds and clamps") {
  CHECK(quantize8(0.0) == 0);
  CHECK(quantize8(1.0) == 255);
  CHECK(quantize8(0.5) == 128);
  CHECK(quantize8(-0.2) == 0);
  CHECK(quantize8(1.7) == 255);
  CHECK(quantize8(0.002) == 1);
  // every byte survives the byte -> unit interval -> byte trip
  for (int b = 0; b <= 255; ++b) CHECK(quantize8(b / 255.0) == b);
}

TEST_CASE("gray8 and multiview image conversions round trip") {
  GrayImage8 g = random_gray(12, 8, 17);
  MultiviewImage img = image_from_gray8(g, 4, Parallax::FP);
  CHECK(img.width() == 12);
  CHECK(img.height() == 8);
  CHECK(img.cell_px == 4);
  CHECK(img.parallax == Parallax::FP);
  CHECK(img.pixels.at(3, 2) == g.pixels[2 * 12 + 3] / 255.0);
  GrayImage8 back = to_gray8(img);
  CHECK(back.width == g.width);
  CHECK(back.height == g.height);
  CHECK(back.pixels == g.pixels);
}

TEST_CASE("image_from_gray8 rejects partial cells") {
  GrayImage8 g = random_gray(13, 8, 3);
  CHECK_THROWS_WITH(image_from_gray8(g, 4, Parallax::FP),
                    ContainsSubstring("not a whole number"));
}

TEST_CASE("pgm encode/decode round trip") {
  GrayImage8 g = random_gray(9, 5, 99);
  std::string bytes = encode_pgm(g);
  CHECK(bytes.substr(0, 3) == "P5\n");
  GrayImage8 back = decode_pgm(bytes);
  CHECK(back.width == 9);
  CHECK(back.height == 5);
  CHECK(back.pixels == g.pixels);
}

TEST_CASE("pgm decoder tolerates header comments") {
  std::string bytes = "P5\n# made by hand\n4 2\n# maxval next\n255\n";
  for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<char>(10 * i));
  GrayImage8 g = decode_pgm(bytes);
  CHECK(g.width == 4);
  CHECK(g.height == 2);
  CHECK(g.pixels[7] == 70);
}

TEST_CASE("pgm decoder rejects malformed input") {
  CHECK_THROWS_WITH(decode_pgm("P6\n2 2\n255\nxxxx"), ContainsSubstring("not a binary PGM"));
  CHECK_THROWS_WITH(decode_pgm("P5\n2 2\n65535\nxxxxxxxx"),
                    ContainsSubstring("unsupported PGM maxval 65535"));
  std::string truncated = "P5\n4 4\n255\n";
  truncated.append(10, '\0');
  CHECK_THROWS_WITH(decode_pgm(truncated), ContainsSubstring("PGM pixel data truncated"));
  CHECK_THROWS_WITH(decode_pgm("P5\nab\n255\n"), ContainsSubstring("malformed PGM header"));
  CHECK_THROWS_WITH(decode_pgm("P5\n0 2\n255\n"), ContainsSubstring("empty dimensions"));
}

TEST_CASE("png encode/decode round trip") {
  GrayImage8 g = random_gray(16, 11, 4242);
  std::string bytes = encode_png(g);
  GrayImage8 back = decode_png(bytes);
  CHECK(back.width == g.width);
  CHECK(back.height == g.height);
  CHECK(back.pixels == g.pixels);
}

TEST_CASE("png decoder rejects non-grayscale and non-8-bit files") {
  CHECK_THROWS_WITH(decode_png("this is not a png at all, sorry"),
                    ContainsSubstring("not a PNG file"));
  CHECK_THROWS_WITH(decode_png(make_png_bytes(PNG_COLOR_TYPE_RGB, 8)),
                    ContainsSubstring("unsupported PNG color type"));
  CHECK_THROWS_WITH(decode_png(make_png_bytes(PNG_COLOR_TYPE_GRAY, 16)),
                    ContainsSubstring("unsupported PNG bit depth 16"));
  std::string half = encode_png(random_gray(16, 16, 5));
  half.resize(half.size() / 2);
  CHECK_THROWS_WITH(decode_png(half), ContainsSubstring("PNG decoding failed"));
}

TEST_CASE("write_gray_image picks the format from the extension") {
  GrayImage8 g = random_gray(6, 4, 31);
  std::string pgm = scratch("ext_test.pgm");
  std::string png = scratch("ext_test.png");
  write_gray_image(pgm, g);
  write_gray_image(png, g);
  CHECK(detail::read_file(pgm).substr(0, 2) == "P5");
  CHECK(detail::read_file(png).substr(1, 3) == "PNG");
  CHECK(read_gray_image(pgm).pixels == g.pixels);
  CHECK(read_gray_image(png).pixels == g.pixels);
  CHECK_FALSE(std::filesystem::exists(pgm + ".tmp"));
  CHECK_FALSE(std::filesystem::exists(png + ".tmp"));
  CHECK_THROWS_WITH(write_gray_image(scratch("ext_test.bmp"), g),
                    ContainsSubstring("unsupported image extension"));
}

TEST_CASE("read_gray_image sniffs the content, not the name") {
  GrayImage8 g = random_gray(8, 8, 77);
  std::string path = scratch("mislabeled.bin");
  detail::write_file_atomic(path, encode_png(g));
  CHECK(read_gray_image(path).pixels == g.pixels);
  detail::write_file_atomic(path, encode_pgm(g));
  CHECK(read_gray_image(path).pixels == g.pixels);
  detail::write_file_atomic(path, "neither format");
  CHECK_THROWS_WITH(read_gray_image(path), ContainsSubstring("unrecognised image format"));
  CHECK_THROWS_WITH(read_gray_image(scratch("does_not_exist.pgm")),
                    ContainsSubstring("cannot open"));
}

TEST_CASE("write_image records the cell size in a sidecar") {
  MultiviewImage img = make_image(12, 8, 4, Parallax::HPO);
  for (std::size_t i = 0; i < img.pixels.data.size(); ++i)
    img.pixels.data[i] = (i % 7) / 6.0;
  std::string path = scratch("sidecar.pgm");
  write_image(path, img);
  CHECK(detail::read_file(path + ".cell") == "4\n");

  MultiviewImage back = read_image(path, std::nullopt, Parallax::HPO);
  CHECK(back.cell_px == 4);
  CHECK(back.parallax == Parallax::HPO);
  for (std::size_t i = 0; i < img.pixels.data.size(); ++i)
    CHECK(back.pixels.data[i] == quantize8(img.pixels.data[i]) / 255.0);

  // an explicit cell size wins over the sidecar
  CHECK(read_image(path, 2, Parallax::FP).cell_px == 2);
}

TEST_CASE("read_image without a cell size fails clearly") {
  GrayImage8 g = random_gray(8, 8, 123);
  std::string path = scratch("no_sidecar.pgm");
  std::filesystem::remove(path + ".cell");  // may linger from an earlier run
  write_gray_image(path, g);
  CHECK_THROWS_WITH(read_image(path, std::nullopt, Parallax::FP),
                    ContainsSubstring("cell size unknown"));
  detail::write_file_atomic(path + ".cell", "banana\n");
  CHECK_THROWS_WITH(read_image(path, std::nullopt, Parallax::FP),
                    ContainsSubstring("cannot parse cell size"));
}

TEST_CASE("coefficient volume encodes and decodes bit-exactly") {
  CoefficientVolume vol;
  vol.width = 3;
  vol.height = 2;
  vol.cell_px = 1;
  vol.analysis_parallax = Parallax::FP;
  vol.plane_ids = {-2, 3};
  Array2D a(3, 2), b(3, 2), s(3, 2);
  for (int i = 0; i < 6; ++i) {
    a.data[i] = -1.5 + 0.25 * i;
    b.data[i] = 0.125 * i;
    s.data[i] = 2.0 - 0.5 * i;
  }
  vol.planes = {a, b};
  vol.scaling = s;

  std::string bytes = encode_volume(vol);
  CHECK(bytes.size() == 21 + 3 * (3 + 6 * 4));
  CoefficientVolume back = decode_volume(bytes);
  CHECK(back.width == 3);
  CHECK(back.height == 2);
  CHECK(back.cell_px == 1);
  CHECK(back.analysis_parallax == Parallax::FP);
  CHECK(back.plane_ids == std::vector<int>{-2, 3});
  CHECK(back.planes[0].data == a.data);
  CHECK(back.planes[1].data == b.data);
  CHECK(back.has_scaling());
  CHECK(back.scaling.data == s.data);
  // decode -> encode reproduces the byte stream exactly
  CHECK(encode_volume(back) == bytes);
}

TEST_CASE("coefficient volume survives a disk round trip") {
  CoefficientVolume vol;
  vol.width = 4;
  vol.height = 4;
  vol.cell_px = 2;
  vol.analysis_parallax = Parallax::HPO;
  vol.plane_ids = {1};
  Array2D a(4, 4);
  for (int i = 0; i < 16; ++i) a.data[i] = 0.1 * i;  // not f32-exact on purpose
  vol.planes = {a};

  std::string path = scratch("vol_roundtrip.mvwv");
  write_volume(path, vol);
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  CoefficientVolume back = read_volume(path);
  CHECK(back.plane_ids == std::vector<int>{1});
  CHECK_FALSE(back.has_scaling());
  for (int i = 0; i < 16; ++i)
    CHECK(back.planes[0].data[i] == static_cast<double>(static_cast<float>(0.1 * i)));
  // floats parse back to the same floats, so a rewrite is byte-identical
  write_volume(path + ".again", back);
  CHECK(detail::read_file(path + ".again") == detail::read_file(path));
}

TEST_CASE("empty coefficient volume is a valid file") {
  std::string bytes = volume_header(0, 5, 7, 1, 0);
  CoefficientVolume vol = decode_volume(bytes);
  CHECK(vol.plane_ids.empty());
  CHECK_FALSE(vol.has_scaling());
  CHECK(vol.width == 5);
  CHECK(vol.height == 7);
  CHECK(vol.analysis_parallax == Parallax::HPO);
  CHECK(encode_volume(vol) == bytes);
}

TEST_CASE("coefficient volume decoder rejects damaged files") {
  std::vector<float> plane(4, 0.5f);

  std::string good = volume_header(1, 2, 2, 1, 1);
  append_plane(good, 2, 0, plane);
  CHECK_NOTHROW(decode_volume(good));

  std::string bad_magic = good;
  bad_magic[0] = 'X';
  CHECK_THROWS_WITH(decode_volume(bad_magic), ContainsSubstring("bad magic"));

  std::string bad_version = good;
  bad_version[4] = 2;
  CHECK_THROWS_WITH(decode_volume(bad_version),
                    ContainsSubstring("unsupported coefficient volume version 2"));

  std::string bad_parallax = good;
  bad_parallax[6] = 2;
  CHECK_THROWS_WITH(decode_volume(bad_parallax), ContainsSubstring("bad parallax flag"));

  std::string truncated = good.substr(0, good.size() - 1);
  CHECK_THROWS_WITH(decode_volume(truncated), ContainsSubstring("truncated"));

  std::string trailing = good + "x";
  CHECK_THROWS_WITH(decode_volume(trailing), ContainsSubstring("trailing bytes"));

  std::string bad_kind = volume_header(1, 2, 2, 1, 1);
  append_plane(bad_kind, 2, 2, plane);
  CHECK_THROWS_WITH(decode_volume(bad_kind), ContainsSubstring("bad plane kind"));

  std::string zero_geom = volume_header(1, 0, 2, 1, 1);
  append_plane(zero_geom, 2, 0, plane);
  CHECK_THROWS_WITH(decode_volume(zero_geom), ContainsSubstring("empty geometry"));

  std::string scaling_depth = volume_header(1, 2, 2, 1, 1);
  append_plane(scaling_depth, 3, 1, plane);
  CHECK_THROWS_WITH(decode_volume(scaling_depth),
                    ContainsSubstring("scaling plane must have depth id 0"));

  std::string two_scaling = volume_header(1, 2, 2, 1, 2);
  append_plane(two_scaling, 0, 1, plane);
  append_plane(two_scaling, 0, 1, plane);
  CHECK_THROWS_WITH(decode_volume(two_scaling), ContainsSubstring("two scaling planes"));

  std::string zero_id = volume_header(1, 2, 2, 1, 1);
  append_plane(zero_id, 0, 0, plane);
  CHECK_THROWS_WITH(decode_volume(zero_id), ContainsSubstring("depth plane 0"));

  std::string unsorted = volume_header(1, 2, 2, 1, 2);
  append_plane(unsorted, 3, 0, plane);
  append_plane(unsorted, -2, 0, plane);
  CHECK_THROWS_WITH(decode_volume(unsorted), ContainsSubstring("strictly ascending"));

  std::string duplicate = volume_header(1, 2, 2, 1, 2);
  append_plane(duplicate, 3, 0, plane);
  append_plane(duplicate, 3, 0, plane);
  CHECK_THROWS_WITH(decode_volume(duplicate), ContainsSubstring("strictly ascending"));
}

TEST_CASE("write_matrix prints full-precision rows") {
  Array2D a(2, 2);
  a.at(0, 0) = 1.5;
  a.at(1, 0) = -0.25;
  a.at(0, 1) = 3.0;
  a.at(1, 1) = 0.0625;
  std::string path = scratch("matrix.txt");
  write_matrix(path, a);
  CHECK(detail::read_file(path) == "1.5 -0.25\n3 0.0625\n");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
}

TEST_CASE("write_spectrum_csv leaves absent columns empty") {
  SpectrumTable t;
  t.omega = {0.0, 1.0};
  t.analytic = {0.5};  // deliberately shorter than omega
  t.numeric = {1.0, 2.0};
  t.power = {1.0, 4.0};
  std::string path = scratch("spectrum.csv");
  write_spectrum_csv(path, t);
  CHECK(detail::read_file(path) == "omega,analytic,numeric,power\n0,0.5,1,1\n1,,2,4\n");
}

TEST_CASE("pseudo plane rendering maps sign onto gray levels") {
  Array2D a(3, 1);
  a.at(0, 0) = -2.0;
  a.at(1, 0) = 0.0;
  a.at(2, 0) = 2.0;
  GrayImage8 g = render_plane_image(a, PlaneStyle::Pseudo);
  CHECK(g.pixels == std::vector<std::uint8_t>{255, 128, 0});

  Array2D b(2, 1);
  b.at(0, 0) = 1.0;
  b.at(1, 0) = -0.5;
  GrayImage8 h = render_plane_image(b, PlaneStyle::Pseudo);
  CHECK(h.pixels == std::vector<std::uint8_t>{0, 191});

  Array2D z(4, 2);
  GrayImage8 flat = render_plane_image(z, PlaneStyle::Pseudo);
  CHECK(flat.pixels == std::vector<std::uint8_t>(8, 128));
}

TEST_CASE("gray plane rendering stretches min..max") {
  Array2D a(3, 1);
  a.at(0, 0) = 1.0;
  a.at(1, 0) = 2.0;
  a.at(2, 0) = 3.0;
  GrayImage8 g = render_plane_image(a, PlaneStyle::Gray);
  CHECK(g.pixels == std::vector<std::uint8_t>{0, 128, 255});

  Array2D c(2, 2);
  for (double& v : c.data) v = 0.7;
  GrayImage8 flat = render_plane_image(c, PlaneStyle::Gray);
  CHECK(flat.pixels == std::vector<std::uint8_t>(4, 128));
}
