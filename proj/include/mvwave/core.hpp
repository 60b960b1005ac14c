// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mvwave Project Contributors

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvwave {

// Thrown for every contract violation: bad arguments, incompatible sizes,
// malformed files. The message is meant to be shown to a user as-is.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(message);
}

// Horizontal-parallax-only vs full-parallax multiview geometry.
enum class Parallax : std::uint8_t { HPO = 0, FP = 1 };

inline const char* to_string(Parallax p) { return p == Parallax::HPO ? "hpo" : "fp"; }

// Side of the screen a depth plane lies on. Plane +n floats in front of the
// screen (towards the viewer), plane -n sits behind it; the screen itself is
// |d| = 1. Plane 0 does not exist.
enum class Sign : std::int8_t { Minus = -1, Plus = 1 };

inline int order_of(int depth) {
  require(depth != 0, "depth plane 0 does not exist (the screen plane is |d| = 1)");
  return depth < 0 ? -depth : depth;
}

inline Sign sign_of(int depth) {
  require(depth != 0, "depth plane 0 does not exist (the screen plane is |d| = 1)");
  return depth > 0 ? Sign::Plus : Sign::Minus;
}

// Exact rational arithmetic for the pattern-placement table. The values
// involved have tiny numerators/denominators, so overflow is not a concern.
struct Fraction {
  long long num = 0;
  long long den = 1;

  Fraction() = default;
  Fraction(long long n) : num(n) {}  // NOLINT: implicit by design, Fraction(3)
  Fraction(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw Error("fraction with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Fraction operator+(Fraction a, Fraction b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend Fraction operator-(Fraction a, Fraction b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend Fraction operator*(Fraction a, Fraction b) { return {a.num * b.num, a.den * b.den}; }
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }
};

// Dense row-major 2D array of doubles; used for kernels, coefficient planes
// and image payloads alike. A default-constructed instance (width 0) doubles
// as "absent" in a few spots.
struct Array2D {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  Array2D() = default;
  Array2D(int w, int h, double fill = 0.0)
      : width(w), height(h), data(checked_size(w, h), fill) {}

  static std::size_t checked_size(int w, int h) {
    require(w > 0 && h > 0, "array dimensions must be positive");
    return static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  }

  bool empty() const { return data.empty(); }
  std::size_t size() const { return data.size(); }

  double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

  double* row(int y) { return data.data() + static_cast<std::size_t>(y) * width; }
  const double* row(int y) const { return data.data() + static_cast<std::size_t>(y) * width; }
};

// 8-bit grayscale raster, the unit of PGM/PNG export.
struct GrayImage8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

}  // namespace mvwave
