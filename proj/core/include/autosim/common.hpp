// Copyright 2026 The Autosim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace autosim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Planar vector in the local metric frame (meters or meters/second).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  [[nodiscard]] double norm() const { return std::hypot(x, y); }
  [[nodiscard]] bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Distance along a->b to the first point within `r` of `c`; zero when `a`
/// is already inside.
inline std::optional<double> segment_entry_distance(Vec2 a, Vec2 b, Vec2 c, double r) {
  const Vec2 d = b - a;
  const Vec2 f = a - c;
  const double len2 = d.x * d.x + d.y * d.y;
  const double cc = f.x * f.x + f.y * f.y - r * r;
  if (cc <= 0.0) return 0.0;
  if (len2 == 0.0) return std::nullopt;
  const double bb = 2.0 * (f.x * d.x + f.y * d.y);
  const double disc = bb * bb - 4.0 * len2 * cc;
  if (disc < 0.0) return std::nullopt;
  const double t = (-bb - std::sqrt(disc)) / (2.0 * len2);
  if (t < 0.0 || t > 1.0) return std::nullopt;
  return t * std::sqrt(len2);
}

inline bool segment_intersects_circle(Vec2 a, Vec2 b, Vec2 c, double r) {
  return segment_entry_distance(a, b, c, r).has_value();
}

/// Axis-aligned box, used for the world bounds and encoder normalization.
struct Box {
  Vec2 min;
  Vec2 max;

  [[nodiscard]] double width() const { return max.x - min.x; }
  [[nodiscard]] double height() const { return max.y - min.y; }
  [[nodiscard]] bool degenerate() const {
    return !(width() > 0.0) || !(height() > 0.0) || !min.finite() || !max.finite();
  }
  [[nodiscard]] bool contains(Vec2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  constexpr bool operator==(const Box&) const = default;
};

/// Wraps an angle into [0, 2π).
inline double wrap_two_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Wraps an angle into (-π, π].
inline double wrap_pi(double a) {
  double r = std::fmod(a + kPi, kTwoPi);
  if (r <= 0.0) r += kTwoPi;
  return r - kPi;
}

/// Bearing of `to` seen from `from` when facing `heading`, in (-π, π].
inline double relative_bearing(Vec2 from, double heading, Vec2 to) {
  const Vec2 d = to - from;
  return wrap_pi(std::atan2(d.y, d.x) - heading);
}

/// SplitMix64 finalizer; mixes a master seed with stream tags into an
/// independent sub-seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  return mix_seed(mix_seed(mix_seed(mix_seed(seed) ^ a) ^ b) ^ c);
}

/// Stream tags for derive_seed. Each stochastic subsystem draws from its own
/// stream so adding draws in one never shifts another.
enum class Stream : std::uint64_t {
  kSense = 0x53454e53,
  kStep = 0x53544550,
  kNet = 0x4e455457,
  kExplore = 0x45585052,
  kInit = 0x494e4954,
};

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t a = 0, std::uint64_t b = 0) {
  return Rng(derive_seed(seed, static_cast<std::uint64_t>(stream), a, b));
}

/// Raised when an input document (scenario, corpus, checkpoint) fails validation.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Raised when a caller violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace autosim
