#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace vlo {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
using Dart = std::int32_t;
using Label = std::int32_t;
using Length = std::int64_t;

inline constexpr Vertex kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;
inline constexpr Label kNoLabel = -1;

// Large enough that sums of a few infinite values never overflow.
inline constexpr Length kInfinity = std::numeric_limits<Length>::max() / 4;

inline constexpr Length sat_add(Length a, Length b) {
  if (a >= kInfinity || b >= kInfinity) return kInfinity;
  Length s = a + b;
  return s >= kInfinity ? kInfinity : s;
}

inline constexpr bool finite(Length d) { return d < kInfinity; }

// Exact non-negative fraction. Accuracy parameters are kept exact so that
// bound checks of the form a <= b + eps * alpha never round.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  static Rational parse(std::string_view text);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  // floor / ceil of this * x
  std::int64_t floor_times(std::int64_t x) const;
  std::int64_t ceil_times(std::int64_t x) const;
  // ceil(1 / this)
  std::int64_t ceil_inverse() const;

  friend Rational operator*(Rational a, Rational b);
  friend Rational operator+(Rational a, Rational b);
  friend Rational operator/(Rational a, std::int64_t k);
  friend bool operator==(Rational a, Rational b);
  friend std::strong_ordering operator<=>(Rational a, Rational b);
};

// lhs <= rhs + eps * alpha, evaluated without rounding.
bool within_additive(Length lhs, Length rhs, Rational eps, Length alpha);
// lhs <= (1 + eps) * rhs, evaluated without rounding.
bool within_stretch(Length lhs, Length rhs, Rational eps);

}  // namespace vlo
