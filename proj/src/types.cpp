#include "vlo/types.hpp"

#include <numeric>
#include <stdexcept>

namespace vlo {

using i128 = __int128;

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  std::size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::int64_t n = std::stoll(std::string(text.substr(0, slash)));
    std::int64_t d = std::stoll(std::string(text.substr(slash + 1)));
    return Rational(n, d);
  }
  std::int64_t n = 0;
  std::int64_t d = 1;
  bool seen_dot = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("malformed number: " + std::string(text));
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') throw std::invalid_argument("malformed number: " + std::string(text));
    seen_digit = true;
    if (n > (std::numeric_limits<std::int64_t>::max() - 9) / 10 || d > std::numeric_limits<std::int64_t>::max() / 10)
      throw std::invalid_argument("number has too many digits: " + std::string(text));
    n = n * 10 + (c - '0');
    if (seen_dot) d *= 10;
  }
  if (!seen_digit) throw std::invalid_argument("malformed number: " + std::string(text));
  return Rational(n, d);
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::int64_t Rational::floor_times(std::int64_t x) const {
  i128 p = static_cast<i128>(num) * x;
  i128 q = p / den;
  if (p % den != 0 && p < 0) --q;
  return static_cast<std::int64_t>(q);
}

std::int64_t Rational::ceil_times(std::int64_t x) const {
  i128 p = static_cast<i128>(num) * x;
  i128 q = p / den;
  if (p % den != 0 && p > 0) ++q;
  return static_cast<std::int64_t>(q);
}

std::int64_t Rational::ceil_inverse() const {
  if (num <= 0) throw std::invalid_argument("inverse of non-positive rational");
  return (den + num - 1) / num;
}

Rational operator*(Rational a, Rational b) {
  return Rational(a.num * b.num, a.den * b.den);
}

Rational operator+(Rational a, Rational b) {
  return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

Rational operator/(Rational a, std::int64_t k) { return Rational(a.num, a.den * k); }

bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }

std::strong_ordering operator<=>(Rational a, Rational b) {
  i128 l = static_cast<i128>(a.num) * b.den;
  i128 r = static_cast<i128>(b.num) * a.den;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool within_additive(Length lhs, Length rhs, Rational eps, Length alpha) {
  if (!finite(lhs)) return false;
  if (!finite(rhs)) return true;
  return static_cast<i128>(lhs) * eps.den <= static_cast<i128>(rhs) * eps.den + static_cast<i128>(eps.num) * alpha;
}

bool within_stretch(Length lhs, Length rhs, Rational eps) {
  if (!finite(rhs)) return true;
  if (!finite(lhs)) return false;
  return static_cast<i128>(lhs) * eps.den <= static_cast<i128>(rhs) * (eps.den + eps.num);
}

}  // namespace vlo
