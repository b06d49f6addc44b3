#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "permorb/errors.hpp"

namespace permorb {

/*
 * Exact rationals over int64 with 128-bit intermediates.
 *
 * Always stored reduced with a positive denominator. Any result that does
 * not fit back into int64 throws ErrorCode::overflow instead of wrapping.
 * Central charges and conformal spins in this library have denominators
 * in the low hundreds, so overflow indicates corrupted input.
 */
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit from integer
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_integer() const noexcept { return den_ == 1; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// floor(x) as an integer.
  std::int64_t floor() const noexcept {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  /// x - floor(x), in [0, 1).
  Rational frac() const {
    std::int64_t rem = num_ % den_;
    if (rem < 0) rem += den_;
    return Rational(rem, den_);
  }

  /// Parses "p" or "p/q" (optional leading '-'), the file-format syntax.
  static Rational parse(std::string_view text) {
    auto fail = [&] { throw Error(ErrorCode::parse, "malformed rational '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    auto slash = text.find('/');
    auto read = [&](std::string_view part, bool allow_sign) {
      if (part.empty()) fail();
      if (!allow_sign && part.front() == '-') fail();
      if (part.front() == '+') fail();
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
      if (ec == std::errc::result_out_of_range)
        throw Error(ErrorCode::overflow, "rational component out of range in '" + std::string(text) + "'");
      if (ec != std::errc() || ptr != part.data() + part.size()) fail();
      return value;
    };
    if (slash == std::string_view::npos) return Rational(read(text, true));
    std::int64_t num = read(text.substr(0, slash), true);
    std::int64_t den = read(text.substr(slash + 1), false);
    if (den == 0) throw Error(ErrorCode::domain, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error(ErrorCode::domain, "division by zero rational");
    return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
  }
  Rational operator-() const { return from_wide(-wide(num_), den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return wide(a.num_) * b.den_ <=> wide(b.num_) * a.den_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  using wide_t = __int128;
  static wide_t wide(std::int64_t v) { return static_cast<wide_t>(v); }

  static Rational from_wide(wide_t num, wide_t den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    wide_t g = gcd_wide(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr wide_t lo = std::numeric_limits<std::int64_t>::min();
    constexpr wide_t hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) throw Error(ErrorCode::overflow, "rational arithmetic overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  static wide_t gcd_wide(wide_t a, wide_t b) {
    while (b != 0) {
      wide_t t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void assign(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorCode::domain, "zero denominator");
    *this = from_wide(wide(num), wide(den));
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A rational number modulo 1, stored as its representative in [0, 1).
/// Conformal spins live here; e^{2 pi i h} is only evaluated on request.
class RationalMod1 {
 public:
  RationalMod1() = default;
  RationalMod1(const Rational& value) : value_(value.frac()) {}  // NOLINT: reduction is the point
  RationalMod1(std::int64_t num, std::int64_t den) : value_(Rational(num, den).frac()) {}

  const Rational& value() const noexcept { return value_; }
  std::int64_t num() const noexcept { return value_.num(); }
  std::int64_t den() const noexcept { return value_.den(); }
  bool is_zero() const noexcept { return value_.num() == 0; }

  std::complex<double> phase() const {
    // Reduce the angle exactly before the transcendental call.
    double angle = 2.0 * std::numbers::pi * value_.to_double();
    return std::polar(1.0, angle);
  }

  std::string to_string() const { return value_.to_string(); }

  friend RationalMod1 operator+(const RationalMod1& a, const RationalMod1& b) { return a.value_ + b.value_; }
  friend RationalMod1 operator-(const RationalMod1& a, const RationalMod1& b) { return a.value_ - b.value_; }
  RationalMod1 operator-() const { return -value_; }
  RationalMod1& operator+=(const RationalMod1& o) { return *this = *this + o; }

  friend bool operator==(const RationalMod1&, const RationalMod1&) = default;
  friend std::strong_ordering operator<=>(const RationalMod1& a, const RationalMod1& b) {
    return a.value_ <=> b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const RationalMod1& r) { return os << r.to_string(); }

 private:
  Rational value_;
};

}  // namespace permorb
