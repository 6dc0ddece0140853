#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mg {

/// Exact rational number on int64 components. All comparisons are exact
/// (cross-multiplied in 128 bits); there is no floating point anywhere in
/// a verdict path that uses this type.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den);
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  /// "p/q", or just "p" when q == 1.
  std::string str() const;

  /// Accepts "p", "p/q", optional leading '-'. Throws ParseError.
  static Rational parse(std::string_view text);

 private:
  std::int64_t num_;
  std::int64_t den_;  // > 0
};

}  // namespace mg
