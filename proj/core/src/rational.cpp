#include "mg/rational.hpp"

#include <numeric>

#include "mg/errors.hpp"

namespace mg {

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw PreconditionError("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  const __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  const __int128 d = static_cast<__int128>(den_) * o.den_;
  return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

Rational Rational::operator-(const Rational& o) const {
  return *this + Rational(-o.num_, o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  // Cross-reduce first so intermediate products stay small.
  const std::int64_t a = num_ < 0 ? -num_ : num_;
  const std::int64_t g1 = std::gcd(a, o.den_);
  const std::int64_t b = o.num_ < 0 ? -o.num_ : o.num_;
  const std::int64_t g2 = std::gcd(b, den_);
  return Rational((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw PreconditionError("division of rational by zero");
  return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  const auto bad = [&] { throw ParseError("invalid rational: '" + std::string(text) + "'"); };
  if (text.empty()) bad();
  std::size_t pos = 0;
  bool neg = false;
  if (text[pos] == '-') {
    neg = true;
    ++pos;
  }
  const auto read_int = [&](std::int64_t& out) {
    if (pos >= text.size() || text[pos] < '0' || text[pos] > '9') bad();
    out = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      out = out * 10 + (text[pos] - '0');
      ++pos;
    }
  };
  std::int64_t num = 0;
  std::int64_t den = 1;
  read_int(num);
  if (pos < text.size()) {
    if (text[pos] != '/') bad();
    ++pos;
    read_int(den);
    if (pos != text.size()) bad();
    if (den == 0) bad();
  }
  return Rational(neg ? -num : num, den);
}

}  // namespace mg
