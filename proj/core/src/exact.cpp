#include "normtrace/exact.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "normtrace/error.hpp"

namespace normtrace {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

Rational make(i128 n, i128 d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 a = n < 0 ? -n : n;
  i128 b = d;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  return {narrow(n), narrow(d)};
}

int sign(const Rational& r) { return (r.num() > 0) - (r.num() < 0); }

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  std::int64_t g = std::gcd(n, d);
  if (g == 0) g = 1;
  if (d < 0) g = -g;
  num_ = n / g;
  den_ = d / g;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(i128{a.num_} * b.den_ + i128{b.num_} * a.den_, i128{a.den_} * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make(i128{a.num_} * b.den_ - i128{b.num_} * a.den_, i128{a.den_} * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make(i128{a.num_} * b.num_, i128{a.den_} * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return make(i128{a.num_} * b.den_, i128{a.den_} * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return i128{a.num_} * b.den_ <=> i128{b.num_} * a.den_;
}

std::int64_t ipow(std::int64_t base, unsigned e) {
  i128 v = 1;
  for (unsigned i = 0; i < e; ++i) {
    v *= base;
    narrow(v);
  }
  return static_cast<std::int64_t>(v);
}

QuadraticSurd::QuadraticSurd(Rational rational_part, Rational sqrt_coeff, std::int64_t radicand)
    : a_(rational_part), b_(sqrt_coeff), r_(radicand) {
  if (radicand < 0) throw InvalidArgument("negative radicand");
  if (b_.num() == 0) r_ = 1;
}

QuadraticSurd QuadraticSurd::power(Rational coeff, std::int64_t q, std::int64_t h) {
  const std::int64_t half = h >= 0 ? h / 2 : -((-h + 1) / 2);  // floor(h / 2)
  const bool odd = (h - 2 * half) != 0;
  Rational scale = half >= 0 ? Rational(ipow(q, static_cast<unsigned>(half)))
                             : Rational(1, ipow(q, static_cast<unsigned>(-half)));
  if (!odd) return {coeff * scale, 0, 1};
  return {0, coeff * scale, q};
}

double QuadraticSurd::to_double() const {
  return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(r_));
}

int QuadraticSurd::compare(const Rational& x) const {
  // sign(a + b sqrt(r) - x) = sign(y + b sqrt(r)) with y = a - x.
  const Rational y = a_ - x;
  const int sy = sign(y);
  const int sb = r_ == 0 ? 0 : sign(b_);
  if (sb == 0) return sy;
  if (sy == 0) return sb;
  if (sy == sb) return sy;
  // Opposite signs: compare y^2 against b^2 r.
  const Rational y2 = y * y;
  const Rational b2r = b_ * b_ * Rational(r_);
  if (y2 == b2r) return 0;
  return y2 > b2r ? sy : sb;
}

bool QuadraticSurd::bounds(const Rational& x) const { return compare(x) >= 0; }

std::string QuadraticSurd::to_string() const {
  if (b_.num() == 0) return a_.to_string();
  std::string s = a_.num() == 0 ? "" : a_.to_string() + "+";
  return s + b_.to_string() + "*sqrt(" + std::to_string(r_) + ")";
}

QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
  if (x.b_.num() == 0) return {x.a_ + y.a_, y.b_, y.r_};
  if (y.b_.num() == 0) return {x.a_ + y.a_, x.b_, x.r_};
  if (x.r_ != y.r_) throw InvalidArgument("cannot add surds with different radicands");
  return {x.a_ + y.a_, x.b_ + y.b_, x.r_};
}

QuadraticSurd operator*(const Rational& s, const QuadraticSurd& x) { return {s * x.a_, s * x.b_, x.r_}; }

}  // namespace normtrace
