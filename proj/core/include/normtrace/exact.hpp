#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace normtrace {

// Exact rational with 64-bit numerator and denominator, always reduced and
// with a positive denominator. Overflow throws std::overflow_error.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integers
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  Rational abs() const { return {num_ < 0 ? -num_ : num_, den_}; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return {-num_, den_}; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Exact integer power with overflow checking.
std::int64_t ipow(std::int64_t base, unsigned e);

// The real number rational_part + sqrt_coeff * sqrt(radicand). Every bound
// in this library is a rational combination of q^{h/2}, so it fits this
// shape with radicand q and compares exactly against rationals.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(Rational rational_part, Rational sqrt_coeff, std::int64_t radicand);

  // coeff * q^{h/2}, h may be odd or negative.
  static QuadraticSurd power(Rational coeff, std::int64_t q, std::int64_t h);
  static QuadraticSurd exact(Rational v) { return {v, 0, 1}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt_coeff() const { return b_; }
  std::int64_t radicand() const { return r_; }

  double to_double() const;
  // Exact test x <= *this.
  bool bounds(const Rational& x) const;
  // Exact sign of (*this - x).
  int compare(const Rational& x) const;
  std::string to_string() const;

  // Radicands must agree unless one sqrt part is zero.
  friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator*(const Rational& s, const QuadraticSurd& x);

 private:
  Rational a_;
  Rational b_;
  std::int64_t r_ = 1;
};

}  // namespace normtrace
