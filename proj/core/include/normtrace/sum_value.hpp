#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace normtrace {

inline constexpr double kDefaultTolerance = 1e-6;

// Complex carrier for every exponential sum.
struct SumValue {
  double re = 0.0;
  double im = 0.0;

  SumValue() = default;
  SumValue(double r, double i = 0.0) : re(r), im(i) {}
  explicit SumValue(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> complex() const { return {re, im}; }
  double magnitude() const { return std::hypot(re, im); }

  // Absolute tolerance tau = rel_tol * (1 + |z|) used by every equality and
  // rounding check on sums.
  double tolerance(double rel_tol = kDefaultTolerance) const { return rel_tol * (1.0 + magnitude()); }

  // Nearest integer, or NumericalIntegrityError when |im| or the distance to
  // that integer exceeds the tolerance.
  std::int64_t round_to_integer(double rel_tol = kDefaultTolerance) const;

  // |a - b| <= rel_tol * (1 + max(|a|, |b|)).
  bool approx_equal(const SumValue& other, double rel_tol = kDefaultTolerance) const;

  // "re+imi" with 12 significant digits; the imaginary part is omitted when
  // it is below 1e-12.
  std::string to_string() const;

  friend SumValue operator+(SumValue a, SumValue b) { return {a.re + b.re, a.im + b.im}; }
  friend SumValue operator-(SumValue a, SumValue b) { return {a.re - b.re, a.im - b.im}; }
  friend SumValue operator*(SumValue a, SumValue b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend SumValue operator*(double s, SumValue a) { return {s * a.re, s * a.im}; }
  SumValue& operator+=(SumValue b) {
    re += b.re;
    im += b.im;
    return *this;
  }
};

double distance(const SumValue& a, const SumValue& b);

// Streaming pairwise summation: blocks of kBlock terms are summed naively
// and then merged like a binary counter, so the rounding pattern depends
// only on the sequence of terms.
class PairwiseAccumulator {
 public:
  void add(std::complex<double> z);
  void add(SumValue v) { add(v.complex()); }
  std::complex<double> total() const;
  SumValue value() const { return SumValue(total()); }
  std::uint64_t count() const { return count_; }

 private:
  static constexpr std::uint64_t kBlock = 64;

  std::complex<double> block_{0.0, 0.0};
  std::uint64_t in_block_ = 0;
  std::uint64_t count_ = 0;
  // levels_[i] holds a partial sum of 2^i blocks when occupied_[i] is set.
  std::vector<std::complex<double>> levels_;
  std::vector<bool> occupied_;
};

// Pairwise tree reduction over already computed partial sums in index order.
SumValue pairwise_sum(const std::vector<SumValue>& parts);

}  // namespace normtrace
