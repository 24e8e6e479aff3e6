#include "normtrace/sum_value.hpp"

#include <algorithm>
#include <cstdio>

#include "normtrace/error.hpp"

namespace normtrace {

std::int64_t SumValue::round_to_integer(double rel_tol) const {
  const double tau = tolerance(rel_tol);
  const double nearest = std::nearbyint(re);
  if (!std::isfinite(re) || !std::isfinite(im) || std::abs(im) > tau || std::abs(re - nearest) > tau) {
    throw NumericalIntegrityError("value " + to_string() + " is not within " + std::to_string(tau) +
                                  " of an integer");
  }
  return static_cast<std::int64_t>(nearest);
}

bool SumValue::approx_equal(const SumValue& other, double rel_tol) const {
  const double scale = std::max(magnitude(), other.magnitude());
  return distance(*this, other) <= rel_tol * (1.0 + scale);
}

std::string SumValue::to_string() const {
  char buf[96];
  const double r = std::abs(re) < 1e-12 ? 0.0 : re;
  if (std::abs(im) < 1e-12) {
    std::snprintf(buf, sizeof buf, "%.12g", r);
  } else {
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", r, im);
  }
  return buf;
}

double distance(const SumValue& a, const SumValue& b) { return (a - b).magnitude(); }

void PairwiseAccumulator::add(std::complex<double> z) {
  block_ += z;
  ++count_;
  if (++in_block_ < kBlock) return;
  std::complex<double> carry = block_;
  block_ = {0.0, 0.0};
  in_block_ = 0;
  for (std::size_t level = 0;; ++level) {
    if (level == levels_.size()) {
      levels_.push_back(carry);
      occupied_.push_back(true);
      return;
    }
    if (!occupied_[level]) {
      levels_[level] = carry;
      occupied_[level] = true;
      return;
    }
    carry = levels_[level] + carry;
    occupied_[level] = false;
  }
}

std::complex<double> PairwiseAccumulator::total() const {
  std::complex<double> sum = block_;
  for (std::size_t level = 0; level < levels_.size(); ++level) {
    if (occupied_[level]) sum = levels_[level] + sum;
  }
  return sum;
}

SumValue pairwise_sum(const std::vector<SumValue>& parts) {
  if (parts.empty()) return {};
  std::vector<SumValue> level = parts;
  while (level.size() > 1) {
    std::vector<SumValue> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

}  // namespace normtrace
