#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "normtrace/algebra.hpp"
#include "normtrace/chars.hpp"
#include "normtrace/exact.hpp"
#include "normtrace/parallel.hpp"
#include "normtrace/sums.hpp"

namespace normtrace {

// Brute-force (trace, norm) histogram over B or B*.
class TraceNormTable {
 public:
  TraceNormTable() = default;
  TraceNormTable(std::uint32_t q, std::vector<std::uint64_t> counts) : q_(q), counts_(std::move(counts)) {}

  std::uint32_t q() const { return q_; }
  std::uint64_t at(Elem a, Elem b) const { return counts_[std::size_t{a} * q_ + b]; }
  // Sum over norms b != 0.
  std::uint64_t units_with_trace(Elem a) const;
  std::uint64_t total() const;
  const std::vector<std::uint64_t>& raw() const { return counts_; }

  friend bool operator==(const TraceNormTable&, const TraceNormTable&) = default;

 private:
  std::uint32_t q_ = 0;
  std::vector<std::uint64_t> counts_;
};

TraceNormTable trace_norm_table(const AlgebraSpec& spec, Domain domain, const Execution& exec = {});

enum class CountMethod { kBrute, kFormula, kBoth };

struct CountRecord {
  std::string label;
  Elem a = 0;
  std::optional<Elem> b;
  unsigned r = 0;
  std::optional<std::int64_t> brute;
  std::optional<std::int64_t> formula;
  Rational main_term;
  std::optional<QuadraticSurd> bound;
  // A second closed form kept for comparison, e.g. the inclusion-exclusion
  // value for norm-zero counts.
  std::optional<Rational> reference;
  std::vector<std::string> notes;

  // Brute value when available, otherwise the formula value.
  std::int64_t value() const;
  Rational error() const { return (Rational(value()) - main_term).abs(); }
  bool routes_agree() const { return !brute || !formula || *brute == *formula; }
  bool within_bound() const { return !bound || bound->bounds(error()); }
  // "brute", "formula", "both-agree" or "disagree".
  std::string provenance() const;
};

// |B*| / (q (q - 1)) + (-1)^{sum d} q^{(n-m)/2} / q
Rational norm_trace_main_term(const AlgebraSpec& spec);
// |B*| / (q (q - 1))
Rational norm_trace_simple_main_term(const AlgebraSpec& spec);
// (m - 1) q^{(n-2)/2}
QuadraticSurd norm_trace_bound(const AlgebraSpec& spec);
// m q^{(n-2)/2}, against the simple main term.
QuadraticSurd norm_trace_simple_bound(const AlgebraSpec& spec);
// (gcd(m, q-1) - 1) q^{(n-2)/2}, a = 0 only.
QuadraticSurd norm_trace_zero_bound(const AlgebraSpec& spec);
// gcd(m,q-1)/(q-1) q^{(n-2)/2} + (q-1-gcd(m,q-1))/(q-1) q^{(n-1)/2} against
// the simple main term, a != 0 only.
QuadraticSurd norm_trace_elementary_bound(const AlgebraSpec& spec);

// The character-sum expression for N_B(a, b), rounded to an integer.
std::int64_t norm_trace_formula(const AlgebraSpec& spec, const AdditiveCharacter& psi, Elem a, Elem b,
                                SmRoute route = SmRoute::kDefinition);

// N_B(a, b) for b != 0. `units` may supply a precomputed B* histogram.
CountRecord count_norm_trace(const AlgebraSpec& spec, Elem a, Elem b, CountMethod method = CountMethod::kBoth,
                             const Execution& exec = {}, const TraceNormTable* units = nullptr);

// q^{n-1} - N_{B*}(a) with the closed form for N_{B*}(a).
std::int64_t norm_zero_closed_form(const AlgebraSpec& spec, Elem a);
// The inclusion-exclusion expression; valid for etale algebras only.
Rational norm_zero_inclusion_exclusion(const AlgebraSpec& spec, Elem a);

// N_B(a, 0). `all` may supply a precomputed histogram over all of B.
CountRecord count_norm_zero(const AlgebraSpec& spec, Elem a, CountMethod method = CountMethod::kBoth,
                            const Execution& exec = {}, const TraceNormTable* all = nullptr);

// Closed form for N_{B*}(a).
std::int64_t trace_units_closed_form(const AlgebraSpec& spec, Elem a);
CountRecord count_trace_units(const AlgebraSpec& spec, Elem a, CountMethod method = CountMethod::kBoth,
                              const Execution& exec = {}, const TraceNormTable* units = nullptr);

// |B*|^{r-1} / q
Rational product_trace_main_term(const AlgebraSpec& spec, unsigned r);
// r^{sum d} q^{((r-1)n - 1)/2}
QuadraticSurd product_trace_conjecture_bound(const AlgebraSpec& spec, unsigned r);

// N(B, r, x, a) from a product-trace sweep. Records with a = 0 or
// non-regular x carry the note "conjecture excluded".
CountRecord count_product_trace(const AlgebraSpec& spec, unsigned r, const ProductTraceResult& sweep, Elem a);
CountRecord count_product_trace(const AlgebraSpec& spec, unsigned r, const AlgebraElement& x, Elem a,
                                const Execution& exec = {});

// N_{B,f}(a) over all of B, or over units with norm b when b is given.
// For split B without b the reference bound (r-1)^n q^{(n-1)/2} is attached
// against main term q^{n-1}; it is informational only.
CountRecord count_poly_trace(const AlgebraSpec& spec, const Poly& f, Elem a, std::optional<Elem> b = std::nullopt,
                             const Execution& exec = {});

struct IdentityResidual {
  std::string name;
  Elem a = 0;
  Elem b = 0;
  Rational lhs;
  Rational rhs;

  Rational residual() const { return lhs - rhs; }
};

struct NumericResidual {
  std::string name;
  Elem b = 0;
  SumValue lhs;
  SumValue rhs;

  double residual() const { return distance(lhs, rhs); }
};

struct IdentitySuite {
  std::vector<IdentityResidual> exact;
  std::vector<NumericResidual> numeric;
};

// Reduction identities evaluated from independent brute-force counts of B
// and of its split companion F_q^m:
//   reduction           N_B against N_{F_q^m}, every algebra
//   etale-comparison    the etale form of the same relation
//   field-vs-split      N_{F_{q^n}} against N_{F_q^n}, fields only
//   kloosterman-reduction, trace-expansion (numeric)
IdentitySuite identity_suite(const AlgebraSpec& spec, const AdditiveCharacter& psi, const Execution& exec = {});

}  // namespace normtrace
