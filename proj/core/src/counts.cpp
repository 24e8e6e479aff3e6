#include "normtrace/counts.hpp"

#include <numeric>

#include "normtrace/error.hpp"

namespace normtrace {

namespace {

std::int64_t sign_pow(std::uint64_t e) { return e % 2 == 0 ? 1 : -1; }

std::int64_t units_of(const AlgebraSpec& spec) {
  if (spec.unit_count() == 0 || spec.unit_count() > static_cast<std::uint64_t>(INT64_MAX)) {
    throw CapExceeded("|B*| of " + spec.summary() + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(spec.unit_count());
}

void require_elem(const AlgebraSpec& spec, Elem v, const char* name) {
  if (v >= spec.q()) {
    throw InvalidArgument(std::string(name) + " = " + std::to_string(v) + " is not in F_" + std::to_string(spec.q()));
  }
}

}  // namespace

std::uint64_t TraceNormTable::units_with_trace(Elem a) const {
  std::uint64_t s = 0;
  for (Elem b = 1; b < q_; ++b) s += at(a, b);
  return s;
}

std::uint64_t TraceNormTable::total() const { return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0}); }

TraceNormTable trace_norm_table(const AlgebraSpec& spec, Domain domain, const Execution& exec) {
  const Enumerator en(spec, domain, exec.max_summands);
  const std::uint32_t q = spec.q();
  const auto parts =
      map_partitions<std::vector<std::uint64_t>>(en.size(), exec, [&](IndexRange range, std::size_t) {
        std::vector<std::uint64_t> counts(std::size_t{q} * q, 0);
        en.for_each(range, [&](std::uint64_t, const auto&, Elem t, Elem nm) { ++counts[std::size_t{t} * q + nm]; });
        return counts;
      });
  std::vector<std::uint64_t> counts(std::size_t{q} * q, 0);
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += p[i];
  }
  return {q, std::move(counts)};
}

std::int64_t CountRecord::value() const {
  if (brute) return *brute;
  if (formula) return *formula;
  throw Error("count record '" + label + "' has no value");
}

std::string CountRecord::provenance() const {
  if (brute && formula) return *brute == *formula ? "both-agree" : "disagree";
  return brute ? "brute" : "formula";
}

Rational norm_trace_main_term(const AlgebraSpec& spec) {
  const std::int64_t q = spec.q();
  return norm_trace_simple_main_term(spec) + Rational(sign_pow(spec.sum_d()) * reduction_scale(spec), q);
}

Rational norm_trace_simple_main_term(const AlgebraSpec& spec) {
  const std::int64_t q = spec.q();
  return Rational(units_of(spec), q * (q - 1));
}

QuadraticSurd norm_trace_bound(const AlgebraSpec& spec) {
  return QuadraticSurd::power(static_cast<std::int64_t>(spec.m()) - 1, spec.q(), static_cast<std::int64_t>(spec.n()) - 2);
}

QuadraticSurd norm_trace_simple_bound(const AlgebraSpec& spec) {
  return QuadraticSurd::power(static_cast<std::int64_t>(spec.m()), spec.q(), static_cast<std::int64_t>(spec.n()) - 2);
}

QuadraticSurd norm_trace_zero_bound(const AlgebraSpec& spec) {
  const std::int64_t g = std::gcd<std::int64_t>(spec.m(), spec.q() - 1);
  return QuadraticSurd::power(g - 1, spec.q(), static_cast<std::int64_t>(spec.n()) - 2);
}

QuadraticSurd norm_trace_elementary_bound(const AlgebraSpec& spec) {
  const std::int64_t q = spec.q();
  const std::int64_t g = std::gcd<std::int64_t>(spec.m(), q - 1);
  const std::int64_t n = spec.n();
  return QuadraticSurd::power(Rational(g, q - 1), q, n - 2) + QuadraticSurd::power(Rational(q - 1 - g, q - 1), q, n - 1);
}

std::int64_t norm_trace_formula(const AlgebraSpec& spec, const AdditiveCharacter& psi, Elem a, Elem b, SmRoute route) {
  const double q = spec.q();
  const double scale = reduction_sign(spec) * static_cast<double>(reduction_scale(spec));
  const SumValue s = s_m(psi, spec.m(), a, b, route);
  const SumValue value = (1.0 / (q * (q - 1))) * (SumValue(static_cast<double>(units_of(spec))) + scale * s);
  return value.round_to_integer();
}

CountRecord count_norm_trace(const AlgebraSpec& spec, Elem a, Elem b, CountMethod method, const Execution& exec,
                             const TraceNormTable* units) {
  require_elem(spec, a, "a");
  require_elem(spec, b, "b");
  if (b == 0) throw InvalidArgument("b must be nonzero here; norm-zero counts use the norm-zero path");
  CountRecord rec;
  rec.label = "norm-trace";
  rec.a = a;
  rec.b = b;
  if (method != CountMethod::kFormula) {
    TraceNormTable local;
    if (!units) {
      local = trace_norm_table(spec, Domain::kUnits, exec);
      units = &local;
    }
    rec.brute = static_cast<std::int64_t>(units->at(a, b));
  }
  if (method != CountMethod::kBrute) {
    rec.formula = norm_trace_formula(spec, AdditiveCharacter(spec.base_field()), a, b);
  }
  rec.main_term = norm_trace_main_term(spec);
  rec.bound = norm_trace_bound(spec);
  return rec;
}

std::int64_t trace_units_closed_form(const AlgebraSpec& spec, Elem a) {
  require_elem(spec, a, "a");
  const std::int64_t q = spec.q();
  const std::int64_t s = sign_pow(spec.sum_d()) * reduction_scale(spec);
  const std::int64_t num = a == 0 ? units_of(spec) + (q - 1) * s : units_of(spec) - s;
  if (num % q != 0) throw NumericalIntegrityError("trace-unit closed form is not an integer");
  return num / q;
}

std::int64_t norm_zero_closed_form(const AlgebraSpec& spec, Elem a) {
  return ipow(spec.q(), spec.n() - 1) - trace_units_closed_form(spec, a);
}

Rational norm_zero_inclusion_exclusion(const AlgebraSpec& spec, Elem a) {
  require_elem(spec, a, "a");
  const std::int64_t q = spec.q();
  std::int64_t prod = 1;
  for (const auto& f : spec.factors()) prod *= ipow(q, f.n * f.d * f.d) - 1;
  const std::int64_t k = static_cast<std::int64_t>(spec.k());
  Rational v(ipow(q, spec.n()) - prod + sign_pow(k), q);
  if (a == 0) v = v + Rational(sign_pow(k - 1));
  return v;
}

CountRecord count_norm_zero(const AlgebraSpec& spec, Elem a, CountMethod method, const Execution& exec,
                            const TraceNormTable* all) {
  require_elem(spec, a, "a");
  CountRecord rec;
  rec.label = "norm-zero";
  rec.a = a;
  rec.b = 0;
  if (method != CountMethod::kFormula) {
    TraceNormTable local;
    if (!all) {
      local = trace_norm_table(spec, Domain::kAll, exec);
      all = &local;
    }
    rec.brute = static_cast<std::int64_t>(all->at(a, 0));
  }
  if (method != CountMethod::kBrute) rec.formula = norm_zero_closed_form(spec, a);
  rec.main_term = rec.formula ? Rational(*rec.formula) : Rational(norm_zero_closed_form(spec, a));
  rec.reference = norm_zero_inclusion_exclusion(spec, a);
  if (!spec.is_etale()) rec.notes.push_back("inclusion-exclusion value valid for etale algebras only");
  return rec;
}

CountRecord count_trace_units(const AlgebraSpec& spec, Elem a, CountMethod method, const Execution& exec,
                              const TraceNormTable* units) {
  require_elem(spec, a, "a");
  CountRecord rec;
  rec.label = "trace-units";
  rec.a = a;
  if (method != CountMethod::kFormula) {
    TraceNormTable local;
    if (!units) {
      local = trace_norm_table(spec, Domain::kUnits, exec);
      units = &local;
    }
    rec.brute = static_cast<std::int64_t>(units->units_with_trace(a));
  }
  if (method != CountMethod::kBrute) rec.formula = trace_units_closed_form(spec, a);
  rec.main_term = Rational(trace_units_closed_form(spec, a));
  return rec;
}

Rational product_trace_main_term(const AlgebraSpec& spec, unsigned r) {
  return Rational(ipow(units_of(spec), r - 1), spec.q());
}

QuadraticSurd product_trace_conjecture_bound(const AlgebraSpec& spec, unsigned r) {
  return QuadraticSurd::power(ipow(r, spec.sum_d()), spec.q(), static_cast<std::int64_t>(r - 1) * spec.n() - 1);
}

CountRecord count_product_trace(const AlgebraSpec& spec, unsigned r, const ProductTraceResult& sweep, Elem a) {
  require_elem(spec, a, "a");
  CountRecord rec;
  rec.label = "product-trace";
  rec.a = a;
  rec.r = r;
  rec.brute = static_cast<std::int64_t>(sweep.trace_counts.at(a));
  rec.main_term = product_trace_main_term(spec, r);
  rec.bound = product_trace_conjecture_bound(spec, r);
  if (a == 0) rec.notes.push_back("conjecture excluded: a = 0");
  if (!sweep.regular) rec.notes.push_back("conjecture excluded: x not regular");
  return rec;
}

CountRecord count_product_trace(const AlgebraSpec& spec, unsigned r, const AlgebraElement& x, Elem a,
                                const Execution& exec) {
  const auto sweep = product_trace(spec, r, x, AdditiveCharacter(spec.base_field()), exec);
  return count_product_trace(spec, r, sweep, a);
}

CountRecord count_poly_trace(const AlgebraSpec& spec, const Poly& f, Elem a, std::optional<Elem> b,
                             const Execution& exec) {
  require_elem(spec, a, "a");
  if (b) require_elem(spec, *b, "b");
  const int deg = poly::degree(f);
  if (deg < 1) throw InvalidArgument("f must have degree at least 1");
  for (Elem c : f) require_elem(spec, c, "coefficient of f");
  const Domain domain = b ? Domain::kUnits : Domain::kAll;
  if (b && *b == 0) throw InvalidArgument("b must be nonzero when given");
  const Enumerator en(spec, domain, exec.max_summands);
  const auto ftr = poly_trace_tables(en, f);
  const FiniteField& Fq = *spec.base_field();
  const auto parts = map_partitions<std::uint64_t>(en.size(), exec, [&](IndexRange range, std::size_t) {
    std::uint64_t count = 0;
    en.for_each(range, [&](std::uint64_t, const std::vector<std::uint32_t>& p, Elem, Elem nm) {
      if (b && nm != *b) return;
      Elem t = 0;
      for (std::size_t i = 0; i < p.size(); ++i) t = Fq.add(t, ftr[i][p[i]]);
      if (t == a) ++count;
    });
    return count;
  });
  CountRecord rec;
  rec.label = "poly-trace";
  rec.a = a;
  rec.b = b;
  rec.brute = static_cast<std::int64_t>(std::accumulate(parts.begin(), parts.end(), std::uint64_t{0}));
  if (!b) {
    rec.main_term = Rational(ipow(spec.q(), spec.n() - 1));
    if (spec.is_split()) {
      const std::int64_t n = spec.n();
      rec.bound = QuadraticSurd::power(ipow(deg - 1, static_cast<unsigned>(n)), spec.q(), n - 1);
      rec.notes.push_back("reference bound, smooth hypersurfaces only");
    }
  }
  if (std::gcd(static_cast<std::uint32_t>(deg), spec.p()) != 1) rec.notes.push_back("deg f divisible by p");
  return rec;
}

IdentitySuite identity_suite(const AlgebraSpec& spec, const AdditiveCharacter& psi, const Execution& exec) {
  const AlgebraSpec split = split_companion(spec);
  const TraceNormTable nb = trace_norm_table(spec, Domain::kUnits, exec);
  const TraceNormTable ns = trace_norm_table(split, Domain::kUnits, exec);
  const std::int64_t q = spec.q();
  const std::int64_t m = spec.m();
  const std::int64_t n = spec.n();
  const std::int64_t k = static_cast<std::int64_t>(spec.k());
  const Rational split_main(ipow(q - 1, static_cast<unsigned>(m - 1)) + sign_pow(m), q);
  const Rational b_main = norm_trace_main_term(spec);
  const std::int64_t sign = reduction_sign(spec);
  const std::int64_t scale = reduction_scale(spec);

  IdentitySuite out;
  for (Elem a = 0; a < spec.q(); ++a) {
    for (Elem b = 1; b < spec.q(); ++b) {
      const Rational nb_ab(static_cast<std::int64_t>(nb.at(a, b)));
      const Rational ns_ab(static_cast<std::int64_t>(ns.at(a, b)));
      out.exact.push_back({"reduction", a, b, nb_ab - b_main, Rational(sign * scale) * (ns_ab - split_main)});
      if (spec.is_etale()) {
        std::int64_t prod = 1;
        for (const auto& f : spec.factors()) prod *= ipow(q, f.n) - 1;
        const Rational main = Rational(prod, q * (q - 1)) + Rational(sign_pow(k), q);
        const Rational rhs_main(ipow(q - 1, static_cast<unsigned>(n - 1)) + sign_pow(n), q);
        out.exact.push_back({"etale-comparison", a, b, nb_ab - main, Rational(sign_pow(n - k)) * (ns_ab - rhs_main)});
      }
      if (spec.is_field()) {
        const Rational main(ipow(q, static_cast<unsigned>(n - 1)) - 1, q - 1);
        const Rational rhs_main(ipow(q - 1, static_cast<unsigned>(n - 1)) + sign_pow(n), q);
        out.exact.push_back({"field-vs-split", a, b, nb_ab - main, Rational(sign_pow(n - 1)) * (ns_ab - rhs_main)});
      }
    }
  }

  const auto kb = kloosterman_direct_all(spec, psi, exec);
  const auto ks = kloosterman_direct_all(split, psi, exec);
  for (Elem b = 1; b < spec.q(); ++b) {
    out.numeric.push_back({"kloosterman-reduction", b, kb[b], static_cast<double>(sign * scale) * ks[b]});
    PairwiseAccumulator acc;
    for (Elem a = 0; a < spec.q(); ++a) acc.add(static_cast<double>(nb.at(a, b)) * psi(a));
    out.numeric.push_back({"trace-expansion", b, kb[b], acc.value()});
  }
  return out;
}

}  // namespace normtrace
