#include "normtrace/sums.hpp"

#include <numeric>

#include "normtrace/error.hpp"

namespace normtrace {

namespace {

void require_base(const AlgebraSpec& spec, const AdditiveCharacter& psi) {
  if (psi.field().id() != spec.base_field()->id()) {
    throw FieldMismatch("additive character lives on " + psi.field().name() + " but the algebra is over " +
                        spec.base_field()->name());
  }
}

void require_unit(const FiniteField& F, Elem b, const char* name) {
  if (!F.contains(b)) throw InvalidArgument(std::string(name) + " = " + std::to_string(b) + " is not in " + F.name());
  if (b == 0) throw InvalidArgument(std::string(name) + " must be nonzero");
}

std::uint64_t checked_power(std::uint64_t base, unsigned e, std::uint64_t cap, const std::string& what) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && v > cap / base) {
      throw CapExceeded(what + " exceeds the summand cap " + std::to_string(cap) +
                        "; reduce parameters or raise --max-summands");
    }
    v *= base;
  }
  if (v > cap) {
    throw CapExceeded(what + " = " + std::to_string(v) + " exceeds the summand cap " + std::to_string(cap) +
                      "; reduce parameters or raise --max-summands");
  }
  return v;
}

std::complex<double> cpow(std::complex<double> z, unsigned m) {
  std::complex<double> acc{1.0, 0.0};
  for (unsigned i = 0; i < m; ++i) acc *= z;
  return acc;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  std::int64_t v = 1;
  for (std::int64_t i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

// Sums the partition results in partition order.
SumValue merge(const std::vector<SumValue>& parts) { return pairwise_sum(parts); }

}  // namespace

RoutePair gauss_sum_gl(unsigned d, const MultiplicativeCharacter& chi, const AdditiveCharacter& psi,
                       const Execution& exec) {
  if (chi.field().id() != psi.field().id()) {
    throw FieldMismatch("GL Gauss sum needs characters of one field, got " + chi.field().name() + " and " +
                        psi.field().name());
  }
  if (d == 0) throw InvalidArgument("matrix size d must be at least 1");
  const FiniteField& F = chi.field();
  const auto table = FactorTable::get(F.characteristic(), F.degree(), {d, 1}, Domain::kUnits);
  if (table->size() > exec.max_summands) {
    throw CapExceeded("|GL_" + std::to_string(d) + "(" + F.name() + ")| exceeds the summand cap");
  }
  const auto parts = map_partitions<SumValue>(table->size(), exec, [&](IndexRange range, std::size_t) {
    PairwiseAccumulator acc;
    for (auto i = range.begin; i < range.end; ++i) {
      const auto u = static_cast<std::uint32_t>(i);
      acc.add(chi(table->norm(u)) * psi(table->trace(u)));
    }
    return acc.value();
  });
  const SumValue g = gauss_sum(chi, psi);
  const double scale = std::pow(static_cast<double>(F.size()), d * (d - 1) / 2.0);
  return {merge(parts), SumValue(scale * cpow(g.complex(), d))};
}

SumValue s_m(const AdditiveCharacter& psi, unsigned m, Elem a, Elem b, SmRoute route) {
  const FiniteField& F = psi.field();
  const FieldPtr& Fp = psi.field_ptr();
  if (!F.contains(a)) throw InvalidArgument("a = " + std::to_string(a) + " is not in " + F.name());
  require_unit(F, b, "b");
  if (m == 0) throw InvalidArgument("m must be at least 1");
  const std::uint32_t N = F.unit_count();
  const auto chars = multiplicative_characters(Fp);
  std::vector<std::complex<double>> gm(N);
  for (std::uint32_t j = 0; j < N; ++j) gm[j] = cpow(gauss_sum(chars[j], psi).complex(), m);

  PairwiseAccumulator acc;
  if (route == SmRoute::kDefinition) {
    const Elem neg_a = F.neg(a);
    for (Elem v = 1; v < F.size(); ++v) {
      const auto outer = psi(F.mul(neg_a, v));
      const Elem y = F.mul(b, F.pow(v, m));
      for (std::uint32_t j = 0; j < N; ++j) {
        acc.add(outer * std::conj(chars[j](y)) * gm[j]);
      }
    }
    return acc.value();
  }
  if (a == 0) {
    // (q-1) [ (-1)^m + sum over nontrivial chi with chi^m = 1 of G^m conj(chi)(b) ]
    acc.add(std::complex<double>(m % 2 == 0 ? 1.0 : -1.0, 0.0));
    for (std::uint32_t j = 1; j < N; ++j) {
      if ((std::uint64_t{j} * m) % N != 0) continue;
      acc.add(gm[j] * std::conj(chars[j](b)));
    }
    return static_cast<double>(N) * acc.value();
  }
  // sum_chi chi((-a)^m / b) G(conj(chi)^m, psi) G(chi, psi)^m
  const Elem y = F.div(F.pow(F.neg(a), m), b);
  for (std::uint32_t j = 0; j < N; ++j) {
    const MultiplicativeCharacter chi_bar_m = chars[j].conjugate().power(m);
    acc.add(chars[j](y) * gauss_sum(chi_bar_m, psi).complex() * gm[j]);
  }
  return acc.value();
}

SumValue t_m(const AdditiveCharacter& psi, unsigned m, Elem a, Elem b, SmRoute route) {
  const double lead = (m % 2 == 0 ? 1.0 : -1.0) * psi.field().unit_count();
  return s_m(psi, m, a, b, route) - SumValue(lead);
}

SumValue hyper_kloosterman(const AdditiveCharacter& psi, unsigned m, Elem b, std::uint64_t max_summands) {
  const FiniteField& F = psi.field();
  require_unit(F, b, "b");
  if (m == 0) throw InvalidArgument("m must be at least 1");
  const std::uint32_t N = F.unit_count();
  const std::uint64_t total = checked_power(N, m - 1, max_summands, "(q-1)^(m-1)");
  const std::uint32_t log_b = F.log(b);
  PairwiseAccumulator acc;
  std::vector<std::uint32_t> logs(m - 1, 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    Elem sum = 0;
    std::uint64_t log_prod = 0;
    for (std::uint32_t l : logs) {
      sum = F.add(sum, F.exp(l));
      log_prod += l;
    }
    // Last coordinate b / (x_1 ... x_{m-1}).
    const std::uint64_t last = (log_b + std::uint64_t{N} * m - log_prod % N) % N;
    sum = F.add(sum, F.exp(last));
    acc.add(psi(sum));
    for (std::size_t i = logs.size(); i-- > 0;) {
      if (++logs[i] < N) break;
      logs[i] = 0;
    }
  }
  return acc.value();
}

QuadraticSurd hyper_kloosterman_bound(std::uint32_t q, unsigned m) {
  return QuadraticSurd::power(static_cast<std::int64_t>(m), q, static_cast<std::int64_t>(m) - 1);
}

int reduction_sign(const AlgebraSpec& spec) { return (spec.m() - spec.sum_d()) % 2 == 0 ? 1 : -1; }

std::int64_t reduction_scale(const AlgebraSpec& spec) { return ipow(spec.q(), (spec.n() - spec.m()) / 2); }

std::vector<SumValue> kloosterman_direct_all(const AlgebraSpec& spec, const AdditiveCharacter& psi,
                                             const Execution& exec) {
  require_base(spec, psi);
  const Enumerator en(spec, Domain::kUnits, exec.max_summands);
  const std::uint32_t q = spec.q();
  const auto parts = map_partitions<std::vector<SumValue>>(en.size(), exec, [&](IndexRange range, std::size_t) {
    std::vector<PairwiseAccumulator> acc(q);
    en.for_each(range, [&](std::uint64_t, const auto&, Elem t, Elem nm) { acc[nm].add(psi(t)); });
    std::vector<SumValue> out(q);
    for (std::uint32_t b = 0; b < q; ++b) out[b] = acc[b].value();
    return out;
  });
  std::vector<SumValue> result(q);
  for (std::uint32_t b = 1; b < q; ++b) {
    std::vector<SumValue> column;
    for (const auto& p : parts) column.push_back(p[b]);
    result[b] = merge(column);
  }
  return result;
}

SumValue kloosterman_reduced(const AlgebraSpec& spec, const AdditiveCharacter& psi, Elem b,
                             std::uint64_t max_summands) {
  require_base(spec, psi);
  const double scale = reduction_sign(spec) * static_cast<double>(reduction_scale(spec));
  return scale * hyper_kloosterman(psi, spec.m(), b, max_summands);
}

RoutePair kloosterman_B(const AlgebraSpec& spec, const AdditiveCharacter& psi, Elem b, const Execution& exec) {
  require_unit(psi.field(), b, "b");
  const auto all = kloosterman_direct_all(spec, psi, exec);
  return {all[b], kloosterman_reduced(spec, psi, b, exec.max_summands)};
}

QuadraticSurd kloosterman_bound(const AlgebraSpec& spec) {
  return QuadraticSurd::power(static_cast<std::int64_t>(spec.m()), spec.q(), static_cast<std::int64_t>(spec.n()) - 1);
}

FullUnitSum full_unit_sum(const AlgebraSpec& spec, const AdditiveCharacter& psi, const Execution& exec) {
  require_base(spec, psi);
  const Enumerator en(spec, Domain::kUnits, exec.max_summands);
  const auto parts = map_partitions<SumValue>(en.size(), exec, [&](IndexRange range, std::size_t) {
    PairwiseAccumulator acc;
    en.for_each(range, [&](std::uint64_t, const auto&, Elem t, Elem) { acc.add(psi(t)); });
    return acc.value();
  });
  const std::int64_t sign = spec.sum_d() % 2 == 0 ? 1 : -1;
  return {merge(parts), sign * ipow(spec.q(), (spec.n() - spec.m()) / 2)};
}

namespace {

// Per-factor twisted Kloosterman sum over F_{q^{n_i}}: the sum over
// (y_1, ..., y_{r-1}) of psi(Tr(y_1 + ... + y_{r-1} + x / (y_1 ... y_{r-1}))).
SumValue field_product_trace(const TowerEmbedding& emb, Elem x, unsigned r, const AdditiveCharacter& psi,
                             std::uint64_t max_summands) {
  const FiniteField& E = emb.extension();
  const std::uint32_t N = E.unit_count();
  const std::uint64_t total = checked_power(N, r - 1, max_summands, "(Q-1)^(r-1)");
  std::vector<std::uint32_t> logs(r - 1, 0);
  PairwiseAccumulator acc;
  for (std::uint64_t t = 0; t < total; ++t) {
    Elem sum = 0;
    Elem prod = 1;
    for (std::uint32_t l : logs) {
      const Elem y = E.exp(l);
      sum = E.add(sum, y);
      prod = E.mul(prod, y);
    }
    sum = E.add(sum, E.div(x, prod));
    acc.add(psi(emb.relative_trace(sum)));
    for (std::size_t i = logs.size(); i-- > 0;) {
      if (++logs[i] < N) break;
      logs[i] = 0;
    }
  }
  return acc.value();
}

}  // namespace

ProductTraceResult product_trace(const Enumerator& units, unsigned r, std::uint64_t x_index,
                                 const AdditiveCharacter& psi, const Execution& exec) {
  const AlgebraSpec& spec = units.spec();
  require_base(spec, psi);
  if (r < 2) throw InvalidArgument("r must be at least 2, got " + std::to_string(r));
  if (x_index >= units.size()) throw InvalidArgument("x is not a unit of " + spec.summary());
  const std::uint64_t U = units.size();
  const std::uint64_t total = checked_power(U, r - 1, exec.max_summands, "|B*|^(r-1)");
  const std::size_t k = units.factor_count();
  const FiniteField& Fq = *spec.base_field();

  // Flattened per-factor indices of every unit.
  std::vector<std::uint32_t> flat(U * k);
  {
    std::vector<std::uint32_t> parts;
    for (std::uint64_t u = 0; u < U; ++u) {
      units.decode(u, parts);
      std::copy(parts.begin(), parts.end(), flat.begin() + u * k);
    }
  }
  std::vector<std::uint32_t> x_parts;
  units.decode(x_index, x_parts);

  struct Partial {
    SumValue sum;
    std::vector<std::uint64_t> counts;
  };
  const std::uint32_t q = spec.q();
  const auto partials = map_partitions<Partial>(total, exec, [&](IndexRange range, std::size_t) {
    Partial out{{}, std::vector<std::uint64_t>(q, 0)};
    if (range.size() == 0) return out;
    PairwiseAccumulator acc;
    std::vector<std::uint64_t> digits(r - 1, 0);
    std::uint64_t rest = range.begin;
    for (std::size_t j = r - 1; j-- > 0;) {
      digits[j] = rest % U;
      rest /= U;
    }
    for (std::uint64_t t = range.begin; t < range.end; ++t) {
      Elem trace = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const FactorTable& tab = units.table(i);
        std::uint32_t y = tab.identity();
        for (std::size_t j = 0; j + 1 < r; ++j) {
          const std::uint32_t g = flat[digits[j] * k + i];
          y = tab.multiply(y, g);
          trace = Fq.add(trace, tab.trace(g));
        }
        const std::uint32_t last = tab.multiply(tab.inverse(y), x_parts[i]);
        trace = Fq.add(trace, tab.trace(last));
      }
      ++out.counts[trace];
      acc.add(psi(trace));
      for (std::size_t j = r - 1; j-- > 0;) {
        if (++digits[j] < U) break;
        digits[j] = 0;
      }
    }
    out.sum = acc.value();
    return out;
  });

  ProductTraceResult result;
  result.trace_counts.assign(q, 0);
  std::vector<SumValue> sums;
  for (const auto& p : partials) {
    sums.push_back(p.sum);
    for (std::uint32_t a = 0; a < q; ++a) result.trace_counts[a] += p.counts[a];
  }
  result.sum = merge(sums);
  result.regular = true;
  for (std::size_t i = 0; i < k; ++i) result.regular = result.regular && units.table(i).regular(x_parts[i]);

  if (spec.is_etale()) {
    std::complex<double> prod{1.0, 0.0};
    for (std::size_t i = 0; i < k; ++i) {
      const FactorTable& tab = units.table(i);
      const Elem xi = tab.matrix(x_parts[i]).entries[0];
      prod *= field_product_trace(tab.embedding(), xi, r, psi, exec.max_summands).complex();
    }
    result.etale_product = SumValue(prod);
  }
  return result;
}

ProductTraceResult product_trace(const AlgebraSpec& spec, unsigned r, const AlgebraElement& x,
                                 const AdditiveCharacter& psi, const Execution& exec) {
  check_conforms(spec, x);
  const Enumerator units(spec, Domain::kUnits, exec.max_summands);
  const std::int64_t idx = units.find(x);
  if (idx < 0) throw InvalidArgument("x must be invertible in " + spec.summary());
  return product_trace(units, r, static_cast<std::uint64_t>(idx), psi, exec);
}

ProductTraceBound product_trace_bound(const AlgebraSpec& spec, const AlgebraElement& x, unsigned r) {
  check_conforms(spec, x);
  if (r < 2) throw InvalidArgument("r must be at least 2, got " + std::to_string(r));
  ProductTraceBound out;
  for (std::size_t i = 0; i < spec.k(); ++i) {
    const auto fact = factor_charpoly(spec.factor_field(i), x.parts[i]);
    for (const auto& [f, b] : fact.factors) out.binomial_product *= binomial(b + r - 1, b);
  }
  const std::int64_t h = static_cast<std::int64_t>(r - 1) * spec.n();
  out.fine = QuadraticSurd::power(out.binomial_product, spec.q(), h);
  out.coarse = QuadraticSurd::power(ipow(r, spec.sum_d()), spec.q(), h);
  return out;
}

std::vector<std::vector<Elem>> poly_trace_tables(const Enumerator& en, const Poly& f) {
  std::vector<std::vector<Elem>> out(en.factor_count());
  for (std::size_t i = 0; i < en.factor_count(); ++i) {
    const FactorTable& tab = en.table(i);
    const TowerEmbedding& emb = tab.embedding();
    Poly lifted;
    for (Elem c : f) lifted.push_back(emb.embed(c));
    out[i].resize(tab.size());
    for (std::uint32_t u = 0; u < tab.size(); ++u) {
      out[i][u] = emb.relative_trace(mat::trace(tab.field(), mat::evaluate(tab.field(), lifted, tab.matrix(u))));
    }
  }
  return out;
}

PolyTraceSum poly_trace_kloosterman(const AlgebraSpec& spec, const Poly& f, Elem b, const AdditiveCharacter& psi,
                                    const Execution& exec) {
  require_base(spec, psi);
  require_unit(psi.field(), b, "b");
  const int deg = poly::degree(f);
  if (deg < 1) throw InvalidArgument("f must have degree at least 1");
  for (Elem c : f) {
    if (!psi.field().contains(c)) throw InvalidArgument("coefficient " + std::to_string(c) + " of f is not in F_q");
  }
  const Enumerator en(spec, Domain::kUnits, exec.max_summands);
  const auto ftr = poly_trace_tables(en, f);
  const FiniteField& Fq = psi.field();
  const auto parts = map_partitions<SumValue>(en.size(), exec, [&](IndexRange range, std::size_t) {
    PairwiseAccumulator acc;
    en.for_each(range, [&](std::uint64_t, const std::vector<std::uint32_t>& p, Elem, Elem nm) {
      if (nm != b) return;
      Elem t = 0;
      for (std::size_t i = 0; i < p.size(); ++i) t = Fq.add(t, ftr[i][p[i]]);
      acc.add(psi(t));
    });
    return acc.value();
  });
  PolyTraceSum out;
  out.value = merge(parts);
  out.degree_coprime_to_p = std::gcd(static_cast<std::uint32_t>(deg), spec.p()) == 1;
  if (spec.is_etale()) {
    const std::int64_t n = spec.n();
    out.etale_reference = QuadraticSurd::power(n * ipow(deg, static_cast<unsigned>(n - 1)), spec.q(), n - 1);
  }
  return out;
}

}  // namespace normtrace
