#include <gtest/gtest.h>

#include <algorithm>

#include "normtrace/counts.hpp"
#include "normtrace/error.hpp"
#include "oracle.hpp"

namespace normtrace {
namespace {

AlgebraSpec spec(std::uint32_t p, std::uint32_t e, std::vector<Factor> f, bool deg1 = false) {
  return AlgebraSpec::make(p, e, std::move(f), deg1);
}

const std::vector<AlgebraSpec>& small_specs() {
  static const std::vector<AlgebraSpec> specs = {
      spec(2, 1, {{1, 1}, {1, 1}}), spec(2, 1, {{1, 2}}),         spec(2, 1, {{2, 1}}),
      spec(3, 1, {{1, 1}, {1, 1}}), spec(3, 1, {{1, 2}}),         spec(2, 1, {{1, 1}, {1, 2}}),
      spec(2, 2, {{1, 1}, {1, 1}}), spec(2, 1, {{2, 1}, {1, 1}}), spec(3, 1, {{2, 1}}),
      spec(2, 1, {{1, 3}}),         spec(2, 2, {{2, 1}}),         spec(5, 1, {{1, 2}}),
      spec(3, 1, {{1, 3}}),         spec(2, 1, {{1, 1}, {1, 1}, {1, 1}}),
  };
  return specs;
}

bool has_note(const CountRecord& r, const std::string& prefix) {
  return std::any_of(r.notes.begin(), r.notes.end(), [&](const std::string& n) { return n.rfind(prefix, 0) == 0; });
}

TEST(NormTrace, SpotExamples) {
  const auto m2 = spec(2, 1, {{2, 1}});
  const auto r01 = count_norm_trace(m2, 0, 1);
  EXPECT_EQ(r01.brute, 4);
  EXPECT_EQ(r01.formula, 4);
  EXPECT_EQ(r01.main_term, Rational(4));
  EXPECT_EQ(r01.error(), Rational(0));
  ASSERT_TRUE(r01.bound);
  EXPECT_EQ(r01.bound->compare(2), 0);
  EXPECT_EQ(r01.provenance(), "both-agree");
  const auto r11 = count_norm_trace(m2, 1, 1);
  EXPECT_EQ(r11.value(), 2);
  EXPECT_EQ(r11.formula, 2);
  const auto f2f2 = spec(2, 1, {{1, 1}, {1, 1}});
  EXPECT_EQ(count_norm_trace(f2f2, 1, 1).value(), 0);
  EXPECT_EQ(count_norm_trace(f2f2, 0, 1).value(), 1);
}

TEST(NormTrace, ZeroNormIsRejected) {
  EXPECT_THROW(count_norm_trace(spec(2, 1, {{2, 1}}), 0, 0), InvalidArgument);
}

TEST(NormTrace, MethodsSelectRoutes) {
  const auto m2 = spec(2, 1, {{2, 1}});
  const auto brute = count_norm_trace(m2, 0, 1, CountMethod::kBrute);
  EXPECT_TRUE(brute.brute && !brute.formula);
  EXPECT_EQ(brute.provenance(), "brute");
  const auto formula = count_norm_trace(m2, 0, 1, CountMethod::kFormula);
  EXPECT_TRUE(!formula.brute && formula.formula);
  EXPECT_EQ(formula.provenance(), "formula");
  EXPECT_EQ(formula.value(), 4);
}

TEST(NormTrace, BruteMatchesNaiveAndFormulaOnSuite) {
  for (const auto& s : small_specs()) {
    const auto hist = oracle::naive_histogram(s, true);
    const AdditiveCharacter psi(s.base_field());
    const auto table = trace_norm_table(s, Domain::kUnits);
    EXPECT_EQ(table.raw(), hist) << s.summary();
    for (Elem a = 0; a < s.q(); ++a) {
      for (Elem b = 1; b < s.q(); ++b) {
        const auto rec = count_norm_trace(s, a, b, CountMethod::kBoth, {}, &table);
        ASSERT_EQ(rec.brute, static_cast<std::int64_t>(hist[a * s.q() + b])) << s.summary();
        ASSERT_TRUE(rec.routes_agree()) << s.summary() << " a=" << a << " b=" << b;
        ASSERT_TRUE(rec.within_bound()) << s.summary() << " a=" << a << " b=" << b;
        EXPECT_EQ(norm_trace_formula(s, psi, a, b, SmRoute::kFastPath), *rec.brute);
      }
    }
  }
}

TEST(NormTrace, TwistedCharacterGivesSameCounts) {
  const auto s = spec(3, 1, {{1, 2}});
  for (Elem c = 1; c < 3; ++c) {
    const AdditiveCharacter psi(s.base_field(), c);
    for (Elem a = 0; a < 3; ++a) {
      for (Elem b = 1; b < 3; ++b) {
        EXPECT_EQ(norm_trace_formula(s, psi, a, b), count_norm_trace(s, a, b, CountMethod::kBrute).value());
      }
    }
  }
}

TEST(NormTrace, BoundsHoldOnSuite) {
  for (const auto& s : small_specs()) {
    const auto table = trace_norm_table(s, Domain::kUnits);
    const auto simple = norm_trace_simple_main_term(s);
    const auto main = norm_trace_main_term(s);
    for (Elem a = 0; a < s.q(); ++a) {
      for (Elem b = 1; b < s.q(); ++b) {
        const Rational v(static_cast<std::int64_t>(table.at(a, b)));
        const Rational err = (v - simple).abs();
        EXPECT_TRUE(norm_trace_simple_bound(s).bounds(err)) << s.summary();
        EXPECT_TRUE(norm_trace_bound(s).bounds((v - main).abs())) << s.summary();
        if (a == 0) {
          // the gcd refinement is measured against the two-part main term
          EXPECT_TRUE(norm_trace_zero_bound(s).bounds((v - main).abs())) << s.summary();
        } else {
          EXPECT_TRUE(norm_trace_elementary_bound(s).bounds(err)) << s.summary();
        }
      }
    }
  }
}

TEST(NormTrace, MainTermValues) {
  // |B*|/(q(q-1)) + (-1)^{sum d} q^{(n-m)/2} / q
  EXPECT_EQ(norm_trace_main_term(spec(2, 1, {{2, 1}})), Rational(4));
  EXPECT_EQ(norm_trace_main_term(spec(3, 1, {{1, 2}})), Rational(8, 6) - Rational(1, 3));
  EXPECT_EQ(norm_trace_simple_main_term(spec(3, 1, {{2, 1}})), Rational(8));
  EXPECT_NEAR(norm_trace_bound(spec(3, 1, {{2, 1}})).to_double(), 3.0, 1e-12);  // (2-1) 3^{1}
  EXPECT_NEAR(norm_trace_simple_bound(spec(2, 1, {{1, 3}})).to_double(), 3.0 * std::sqrt(2.0), 1e-12);
}

TEST(NormTrace, SumOverNormsIsUnitTraceCount) {
  for (const auto& s : small_specs()) {
    const auto units = trace_norm_table(s, Domain::kUnits);
    const auto all = trace_norm_table(s, Domain::kAll);
    std::uint64_t total = 0;
    for (Elem a = 0; a < s.q(); ++a) {
      std::uint64_t by_norm = 0;
      for (Elem b = 1; b < s.q(); ++b) by_norm += units.at(a, b);
      EXPECT_EQ(by_norm, units.units_with_trace(a));
      EXPECT_EQ(by_norm, static_cast<std::uint64_t>(count_trace_units(s, a).value()));
      total += by_norm + all.at(a, 0);
    }
    EXPECT_EQ(total, s.cardinality()) << s.summary();
    EXPECT_EQ(all.total(), s.cardinality());
    EXPECT_EQ(units.total(), s.unit_count());
  }
}

TEST(NormZero, SpotExamples) {
  const auto f2f2 = spec(2, 1, {{1, 1}, {1, 1}});
  const auto z0 = count_norm_zero(f2f2, 0);
  EXPECT_EQ(z0.value(), 1);
  ASSERT_TRUE(z0.reference);
  EXPECT_EQ(*z0.reference, Rational(1));
  const auto z1 = count_norm_zero(f2f2, 1);
  EXPECT_EQ(z1.value(), 2);
  EXPECT_EQ(*z1.reference, Rational(2));
  const auto m2 = spec(2, 1, {{2, 1}});
  const auto m0 = count_norm_zero(m2, 0);
  EXPECT_EQ(m0.brute, 4);
  EXPECT_EQ(m0.formula, 4);
  EXPECT_EQ(norm_zero_closed_form(m2, 0), 4);
  EXPECT_EQ(norm_zero_inclusion_exclusion(m2, 0), Rational(1));
  EXPECT_TRUE(has_note(m0, "inclusion-exclusion value valid for etale algebras only"));
  EXPECT_FALSE(has_note(z0, "inclusion-exclusion"));
  const auto mixed = spec(2, 1, {{2, 1}, {1, 1}});
  EXPECT_EQ(count_norm_zero(mixed, 0).value(), 14);
  EXPECT_EQ(norm_zero_closed_form(mixed, 0), 14);
}

TEST(NormZero, ClosedFormMatchesNaiveEverywhere) {
  for (const auto& s : small_specs()) {
    const auto hist = oracle::naive_histogram(s, false);
    for (Elem a = 0; a < s.q(); ++a) {
      const auto rec = count_norm_zero(s, a);
      ASSERT_EQ(rec.brute, static_cast<std::int64_t>(hist[a * s.q()])) << s.summary();
      EXPECT_EQ(norm_zero_closed_form(s, a), *rec.brute);
      EXPECT_TRUE(rec.routes_agree());
      if (s.is_etale()) {
        EXPECT_EQ(norm_zero_inclusion_exclusion(s, a), Rational(*rec.brute)) << s.summary() << " a=" << a;
      }
    }
  }
}

TEST(TraceUnits, SpotExamples) {
  const auto m2 = spec(2, 1, {{2, 1}});
  EXPECT_EQ(count_trace_units(m2, 0).value(), 4);
  EXPECT_EQ(trace_units_closed_form(m2, 0), 4);
  EXPECT_EQ(count_trace_units(m2, 1).value(), 2);
  EXPECT_EQ(trace_units_closed_form(m2, 1), 2);
  EXPECT_EQ(trace_units_closed_form(m2, 0) + trace_units_closed_form(m2, 1), 6);
}

TEST(TraceUnits, ClosedFormMatchesNaive) {
  for (const auto& s : small_specs()) {
    const auto hist = oracle::naive_histogram(s, true);
    for (Elem a = 0; a < s.q(); ++a) {
      std::int64_t expect = 0;
      for (Elem b = 1; b < s.q(); ++b) expect += static_cast<std::int64_t>(hist[a * s.q() + b]);
      EXPECT_EQ(trace_units_closed_form(s, a), expect) << s.summary();
      const auto rec = count_trace_units(s, a);
      EXPECT_EQ(rec.brute, expect);
      EXPECT_TRUE(rec.routes_agree());
    }
  }
}

TEST(ProductTraceCounts, SpotExamples) {
  const auto f3 = spec(3, 1, {{1, 1}}, true);
  const auto one = identity_element(f3);
  const auto r2 = count_product_trace(f3, 2, one, 2);
  EXPECT_EQ(r2.value(), 1);
  const auto r0 = count_product_trace(f3, 2, one, 0);
  EXPECT_EQ(r0.value(), 0);
  EXPECT_TRUE(has_note(r0, "conjecture excluded: a = 0"));
  EXPECT_EQ(count_product_trace(f3, 2, one, 1).value() + r0.value() + r2.value(), 2);
  EXPECT_EQ(product_trace_main_term(f3, 2), Rational(2, 3));
}

TEST(ProductTraceCounts, NonRegularIsExcluded) {
  const auto m2 = spec(2, 1, {{2, 1}});
  const auto rec = count_product_trace(m2, 2, identity_element(m2), 1);
  EXPECT_TRUE(has_note(rec, "conjecture excluded: x not regular"));
  const auto c = parse_element(m2, "[[[0,1],[1,1]]]");
  EXPECT_FALSE(has_note(count_product_trace(m2, 2, c, 1), "conjecture excluded"));
}

TEST(ProductTraceCounts, FullTupleCountsAndConjectureBound) {
  oracle::Gen gen(41);
  for (const auto& s : {spec(2, 1, {{2, 1}}), spec(3, 1, {{1, 2}}), spec(2, 1, {{1, 1}, {1, 2}})}) {
    const Enumerator units(s, Domain::kUnits);
    const AdditiveCharacter psi(s.base_field());
    for (int i = 0; i < 3; ++i) {
      const auto x = gen.unit(s);
      // r = 2: g_1 g_2 = x with the trace of g_1 + g_2 tallied over all pairs
      std::vector<std::int64_t> expect(s.q(), 0);
      for (std::uint64_t a = 0; a < units.size(); ++a) {
        for (std::uint64_t b = 0; b < units.size(); ++b) {
          const auto ga = units.element(a), gb = units.element(b);
          if (multiply(s, ga, gb) == x) ++expect[trace_norm(s, add(s, ga, gb)).trace];
        }
      }
      const auto sweep = product_trace(s, 2, x, psi);
      for (Elem a = 0; a < s.q(); ++a) {
        const auto rec = count_product_trace(s, 2, sweep, a);
        EXPECT_EQ(rec.value(), expect[a]) << s.summary() << " a=" << a;
        EXPECT_EQ(rec.main_term, Rational(static_cast<std::int64_t>(s.unit_count()), s.q()));
        ASSERT_TRUE(rec.bound);
        EXPECT_NEAR(rec.bound->to_double(), product_trace_conjecture_bound(s, 2).to_double(), 1e-12);
      }
    }
  }
}

TEST(ProductTraceCounts, ConjectureBoundValue) {
  // r^{sum d} q^{((r-1) n - 1)/2}
  EXPECT_NEAR(product_trace_conjecture_bound(spec(2, 1, {{2, 1}}), 2).to_double(), 4.0 * std::pow(2.0, 1.5), 1e-12);
  EXPECT_NEAR(product_trace_conjecture_bound(spec(3, 1, {{1, 2}}), 3).to_double(), 3.0 * std::pow(3.0, 1.5), 1e-12);
}

TEST(PolyTraceCounts, SpotExamples) {
  const auto f2f2 = spec(2, 1, {{1, 1}, {1, 1}});
  const auto cubic = count_poly_trace(f2f2, Poly{0, 0, 0, 1}, 0);
  EXPECT_EQ(cubic.value(), 2);
  EXPECT_EQ(cubic.main_term, Rational(2));
  ASSERT_TRUE(cubic.bound);
  EXPECT_NEAR(cubic.bound->to_double(), 4.0 * std::sqrt(2.0), 1e-12);  // (3-1)^2 q^{1/2}
  EXPECT_TRUE(has_note(cubic, "reference bound"));
  const auto f3 = spec(3, 1, {{1, 1}}, true);
  EXPECT_EQ(count_poly_trace(f3, Poly{0, 0, 1}, 1).value(), 2);
  EXPECT_TRUE(has_note(count_poly_trace(f2f2, Poly{0, 0, 1}, 0), "deg f divisible by p"));
}

TEST(PolyTraceCounts, LinearPolynomialWithNormIsNormTraceCount) {
  for (const auto& s : small_specs()) {
    for (Elem a = 0; a < s.q(); ++a) {
      for (Elem b = 1; b < s.q(); ++b) {
        EXPECT_EQ(count_poly_trace(s, Poly{0, 1}, a, b).value(), count_norm_trace(s, a, b, CountMethod::kBrute).value());
      }
    }
  }
}

TEST(PolyTraceCounts, MatchesDirectCount) {
  oracle::Gen gen(42);
  for (const auto& s : {spec(2, 1, {{2, 1}}), spec(3, 1, {{1, 1}, {1, 1}}), spec(2, 1, {{1, 2}, {1, 1}})}) {
    const Enumerator all(s, Domain::kAll);
    for (int i = 0; i < 4; ++i) {
      Poly f(2 + gen.below(3));
      for (auto& c : f) c = gen.elem(*s.base_field());
      f.back() = 1;
      std::vector<std::int64_t> expect(s.q(), 0);
      for (std::uint64_t j = 0; j < all.size(); ++j) ++expect[trace_norm(s, evaluate(s, f, all.element(j))).trace];
      for (Elem a = 0; a < s.q(); ++a) EXPECT_EQ(count_poly_trace(s, f, a).value(), expect[a]);
    }
  }
}

TEST(IdentitySuite, SpotValues) {
  const auto m2 = spec(2, 1, {{2, 1}});
  const auto suite = identity_suite(m2, AdditiveCharacter(gf(2, 1)));
  bool found = false;
  for (const auto& r : suite.exact) {
    if (r.name == "reduction" && r.a == 1 && r.b == 1) {
      EXPECT_EQ(r.lhs, Rational(-2));
      EXPECT_EQ(r.rhs, Rational(-2));
      found = true;
    }
  }
  EXPECT_TRUE(found);
  for (const auto& r : suite.numeric) {
    if (r.name == "kloosterman-reduction") {
      EXPECT_NEAR(r.lhs.re, 2.0, 1e-9);
      EXPECT_NEAR(r.rhs.re, 2.0, 1e-9);
    }
  }
}

TEST(IdentitySuite, AllResidualsVanishOnSuite) {
  for (const auto& s : small_specs()) {
    const auto suite = identity_suite(s, AdditiveCharacter(s.base_field()));
    std::size_t etale = 0, field = 0;
    for (const auto& r : suite.exact) {
      EXPECT_EQ(r.residual(), Rational(0)) << s.summary() << " " << r.name << " a=" << r.a << " b=" << r.b;
      etale += r.name == "etale-comparison";
      field += r.name == "field-vs-split";
    }
    EXPECT_EQ(etale > 0, s.is_etale());
    EXPECT_EQ(field > 0, s.is_field());
    for (const auto& r : suite.numeric) {
      EXPECT_LE(r.residual(), 1e-6 * (1.0 + r.lhs.magnitude())) << s.summary() << " " << r.name;
    }
  }
}

TEST(Partitions, IntegerCountsAreInvariant) {
  for (const auto& s : {spec(3, 1, {{2, 1}}), spec(2, 2, {{2, 1}})}) {
    std::vector<TraceNormTable> tables;
    for (unsigned parts : {1u, 2u, 8u, 13u}) {
      Execution exec;
      exec.partitions = parts;
      tables.push_back(trace_norm_table(s, Domain::kAll, exec));
    }
    for (const auto& t : tables) EXPECT_EQ(t, tables[0]);
  }
}

TEST(Caps, BruteRouteRespectsSummandCap) {
  Execution exec;
  exec.max_summands = 100;
  EXPECT_THROW(count_norm_trace(spec(3, 1, {{2, 2}}), 0, 1, CountMethod::kBrute, exec), CapExceeded);
  // the formula route does not enumerate B
  EXPECT_NO_THROW(count_norm_trace(spec(3, 1, {{2, 2}}), 0, 1, CountMethod::kFormula, exec));
}

}  // namespace
}  // namespace normtrace
