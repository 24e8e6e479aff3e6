#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normtrace/gf.hpp"

namespace normtrace {

// Dense univariate polynomial over a FiniteField, constant term first.
// Normalized polynomials have no trailing zero coefficients; the zero
// polynomial is the empty vector.
using Poly = std::vector<Elem>;

// Largest monic search space |F|^d that enumerate_irreducibles will walk.
inline constexpr std::uint64_t kIrreducibleSearchCap = std::uint64_t{1} << 24;

namespace poly {

void normalize(Poly& f);
// -1 for the zero polynomial.
int degree(const Poly& f);
bool is_monic(const Poly& f);

Poly add(const FiniteField& F, const Poly& f, const Poly& g);
Poly sub(const FiniteField& F, const Poly& f, const Poly& g);
Poly mul(const FiniteField& F, const Poly& f, const Poly& g);
Poly scale(const FiniteField& F, const Poly& f, Elem c);
Poly pow(const FiniteField& F, const Poly& f, unsigned e);

struct DivMod {
  Poly quotient;
  Poly remainder;
};
// g must be nonzero.
DivMod divmod(const FiniteField& F, const Poly& f, const Poly& g);
bool divides(const FiniteField& F, const Poly& g, const Poly& f);

Elem evaluate(const FiniteField& F, const Poly& f, Elem x);
Poly monic(const FiniteField& F, const Poly& f);

// Monic polynomial of the given degree at position `index` of the
// coefficient enumeration order (c_0 slowest, coefficients by field rank).
Poly monic_at(const FiniteField& F, unsigned degree, std::uint64_t index);

std::string format(const FiniteField& F, const Poly& f);

}  // namespace poly

// Trial division against every monic irreducible of degree <= deg(f)/2.
bool is_irreducible(const FiniteField& F, const Poly& f);

// All monic irreducible polynomials over F of degree 1..max_degree, sorted
// by degree and then by coefficient enumeration order. Throws CapExceeded
// when |F|^max_degree > cap.
std::vector<Poly> enumerate_irreducibles(const FiniteField& F, unsigned max_degree,
                                         std::uint64_t cap = kIrreducibleSearchCap);

// Cached wrapper around enumerate_irreducibles keyed by (field, degree).
const std::vector<Poly>& irreducibles_up_to(const FieldPtr& F, unsigned max_degree);

}  // namespace normtrace
