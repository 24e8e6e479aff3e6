#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normtrace/gf.hpp"
#include "normtrace/poly.hpp"

namespace normtrace {

// Largest matrix size accepted by the polynomial routines.
inline constexpr unsigned kMaxMatrixDim = 6;

// Square matrix over one FiniteField, row-major.
struct Matrix {
  unsigned dim = 0;
  std::vector<Elem> entries;

  Matrix() = default;
  explicit Matrix(unsigned d) : dim(d), entries(std::size_t{d} * d, 0) {}
  Matrix(unsigned d, std::vector<Elem> values);

  Elem& at(unsigned i, unsigned j) { return entries[std::size_t{i} * dim + j]; }
  Elem at(unsigned i, unsigned j) const { return entries[std::size_t{i} * dim + j]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

namespace mat {

Matrix identity(unsigned d);
Matrix scalar(unsigned d, Elem c);
Matrix add(const FiniteField& F, const Matrix& a, const Matrix& b);
Matrix scale(const FiniteField& F, const Matrix& a, Elem c);
Matrix mul(const FiniteField& F, const Matrix& a, const Matrix& b);
Elem trace(const FiniteField& F, const Matrix& a);
// tr(ab) without forming the product.
Elem trace_of_product(const FiniteField& F, const Matrix& a, const Matrix& b);
Elem det(const FiniteField& F, const Matrix& a);
std::optional<Matrix> inverse(const FiniteField& F, const Matrix& a);
// Companion matrix of a monic polynomial of degree >= 1.
Matrix companion(const FiniteField& F, const Poly& monic_poly);
// f(a) by Horner's rule.
Matrix evaluate(const FiniteField& F, const Poly& f, const Matrix& a);
// Rows in brackets, entries in the field's polynomial notation.
std::string format(const FiniteField& F, const Matrix& a);

}  // namespace mat

// det(tI - M) by cofactor expansion over F[t]. Throws CapExceeded when
// M is larger than kMaxMatrixDim.
Poly charpoly(const FiniteField& F, const Matrix& m);

// Monic generator of the annihilator of M: the first linear dependency
// among I, M, M^2, ...
Poly minpoly(const FiniteField& F, const Matrix& m);

struct CharPolyFactorization {
  // Distinct monic irreducible factors with multiplicities, in the order
  // produced by enumerate_irreducibles.
  std::vector<std::pair<Poly, unsigned>> factors;

  std::size_t distinct() const { return factors.size(); }
  // Product of f_j^{b_j}.
  Poly product(const FiniteField& F) const;
};

// Factors a monic polynomial by trial division against the irreducibles of
// degree <= deg(f).
CharPolyFactorization factor_monic(const FieldPtr& F, const Poly& f);

CharPolyFactorization factor_charpoly(const FieldPtr& F, const Matrix& m);

// Minimal polynomial equals characteristic polynomial.
bool is_regular(const FiniteField& F, const Matrix& m);

}  // namespace normtrace
