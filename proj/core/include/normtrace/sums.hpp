#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "normtrace/algebra.hpp"
#include "normtrace/chars.hpp"
#include "normtrace/exact.hpp"
#include "normtrace/parallel.hpp"
#include "normtrace/sum_value.hpp"

namespace normtrace {

// A sum evaluated two independent ways.
struct RoutePair {
  SumValue direct;
  SumValue closed;

  bool agree(double rel_tol = kDefaultTolerance) const { return direct.approx_equal(closed, rel_tol); }
  double residual() const { return distance(direct, closed); }
};

// Sum over g in GL_d(F_Q) of chi(det g) psi(tr g), where F_Q is the field of
// the characters; closed = Q^{d(d-1)/2} G(chi, psi)^d.
RoutePair gauss_sum_gl(unsigned d, const MultiplicativeCharacter& chi, const AdditiveCharacter& psi,
                       const Execution& exec = {});

enum class SmRoute {
  kDefinition,  // sum over v != 0 and all chi
  kFastPath,    // the a = 0 and a != 0 simplifications
};

// S_m(a, b) = sum_{v != 0} psi(-a v) sum_chi conj(chi)(b v^m) G(chi, psi)^m.
// Throws InvalidArgument for b = 0.
SumValue s_m(const AdditiveCharacter& psi, unsigned m, Elem a, Elem b, SmRoute route = SmRoute::kDefinition);
// T_m(a, b) = S_m(a, b) - (-1)^m (q - 1).
SumValue t_m(const AdditiveCharacter& psi, unsigned m, Elem a, Elem b, SmRoute route = SmRoute::kDefinition);

// K_{F_q^m}(b) = sum over unit m-tuples with product b of psi(x_1 + ... + x_m).
SumValue hyper_kloosterman(const AdditiveCharacter& psi, unsigned m, Elem b,
                           std::uint64_t max_summands = kDefaultSummandCap);
// m q^{(m-1)/2}
QuadraticSurd hyper_kloosterman_bound(std::uint32_t q, unsigned m);

// (-1)^{m - sum d_i}
int reduction_sign(const AlgebraSpec& spec);
// q^{(n - m)/2}, always an integer.
std::int64_t reduction_scale(const AlgebraSpec& spec);

// K_B(b) summed over units with norm b, for every b at once. Entry b of the
// result holds K_B(b); entry 0 is unused.
std::vector<SumValue> kloosterman_direct_all(const AlgebraSpec& spec, const AdditiveCharacter& psi,
                                             const Execution& exec = {});
// sign * q^{(n-m)/2} * K_{F_q^m}(b)
SumValue kloosterman_reduced(const AlgebraSpec& spec, const AdditiveCharacter& psi, Elem b,
                             std::uint64_t max_summands = kDefaultSummandCap);
RoutePair kloosterman_B(const AlgebraSpec& spec, const AdditiveCharacter& psi, Elem b, const Execution& exec = {});
// m q^{(n-1)/2} with m = sum d_i n_i.
QuadraticSurd kloosterman_bound(const AlgebraSpec& spec);

struct FullUnitSum {
  SumValue direct;
  std::int64_t closed = 0;  // (-1)^{sum d_i} q^{(n-m)/2}
};
FullUnitSum full_unit_sum(const AlgebraSpec& spec, const AdditiveCharacter& psi, const Execution& exec = {});

struct ProductTraceResult {
  SumValue sum;                               // K(B, r, x, psi)
  std::vector<std::uint64_t> trace_counts;    // N(B, r, x, a), indexed by a
  bool regular = false;
  // Product of the per-factor twisted Kloosterman sums, etale algebras only.
  std::optional<SumValue> etale_product;
};

// Sweeps the (r-1) free factors over B*, solving g_r = (g_1 ... g_{r-1})^{-1} x.
// x_index is an index into `units`.
ProductTraceResult product_trace(const Enumerator& units, unsigned r, std::uint64_t x_index,
                                 const AdditiveCharacter& psi, const Execution& exec = {});
ProductTraceResult product_trace(const AlgebraSpec& spec, unsigned r, const AlgebraElement& x,
                                 const AdditiveCharacter& psi, const Execution& exec = {});

struct ProductTraceBound {
  std::int64_t binomial_product = 1;  // prod over factors and f_j of C(b_j + r - 1, b_j)
  QuadraticSurd fine;                  // binomial_product * q^{(r-1)n/2}
  QuadraticSurd coarse;                // r^{sum d_i} q^{(r-1)n/2}
};
ProductTraceBound product_trace_bound(const AlgebraSpec& spec, const AlgebraElement& x, unsigned r);

// Trace contributions Tr(tr f(x_i)) for every entry of each factor table.
std::vector<std::vector<Elem>> poly_trace_tables(const Enumerator& en, const Poly& f);

struct PolyTraceSum {
  SumValue value;
  bool degree_coprime_to_p = true;
  // n r^{n-1} q^{(n-1)/2} with r = deg f, reported for etale algebras only.
  std::optional<QuadraticSurd> etale_reference;
};
// K_{B,f}(b) = sum over units with norm b of psi(Tr_B(f(x))); f over F_q.
PolyTraceSum poly_trace_kloosterman(const AlgebraSpec& spec, const Poly& f, Elem b, const AdditiveCharacter& psi,
                                    const Execution& exec = {});

}  // namespace normtrace
