#pragma once

// Slow reference implementations used as test oracles. Nothing here touches
// the library's tables: field arithmetic is schoolbook polynomial arithmetic
// modulo the modulus, determinants are Leibniz sums, and algebra counts
// enumerate raw entry tuples.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "normtrace/normtrace.hpp"

namespace oracle {

using normtrace::Elem;

struct NaiveField {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // low coefficients of the monic modulus

  NaiveField(std::uint32_t p_, std::vector<std::uint32_t> low)
      : p(p_), k(static_cast<std::uint32_t>(low.size())), modulus(std::move(low)) {
    q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= p;
  }
  explicit NaiveField(const normtrace::FiniteField& F) : NaiveField(F.characteristic(), F.modulus()) {}

  std::vector<std::uint32_t> vec(Elem x) const {
    std::vector<std::uint32_t> c(k);
    for (std::uint32_t j = 0; j < k; ++j) {
      c[j] = x % p;
      x /= p;
    }
    return c;
  }
  Elem code(const std::vector<std::uint32_t>& c) const {
    Elem x = 0;
    for (std::uint32_t j = k; j-- > 0;) x = x * p + c[j];
    return x;
  }
  Elem add(Elem a, Elem b) const {
    auto x = vec(a), y = vec(b);
    for (std::uint32_t j = 0; j < k; ++j) x[j] = (x[j] + y[j]) % p;
    return code(x);
  }
  Elem neg(Elem a) const {
    auto x = vec(a);
    for (auto& c : x) c = (p - c) % p;
    return code(x);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    const auto x = vec(a), y = vec(b);
    std::vector<std::uint64_t> prod(2 * k, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
      for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
    }
    // t^k = -(c_0 + ... + c_{k-1} t^{k-1})
    for (std::size_t d = 2 * k; d-- > k;) {
      const std::uint64_t c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (std::uint32_t j = 0; j < k; ++j) prod[d - k + j] = (prod[d - k + j] + (p - modulus[j]) * c) % p;
    }
    std::vector<std::uint32_t> out(k);
    for (std::uint32_t j = 0; j < k; ++j) out[j] = static_cast<std::uint32_t>(prod[j]);
    return code(out);
  }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  Elem inv(Elem a) const {
    for (Elem y = 1; y < q; ++y) {
      if (mul(a, y) == 1) return y;
    }
    return 0;
  }
  std::uint64_t order(Elem a) const {
    Elem r = a;
    std::uint64_t n = 1;
    while (r != 1) {
      r = mul(r, a);
      ++n;
    }
    return n;
  }
  // Sum of x^{p^j}, j < k, read off as a prime-field code.
  std::uint32_t absolute_trace(Elem x) const {
    Elem s = 0, y = x;
    for (std::uint32_t j = 0; j < k; ++j) {
      s = add(s, y);
      y = pow_fast(y, p);
    }
    return s;
  }
  Elem pow_fast(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

// Monic polynomial arithmetic over F_p with plain integer coefficients.
inline std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> f, const std::vector<std::uint32_t>& g,
                                           std::uint32_t p) {
  // g monic
  while (f.size() >= g.size()) {
    const std::uint32_t c = f.back();
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] = (f[shift + i] + (p - c) * g[i]) % p;
    f.pop_back();
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.size() < g.size()) break;
  }
  return f;
}

// Irreducibility over F_p by trying every monic divisor of degree <= deg/2.
inline bool irreducible_over_prime(const std::vector<std::uint32_t>& monic_full, std::uint32_t p) {
  const std::size_t deg = monic_full.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint32_t> g(d + 1, 0);
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      g[d] = 1;
      if (poly_mod(monic_full, g, p).empty()) return false;
    }
  }
  return true;
}

inline int mobius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

// Number of monic irreducibles of degree d over F_q.
inline std::int64_t irreducible_count(std::int64_t q, unsigned d) {
  std::int64_t s = 0;
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    std::int64_t pw = 1;
    for (unsigned i = 0; i < e; ++i) pw *= q;
    s += mobius(d / e) * pw;
  }
  return s / d;
}

// Leibniz determinant.
inline Elem leibniz_det(const NaiveField& F, const normtrace::Matrix& m) {
  const unsigned d = m.dim;
  std::vector<unsigned> perm(d);
  for (unsigned i = 0; i < d; ++i) perm[i] = i;
  Elem total = 0;
  do {
    int inversions = 0;
    for (unsigned i = 0; i < d; ++i) {
      for (unsigned j = i + 1; j < d; ++j) inversions += perm[i] > perm[j];
    }
    Elem term = 1;
    for (unsigned i = 0; i < d; ++i) term = F.mul(term, m.at(i, perm[i]));
    total = inversions % 2 ? F.sub(total, term) : F.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Elem naive_trace(const NaiveField& F, const normtrace::Matrix& m) {
  Elem t = 0;
  for (unsigned i = 0; i < m.dim; ++i) t = F.add(t, m.at(i, i));
  return t;
}

inline normtrace::Matrix naive_mul(const NaiveField& F, const normtrace::Matrix& a, const normtrace::Matrix& b) {
  normtrace::Matrix c(a.dim);
  for (unsigned i = 0; i < a.dim; ++i) {
    for (unsigned j = 0; j < a.dim; ++j) {
      Elem s = 0;
      for (unsigned l = 0; l < a.dim; ++l) s = F.add(s, F.mul(a.at(i, l), b.at(l, j)));
      c.at(i, j) = s;
    }
  }
  return c;
}

// Relative trace and norm of F_Q over F_q as sums and products of the
// conjugates x^{q^j}.
struct NaiveTower {
  NaiveField ext;
  std::uint32_t q;  // base field size
  std::uint32_t m;  // relative degree

  Elem conj_sum(Elem x) const {
    Elem s = 0, y = x;
    for (std::uint32_t j = 0; j < m; ++j) {
      s = ext.add(s, y);
      y = ext.pow_fast(y, q);
    }
    return s;
  }
  Elem conj_prod(Elem x) const {
    Elem s = 1, y = x;
    for (std::uint32_t j = 0; j < m; ++j) {
      s = ext.mul(s, y);
      y = ext.pow_fast(y, q);
    }
    return s;
  }
};

// Histogram of (Tr_B, N_B) over B or B*, computed from raw entry tuples
// with Leibniz determinants and conjugate sums in the extension fields. The
// values are returned in the extension-field images and mapped back through
// the library's embedding only at the end (pull_back is checked separately).
inline std::vector<std::uint64_t> naive_histogram(const normtrace::AlgebraSpec& spec, bool units_only) {
  using namespace normtrace;
  const std::uint32_t q = spec.q();
  struct Part {
    NaiveTower tower;
    EmbeddingPtr emb;
    unsigned d;
    std::vector<std::pair<Elem, Elem>> tn;  // (trace, norm) in F_q for every matrix
  };
  std::vector<Part> parts;
  for (std::size_t i = 0; i < spec.k(); ++i) {
    const auto F = spec.factor_field(i);
    Part part{NaiveTower{NaiveField(*F), q, spec.factors()[i].n}, spec.factor_embedding(i), spec.factors()[i].d, {}};
    const unsigned d = part.d;
    std::uint64_t count = 1;
    for (unsigned j = 0; j < d * d; ++j) count *= F->size();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Matrix mtx(d);
      std::uint64_t t = idx;
      for (unsigned j = 0; j < d * d; ++j) {
        mtx.entries[j] = static_cast<Elem>(t % F->size());
        t /= F->size();
      }
      const Elem det = leibniz_det(part.tower.ext, mtx);
      if (units_only && det == 0) continue;
      const Elem tr = part.tower.conj_sum(naive_trace(part.tower.ext, mtx));
      const Elem nm = part.tower.conj_prod(det);
      part.tn.emplace_back(part.emb->pull_back(tr), part.emb->pull_back(nm));
    }
    parts.push_back(std::move(part));
  }
  NaiveField base(*spec.base_field());
  std::vector<std::uint64_t> hist(std::size_t{q} * q, 0);
  std::vector<std::size_t> idx(parts.size(), 0);
  while (true) {
    Elem tr = 0, nm = 1;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      tr = base.add(tr, parts[i].tn[idx[i]].first);
      nm = base.mul(nm, parts[i].tn[idx[i]].second);
    }
    ++hist[std::size_t{tr} * q + nm];
    std::size_t i = parts.size();
    while (i-- > 0) {
      if (++idx[i] < parts[i].tn.size()) break;
      idx[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return hist;
}

inline std::complex<double> root_of_unity(std::uint64_t j, std::uint64_t n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(j % n) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

// psi_1(x) from the naive absolute trace.
inline std::complex<double> naive_psi(const NaiveField& F, Elem x) { return root_of_unity(F.absolute_trace(x), F.p); }

// Discrete log by linear search from the library's generator.
inline std::uint64_t naive_log(const NaiveField& F, Elem g, Elem x) {
  Elem y = 1;
  for (std::uint64_t t = 0; t < F.q; ++t) {
    if (y == x) return t;
    y = F.mul(y, g);
  }
  return ~std::uint64_t{0};
}

// Seeded generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
  Elem elem(const normtrace::FiniteField& F) { return static_cast<Elem>(below(F.size())); }
  Elem unit(const normtrace::FiniteField& F) { return static_cast<Elem>(1 + below(F.size() - 1)); }
  normtrace::Matrix matrix(const normtrace::FiniteField& F, unsigned d) {
    normtrace::Matrix m(d);
    for (auto& e : m.entries) e = elem(F);
    return m;
  }
  normtrace::AlgebraElement element(const normtrace::AlgebraSpec& spec) {
    normtrace::AlgebraElement x;
    for (std::size_t i = 0; i < spec.k(); ++i) x.parts.push_back(matrix(*spec.factor_field(i), spec.factors()[i].d));
    return x;
  }
  normtrace::AlgebraElement unit(const normtrace::AlgebraSpec& spec) {
    while (true) {
      auto x = element(spec);
      if (normtrace::is_unit(spec, x)) return x;
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
