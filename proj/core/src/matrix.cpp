#include "normtrace/matrix.hpp"

#include "normtrace/error.hpp"

namespace normtrace {

Matrix::Matrix(unsigned d, std::vector<Elem> values) : dim(d), entries(std::move(values)) {
  if (entries.size() != std::size_t{d} * d) {
    throw InvalidArgument("matrix of size " + std::to_string(d) + " needs " + std::to_string(d * d) + " entries, got " +
                          std::to_string(entries.size()));
  }
}

namespace mat {

Matrix identity(unsigned d) { return scalar(d, 1); }

Matrix scalar(unsigned d, Elem c) {
  Matrix out(d);
  for (unsigned i = 0; i < d; ++i) out.at(i, i) = c;
  return out;
}

Matrix add(const FiniteField& F, const Matrix& a, const Matrix& b) {
  Matrix out(a.dim);
  for (std::size_t i = 0; i < a.entries.size(); ++i) out.entries[i] = F.add(a.entries[i], b.entries[i]);
  return out;
}

Matrix scale(const FiniteField& F, const Matrix& a, Elem c) {
  Matrix out(a.dim);
  for (std::size_t i = 0; i < a.entries.size(); ++i) out.entries[i] = F.mul(a.entries[i], c);
  return out;
}

Matrix mul(const FiniteField& F, const Matrix& a, const Matrix& b) {
  const unsigned d = a.dim;
  Matrix out(d);
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = 0; j < d; ++j) {
      Elem acc = 0;
      for (unsigned l = 0; l < d; ++l) acc = F.add(acc, F.mul(a.at(i, l), b.at(l, j)));
      out.at(i, j) = acc;
    }
  }
  return out;
}

Elem trace(const FiniteField& F, const Matrix& a) {
  Elem acc = 0;
  for (unsigned i = 0; i < a.dim; ++i) acc = F.add(acc, a.at(i, i));
  return acc;
}

Elem trace_of_product(const FiniteField& F, const Matrix& a, const Matrix& b) {
  Elem acc = 0;
  for (unsigned i = 0; i < a.dim; ++i) {
    for (unsigned l = 0; l < a.dim; ++l) acc = F.add(acc, F.mul(a.at(i, l), b.at(l, i)));
  }
  return acc;
}

Elem det(const FiniteField& F, const Matrix& a) {
  const unsigned d = a.dim;
  if (d == 1) return a.entries[0];
  if (d == 2) return F.sub(F.mul(a.at(0, 0), a.at(1, 1)), F.mul(a.at(0, 1), a.at(1, 0)));
  Matrix m = a;
  Elem result = 1;
  for (unsigned c = 0; c < d; ++c) {
    unsigned pivot = c;
    while (pivot < d && m.at(pivot, c) == 0) ++pivot;
    if (pivot == d) return 0;
    if (pivot != c) {
      for (unsigned j = 0; j < d; ++j) std::swap(m.at(pivot, j), m.at(c, j));
      result = F.neg(result);
    }
    const Elem pv = m.at(c, c);
    result = F.mul(result, pv);
    const Elem inv = F.inv(pv);
    for (unsigned i = c + 1; i < d; ++i) {
      const Elem factor = F.mul(m.at(i, c), inv);
      if (factor == 0) continue;
      for (unsigned j = c; j < d; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(factor, m.at(c, j)));
    }
  }
  return result;
}

std::optional<Matrix> inverse(const FiniteField& F, const Matrix& a) {
  const unsigned d = a.dim;
  Matrix m = a;
  Matrix inv = identity(d);
  for (unsigned c = 0; c < d; ++c) {
    unsigned pivot = c;
    while (pivot < d && m.at(pivot, c) == 0) ++pivot;
    if (pivot == d) return std::nullopt;
    if (pivot != c) {
      for (unsigned j = 0; j < d; ++j) {
        std::swap(m.at(pivot, j), m.at(c, j));
        std::swap(inv.at(pivot, j), inv.at(c, j));
      }
    }
    const Elem s = F.inv(m.at(c, c));
    for (unsigned j = 0; j < d; ++j) {
      m.at(c, j) = F.mul(m.at(c, j), s);
      inv.at(c, j) = F.mul(inv.at(c, j), s);
    }
    for (unsigned i = 0; i < d; ++i) {
      if (i == c) continue;
      const Elem factor = m.at(i, c);
      if (factor == 0) continue;
      for (unsigned j = 0; j < d; ++j) {
        m.at(i, j) = F.sub(m.at(i, j), F.mul(factor, m.at(c, j)));
        inv.at(i, j) = F.sub(inv.at(i, j), F.mul(factor, inv.at(c, j)));
      }
    }
  }
  return inv;
}

Matrix companion(const FiniteField& F, const Poly& f) {
  const int deg = poly::degree(f);
  if (deg < 1 || !poly::is_monic(f)) throw InvalidArgument("companion matrix needs a monic polynomial of degree >= 1");
  const unsigned d = static_cast<unsigned>(deg);
  Matrix out(d);
  for (unsigned i = 1; i < d; ++i) out.at(i, i - 1) = 1;
  for (unsigned i = 0; i < d; ++i) out.at(i, d - 1) = F.neg(f[i]);
  return out;
}

Matrix evaluate(const FiniteField& F, const Poly& f, const Matrix& a) {
  Matrix acc(a.dim);
  for (std::size_t j = f.size(); j-- > 0;) acc = add(F, mul(F, acc, a), scalar(a.dim, f[j]));
  return acc;
}

std::string format(const FiniteField& F, const Matrix& a) {
  std::string out = "[";
  for (unsigned i = 0; i < a.dim; ++i) {
    out += i ? ",[" : "[";
    for (unsigned j = 0; j < a.dim; ++j) {
      if (j) out += ",";
      out += F.format(a.at(i, j));
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace mat

namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;

Poly cofactor_det(const FiniteField& F, const PolyMatrix& m) {
  const std::size_t d = m.size();
  if (d == 1) return m[0][0];
  Poly result;
  for (std::size_t c = 0; c < d; ++c) {
    if (m[0][c].empty()) continue;
    PolyMatrix minor(d - 1);
    for (std::size_t i = 1; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (j != c) minor[i - 1].push_back(m[i][j]);
      }
    }
    Poly term = poly::mul(F, m[0][c], cofactor_det(F, minor));
    result = c % 2 == 0 ? poly::add(F, result, term) : poly::sub(F, result, term);
  }
  return result;
}

// Solves cols * c = target over F; cols are column vectors of equal length.
std::optional<std::vector<Elem>> solve(const FiniteField& F, const std::vector<std::vector<Elem>>& cols,
                                       const std::vector<Elem>& target) {
  const std::size_t rows = target.size();
  const std::size_t n = cols.size();
  std::vector<std::vector<Elem>> aug(rows, std::vector<Elem>(n + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = cols[j][i];
    aug[i][n] = target[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && aug[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(aug[p], aug[r]);
    const Elem s = F.inv(aug[r][c]);
    for (auto& v : aug[r]) v = F.mul(v, s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      const Elem factor = aug[i][c];
      for (std::size_t j = c; j <= n; ++j) aug[i][j] = F.sub(aug[i][j], F.mul(factor, aug[r][j]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (aug[i][n] != 0) return std::nullopt;
  }
  std::vector<Elem> x(n, 0);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = aug[i][n];
  return x;
}

void require_small(const Matrix& m) {
  if (m.dim == 0) throw InvalidArgument("matrix dimension must be at least 1");
  if (m.dim > kMaxMatrixDim) {
    throw CapExceeded("matrix dimension " + std::to_string(m.dim) + " exceeds the limit " +
                      std::to_string(kMaxMatrixDim) + "; reduce parameters");
  }
}

}  // namespace

Poly charpoly(const FiniteField& F, const Matrix& m) {
  require_small(m);
  PolyMatrix tm(m.dim, std::vector<Poly>(m.dim));
  for (unsigned i = 0; i < m.dim; ++i) {
    for (unsigned j = 0; j < m.dim; ++j) {
      Poly entry{F.neg(m.at(i, j))};
      if (i == j) entry.push_back(1);
      poly::normalize(entry);
      tm[i][j] = std::move(entry);
    }
  }
  return cofactor_det(F, tm);
}

Poly minpoly(const FiniteField& F, const Matrix& m) {
  require_small(m);
  std::vector<std::vector<Elem>> powers{mat::identity(m.dim).entries};
  Matrix current = mat::identity(m.dim);
  for (unsigned k = 1; k <= m.dim; ++k) {
    current = mat::mul(F, current, m);
    if (auto c = solve(F, powers, current.entries)) {
      Poly f(k + 1);
      for (unsigned j = 0; j < k; ++j) f[j] = F.neg((*c)[j]);
      f[k] = 1;
      return f;
    }
    powers.push_back(current.entries);
  }
  throw Error("minimal polynomial search exceeded the matrix dimension");
}

Poly CharPolyFactorization::product(const FiniteField& F) const {
  Poly acc{1};
  for (const auto& [f, b] : factors) acc = poly::mul(F, acc, poly::pow(F, f, b));
  return acc;
}

CharPolyFactorization factor_monic(const FieldPtr& F, const Poly& f) {
  if (!poly::is_monic(f)) throw InvalidArgument("factor_monic needs a monic polynomial");
  CharPolyFactorization out;
  Poly rest = f;
  const int deg = poly::degree(f);
  if (deg >= 2) {
    // Any composite remainder has a factor of degree <= deg / 2.
    for (const Poly& g : irreducibles_up_to(F, static_cast<unsigned>(deg / 2))) {
      if (2 * poly::degree(g) > poly::degree(rest)) break;
      unsigned mult = 0;
      while (true) {
        auto [q, r] = poly::divmod(*F, rest, g);
        if (!r.empty()) break;
        rest = std::move(q);
        ++mult;
      }
      if (mult) out.factors.emplace_back(g, mult);
    }
  }
  if (poly::degree(rest) >= 1) out.factors.emplace_back(rest, 1);
  return out;
}

CharPolyFactorization factor_charpoly(const FieldPtr& F, const Matrix& m) { return factor_monic(F, charpoly(*F, m)); }

bool is_regular(const FiniteField& F, const Matrix& m) { return minpoly(F, m) == charpoly(F, m); }

}  // namespace normtrace
