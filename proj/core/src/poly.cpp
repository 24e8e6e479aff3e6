#include "normtrace/poly.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "normtrace/error.hpp"

namespace normtrace {
namespace poly {

void normalize(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) {
  int d = static_cast<int>(f.size()) - 1;
  while (d >= 0 && f[static_cast<std::size_t>(d)] == 0) --d;
  return d;
}

bool is_monic(const Poly& f) {
  const int d = degree(f);
  return d >= 0 && f[static_cast<std::size_t>(d)] == 1;
}

Poly add(const FiniteField& F, const Poly& f, const Poly& g) {
  Poly out(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Elem a = i < f.size() ? f[i] : 0;
    const Elem b = i < g.size() ? g[i] : 0;
    out[i] = F.add(a, b);
  }
  normalize(out);
  return out;
}

Poly sub(const FiniteField& F, const Poly& f, const Poly& g) {
  Poly out(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Elem a = i < f.size() ? f[i] : 0;
    const Elem b = i < g.size() ? g[i] : 0;
    out[i] = F.sub(a, b);
  }
  normalize(out);
  return out;
}

Poly mul(const FiniteField& F, const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) return {};
  Poly out(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) {
      out[i + j] = F.add(out[i + j], F.mul(f[i], g[j]));
    }
  }
  normalize(out);
  return out;
}

Poly scale(const FiniteField& F, const Poly& f, Elem c) {
  Poly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = F.mul(f[i], c);
  normalize(out);
  return out;
}

Poly pow(const FiniteField& F, const Poly& f, unsigned e) {
  Poly result{F.one()};
  for (unsigned i = 0; i < e; ++i) result = mul(F, result, f);
  return result;
}

DivMod divmod(const FiniteField& F, const Poly& f, const Poly& g) {
  const int dg = degree(g);
  if (dg < 0) throw InvalidArgument("polynomial division by zero");
  Poly rem = f;
  normalize(rem);
  const int df = degree(rem);
  if (df < dg) return {{}, rem};
  Poly quo(static_cast<std::size_t>(df - dg + 1), 0);
  const Elem lead_inv = F.inv(g[static_cast<std::size_t>(dg)]);
  for (int i = df; i >= dg; --i) {
    const Elem c = rem[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const Elem factor = F.mul(c, lead_inv);
    const auto shift = static_cast<std::size_t>(i - dg);
    quo[shift] = factor;
    for (int j = 0; j <= dg; ++j) {
      const auto pos = shift + static_cast<std::size_t>(j);
      rem[pos] = F.sub(rem[pos], F.mul(factor, g[static_cast<std::size_t>(j)]));
    }
  }
  normalize(quo);
  normalize(rem);
  return {std::move(quo), std::move(rem)};
}

bool divides(const FiniteField& F, const Poly& g, const Poly& f) {
  return divmod(F, f, g).remainder.empty();
}

Elem evaluate(const FiniteField& F, const Poly& f, Elem x) {
  Elem acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
  return acc;
}

Poly monic(const FiniteField& F, const Poly& f) {
  const int d = degree(f);
  if (d < 0) throw InvalidArgument("zero polynomial has no monic associate");
  return scale(F, f, F.inv(f[static_cast<std::size_t>(d)]));
}

Poly monic_at(const FiniteField& F, unsigned deg, std::uint64_t index) {
  Poly f(deg + 1, 0);
  f[deg] = F.one();
  // c_{deg-1} is the fastest digit.
  for (unsigned j = deg; j-- > 0;) {
    f[j] = F.at_rank(static_cast<std::uint32_t>(index % F.size()));
    index /= F.size();
  }
  return f;
}

std::string format(const FiniteField& F, const Poly& f) {
  const int d = degree(f);
  if (d < 0) return "0";
  const bool prime = F.degree() == 1;
  std::ostringstream os;
  bool first = true;
  for (int i = d; i >= 0; --i) {
    const Elem c = f[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    std::string coeff = prime ? std::to_string(c) : "(" + F.format(c) + ")";
    if (i == 0) {
      os << (prime ? std::to_string(c) : coeff);
      continue;
    }
    if (c != 1) os << coeff;
    os << 't';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

}  // namespace poly

namespace {

std::uint64_t checked_power(std::uint64_t base, unsigned e, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

}  // namespace

bool is_irreducible(const FiniteField& F, const Poly& f) {
  const int d = poly::degree(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  const auto half = static_cast<unsigned>(d / 2);
  for (const Poly& g : enumerate_irreducibles(F, half)) {
    if (poly::divides(F, g, f)) return false;
  }
  return true;
}

std::vector<Poly> enumerate_irreducibles(const FiniteField& F, unsigned max_degree,
                                         std::uint64_t cap) {
  const std::uint64_t space = checked_power(F.size(), max_degree, cap);
  if (space > cap) {
    throw CapExceeded("irreducible search over " + F.name() + " up to degree " +
                      std::to_string(max_degree) + " exceeds the cap of " +
                      std::to_string(cap) + " candidates; reduce parameters");
  }
  std::vector<Poly> found;
  std::vector<std::size_t> degree_start(max_degree + 2, 0);
  for (unsigned deg = 1; deg <= max_degree; ++deg) {
    degree_start[deg] = found.size();
    const std::uint64_t count = checked_power(F.size(), deg, cap);
    const std::size_t usable = degree_start[deg / 2 + 1];
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly f = poly::monic_at(F, deg, idx);
      bool irreducible = true;
      for (std::size_t j = 0; j < usable && irreducible; ++j) {
        if (poly::divides(F, found[j], f)) irreducible = false;
      }
      if (irreducible) found.push_back(std::move(f));
    }
  }
  degree_start[max_degree + 1] = found.size();
  return found;
}

const std::vector<Poly>& irreducibles_up_to(const FieldPtr& F, unsigned max_degree) {
  static std::mutex mu;
  static std::map<std::pair<FieldId, unsigned>, std::unique_ptr<std::vector<Poly>>> cache;
  std::scoped_lock lock(mu);
  auto& slot = cache[{F->id(), max_degree}];
  if (!slot) slot = std::make_unique<std::vector<Poly>>(enumerate_irreducibles(*F, max_degree));
  return *slot;
}

}  // namespace normtrace
