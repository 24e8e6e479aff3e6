#include "normtrace/gf.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "normtrace/error.hpp"
#include "normtrace/poly.hpp"

namespace normtrace {

namespace {

constexpr std::uint32_t kNoLog = 0xffffffffu;

// Arithmetic in F_p[t]/(f) on coefficient vectors, used only while the
// dense tables are being built.
class ResidueRing {
 public:
  ResidueRing(std::uint32_t p, std::vector<std::uint32_t> modulus)
      : p_(p), k_(static_cast<std::uint32_t>(modulus.size())), modulus_(std::move(modulus)) {}

  std::vector<std::uint32_t> decode(std::uint64_t code) const {
    std::vector<std::uint32_t> c(k_);
    for (std::uint32_t j = 0; j < k_; ++j) {
      c[j] = static_cast<std::uint32_t>(code % p_);
      code /= p_;
    }
    return c;
  }

  std::uint64_t encode(const std::vector<std::uint32_t>& c) const {
    std::uint64_t code = 0;
    for (std::uint32_t j = k_; j-- > 0;) code = code * p_ + c[j];
    return code;
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    const auto x = decode(a);
    const auto y = decode(b);
    std::vector<std::uint64_t> prod(2 * k_, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
      if (x[i] == 0) continue;
      for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_;
    }
    // t^k = -(c_0 + ... + c_{k-1} t^{k-1})
    for (std::uint32_t i = 2 * k_; i-- > k_;) {
      const std::uint64_t c = prod[i];
      if (c == 0) continue;
      prod[i] = 0;
      for (std::uint32_t j = 0; j < k_; ++j) {
        const std::uint64_t sub = (c * modulus_[j]) % p_;
        prod[i - k_ + j] = (prod[i - k_ + j] + p_ - sub) % p_;
      }
    }
    std::vector<std::uint32_t> out(k_);
    for (std::uint32_t j = 0; j < k_; ++j) out[j] = static_cast<std::uint32_t>(prod[j]);
    return encode(out);
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t result = 1;
    while (e > 0) {
      if (e & 1) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }

 private:
  std::uint32_t p_;
  std::uint32_t k_;
  std::vector<std::uint32_t> modulus_;
};

std::vector<std::uint32_t> find_modulus(std::uint32_t p, std::uint32_t k) {
  if (k == 1) return {0};
  const FieldPtr prime = gf(p, 1);
  const auto divisors = enumerate_irreducibles(*prime, k / 2);
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const Poly f = poly::monic_at(*prime, k, idx);
    bool irreducible = true;
    for (const Poly& g : divisors) {
      if (poly::divides(*prime, g, f)) {
        irreducible = false;
        break;
      }
    }
    if (irreducible) return {f.begin(), f.begin() + k};
  }
  throw Error("no irreducible polynomial found");  // unreachable for prime p
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(const FiniteField& field, Elem value) : field_(&field), value_(value) {
  if (!field.contains(value)) {
    throw InvalidArgument("element " + std::to_string(value) + " is not in " + field.name());
  }
}

FieldId FieldElement::field_id() const { return field_ ? field_->id() : FieldId{}; }

std::vector<std::uint32_t> FieldElement::coefficients() const { return field_->coefficients(value_); }

namespace {

const FiniteField& common_field(const FieldElement& a, const FieldElement& b) {
  if (a.field_id() != b.field_id()) {
    throw FieldMismatch("cannot combine elements of " + a.field().name() + " and " + b.field().name() +
                        " without an embedding");
  }
  return a.field();
}

}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  const auto& F = common_field(a, b);
  return {F, F.add(a.value(), b.value())};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  const auto& F = common_field(a, b);
  return {F, F.sub(a.value(), b.value())};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  const auto& F = common_field(a, b);
  return {F, F.mul(a.value(), b.value())};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  const auto& F = common_field(a, b);
  return {F, F.div(a.value(), b.value())};
}

FieldElement FieldElement::operator-() const { return {*field_, field_->neg(value_)}; }

FieldElement FieldElement::pow(std::uint64_t e) const { return {*field_, field_->pow(value_, e)}; }

FieldElement FieldElement::inverse() const { return {*field_, field_->inv(value_)}; }

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field_id() == b.field_id() && a.value() == b.value();
}

// ---------------------------------------------------------------------------
// FiniteField

std::unique_ptr<FiniteField> FiniteField::build(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  if (k == 0) throw InvalidArgument("field degree k must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kFieldTableCap) {
      throw CapExceeded("field of size " + std::to_string(p) + "^" + std::to_string(k) +
                        " exceeds the table cap 2^20; reduce parameters");
    }
  }

  std::unique_ptr<FiniteField> F(new FiniteField());
  F->p_ = p;
  F->k_ = k;
  F->q_ = static_cast<std::uint32_t>(q);
  F->modulus_ = find_modulus(p, k);
  const ResidueRing ring(p, F->modulus_);
  const std::uint32_t units = F->q_ - 1;

  F->rank_.assign(q, 0);
  F->by_rank_.assign(q, 0);
  for (std::uint32_t code = 0; code < q; ++code) {
    std::uint32_t r = 0;
    std::uint32_t rest = code;
    for (std::uint32_t j = 0; j < k; ++j) {
      r = r * p + rest % p;  // c_0 becomes the most significant digit
      rest /= p;
    }
    F->rank_[code] = r;
    F->by_rank_[r] = code;
  }

  const auto factors = prime_factors(units);
  F->generator_ = 0;
  for (std::uint32_t r = 1; r < q && F->generator_ == 0; ++r) {
    const Elem x = F->by_rank_[r];
    if (x == 0) continue;
    bool primitive = true;
    for (const auto l : factors) {
      if (ring.pow(x, units / l) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) F->generator_ = x;
  }

  F->log_.assign(q, kNoLog);
  F->exp2_.assign(2 * static_cast<std::size_t>(units), 0);
  std::uint64_t e = 1;
  for (std::uint32_t t = 0; t < units; ++t) {
    F->exp2_[t] = static_cast<Elem>(e);
    F->exp2_[t + units] = static_cast<Elem>(e);
    F->log_[e] = t;
    e = ring.mul(e, F->generator_);
  }

  // neg and 1 + x are digit-wise operations on the code.
  F->neg_.assign(q, 0);
  for (std::uint32_t code = 0; code < q; ++code) {
    auto c = ring.decode(code);
    for (auto& d : c) d = (p - d) % p;
    F->neg_[code] = static_cast<Elem>(ring.encode(c));
  }
  F->zech_.assign(units, kNoLog);
  for (std::uint32_t t = 0; t < units; ++t) {
    const Elem x = F->exp2_[t];
    const Elem succ = (x % p == p - 1) ? x - (p - 1) : x + 1;
    F->zech_[t] = succ == 0 ? kNoLog : F->log_[succ];
  }

  F->abs_trace_.assign(q, 0);
  for (std::uint32_t code = 1; code < q; ++code) {
    Elem acc = 0;
    Elem y = code;
    for (std::uint32_t j = 0; j < k; ++j) {
      acc = F->add(acc, y);
      y = F->pow(y, p);
    }
    F->abs_trace_[code] = acc;  // lies in the prime subfield {0..p-1}
  }
  return F;
}

Elem FiniteField::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint32_t la = log_[a];
  const std::uint32_t lb = log_[b];
  const std::uint32_t units = q_ - 1;
  const std::uint32_t diff = lb >= la ? lb - la : lb + units - la;
  const std::uint32_t z = zech_[diff];
  if (z == kNoLog) return 0;
  return exp2_[la + z];
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw InvalidArgument("zero has no inverse in " + name());
  const std::uint32_t l = log_[a];
  return exp2_[l == 0 ? 0 : (q_ - 1) - l];
}

Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t units = q_ - 1;
  return exp2_[(std::uint64_t{log_[a]} * (e % units)) % units];
}

std::uint32_t FiniteField::log(Elem x) const {
  if (x == 0 || x >= q_) throw InvalidArgument("discrete log is undefined for " + std::to_string(x) + " in " + name());
  return log_[x];
}

std::vector<std::uint32_t> FiniteField::coefficients(Elem x) const {
  std::vector<std::uint32_t> c(k_);
  for (std::uint32_t j = 0; j < k_; ++j) {
    c[j] = x % p_;
    x /= p_;
  }
  return c;
}

Elem FiniteField::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > k_) throw InvalidArgument("too many coefficients for " + name());
  Elem code = 0;
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    if (coeffs[j] >= p_) throw InvalidArgument("coefficient " + std::to_string(coeffs[j]) + " is not reduced mod p");
    code = code * p_ + coeffs[j];
  }
  return code;
}

FieldElement FiniteField::element(Elem x) const { return {*this, x}; }

std::string FiniteField::format(Elem x) const {
  if (k_ == 1 || x < p_) return std::to_string(x);
  const auto c = coefficients(x);
  std::ostringstream os;
  bool first = true;
  for (std::uint32_t j = k_; j-- > 0;) {
    if (c[j] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (j == 0) {
      os << c[j];
      continue;
    }
    if (c[j] != 1) os << c[j];
    os << 'w';
    if (j > 1) os << '^' << j;
  }
  return os.str();
}

std::string FiniteField::name() const { return "F_" + std::to_string(q_); }

FieldPtr gf(std::uint32_t p, std::uint32_t k) {
  static std::recursive_mutex mu;
  static std::map<FieldId, FieldPtr> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find({p, k});
  if (it != cache.end()) return it->second;
  FieldPtr built = FiniteField::build(p, k);
  cache.emplace(FieldId{p, k}, built);
  return built;
}

std::uint32_t discrete_log(const FiniteField& field, const FieldElement& x) {
  if (x.field_id() != field.id()) throw FieldMismatch("element does not belong to " + field.name());
  return field.log(x.value());
}

// ---------------------------------------------------------------------------
// TowerEmbedding

std::unique_ptr<TowerEmbedding> TowerEmbedding::build(FieldPtr base, FieldPtr extension) {
  if (base->characteristic() != extension->characteristic() || extension->degree() % base->degree() != 0) {
    throw InvalidArgument(base->name() + " is not a subfield of " + extension->name());
  }
  std::unique_ptr<TowerEmbedding> emb(new TowerEmbedding());
  emb->base_ = base;
  emb->ext_ = extension;
  emb->m_ = extension->degree() / base->degree();
  const FiniteField& E = *extension;
  const FiniteField& K = *base;

  // Base modulus with coefficients viewed in the prime subfield of E.
  Poly f(K.modulus().begin(), K.modulus().end());
  f.push_back(1);
  // The trivial tower maps t to itself rather than to a conjugate root.
  bool found = emb->m_ == 1;
  if (found) emb->root_image_ = K.degree() > 1 ? K.characteristic() : 0;
  for (std::uint32_t r = 0; !found && r < E.size(); ++r) {
    const Elem beta = E.at_rank(r);
    if (poly::evaluate(E, f, beta) == 0) {
      emb->root_image_ = beta;
      found = true;
      break;
    }
  }
  if (!found) throw Error("base modulus has no root in " + E.name());

  emb->embed_.assign(K.size(), 0);
  emb->pull_back_.assign(E.size(), -1);
  for (Elem x = 0; x < K.size(); ++x) {
    const auto c = K.coefficients(x);
    Elem acc = 0;
    for (std::size_t j = c.size(); j-- > 0;) acc = E.add(E.mul(acc, emb->root_image_), c[j]);
    emb->embed_[x] = acc;
    emb->pull_back_[acc] = static_cast<std::int32_t>(x);
  }

  emb->trace_.resize(E.size());
  emb->norm_.resize(E.size());
  for (Elem x = 0; x < E.size(); ++x) {
    Elem sum = 0;
    Elem prod = 1;
    Elem y = x;
    for (std::uint32_t j = 0; j < emb->m_; ++j) {
      sum = E.add(sum, y);
      prod = E.mul(prod, y);
      y = E.pow(y, K.size());
    }
    emb->trace_[x] = emb->pull_back(sum);
    emb->norm_[x] = emb->pull_back(prod);
  }
  return emb;
}

std::optional<Elem> TowerEmbedding::try_pull_back(Elem ext_x) const {
  const std::int32_t v = pull_back_[ext_x];
  if (v < 0) return std::nullopt;
  return static_cast<Elem>(v);
}

Elem TowerEmbedding::pull_back(Elem ext_x) const {
  const auto v = try_pull_back(ext_x);
  if (!v) throw InvalidArgument(ext_->format(ext_x) + " does not lie in the embedded " + base_->name());
  return *v;
}

Elem TowerEmbedding::relative_trace(Elem x) const { return trace_[x]; }

Elem TowerEmbedding::relative_norm(Elem x) const { return norm_[x]; }

namespace {

void require_field(const FieldElement& x, const FiniteField& F) {
  if (x.field_id() != F.id()) throw FieldMismatch("element of " + x.field().name() + " used where " + F.name() + " is expected");
}

}  // namespace

FieldElement TowerEmbedding::embed(const FieldElement& x) const {
  require_field(x, *base_);
  return {*ext_, embed(x.value())};
}

FieldElement TowerEmbedding::relative_trace(const FieldElement& x) const {
  require_field(x, *ext_);
  return {*base_, relative_trace(x.value())};
}

FieldElement TowerEmbedding::relative_norm(const FieldElement& x) const {
  require_field(x, *ext_);
  return {*base_, relative_norm(x.value())};
}

EmbeddingPtr embedding(std::uint32_t p, std::uint32_t e, std::uint32_t m) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, EmbeddingPtr> cache;
  FieldPtr base = gf(p, e);
  FieldPtr ext = gf(p, e * m);
  std::scoped_lock lock(mu);
  auto& slot = cache[{p, e, m}];
  if (!slot) slot = TowerEmbedding::build(base, ext);
  return slot;
}

}  // namespace normtrace
