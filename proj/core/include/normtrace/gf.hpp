#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace normtrace {

// An element of one particular finite field, encoded by its coefficient
// vector (c_0, ..., c_{k-1}) over F_p read as the integer sum c_j * p^j.
// Zero is 0, one is 1, and the prime subfield is {0, ..., p-1}.
using Elem = std::uint32_t;

// Largest field for which dense exp/log tables are built.
inline constexpr std::uint64_t kFieldTableCap = std::uint64_t{1} << 20;

struct FieldId {
  std::uint32_t p = 0;
  std::uint32_t k = 0;

  friend bool operator==(const FieldId&, const FieldId&) = default;
  friend auto operator<=>(const FieldId&, const FieldId&) = default;
};

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

// Value type pairing an element with its owning field. Arithmetic between
// different fields throws FieldMismatch.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const FiniteField& field, Elem value);

  Elem value() const { return value_; }
  const FiniteField& field() const { return *field_; }
  FieldId field_id() const;
  bool is_zero() const { return value_ == 0; }
  std::vector<std::uint32_t> coefficients() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;
  FieldElement pow(std::uint64_t e) const;
  FieldElement inverse() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  const FiniteField* field_ = nullptr;
  Elem value_ = 0;
};

// F_{p^k} built from the first irreducible monic modulus in coefficient
// enumeration order, with the first primitive element as generator.
//
// Enumeration order: coefficient vectors (c_0, ..., c_{k-1}) ordered
// lexicographically, c_0 varying slowest. rank() and at_rank() convert
// between an element and its position in that order.
class FiniteField {
 public:
  // Always builds fresh tables. Most callers want gf(p, k) instead.
  static std::unique_ptr<FiniteField> build(std::uint32_t p, std::uint32_t k);

  FieldId id() const { return {p_, k_}; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t size() const { return q_; }
  std::uint32_t unit_count() const { return q_ - 1; }

  // Low coefficients c_0..c_{k-1} of the monic modulus t^k + ... + c_0.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elem generator() const { return generator_; }

  bool contains(Elem x) const { return x < q_; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp2_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  // x -> x^p
  Elem frobenius(Elem x) const { return pow(x, p_); }

  // Discrete log base generator(); throws InvalidArgument for zero.
  std::uint32_t log(Elem x) const;
  Elem exp(std::uint64_t t) const { return exp2_[t % (q_ - 1)]; }
  // Unchecked variants for hot loops; x must be nonzero.
  std::uint32_t log_unchecked(Elem x) const { return log_[x]; }

  // Tr_{F_{p^k}/F_p}(x) as an integer in [0, p).
  std::uint32_t absolute_trace(Elem x) const { return abs_trace_[x]; }

  std::vector<std::uint32_t> coefficients(Elem x) const;
  Elem from_coefficients(std::span<const std::uint32_t> coeffs) const;

  std::uint32_t rank(Elem x) const { return rank_[x]; }
  Elem at_rank(std::uint32_t r) const { return by_rank_[r]; }

  FieldElement element(Elem x) const;
  // Polynomial notation in the adjoined root w, e.g. "w^2+2w+1".
  std::string format(Elem x) const;
  // "F_9" style label.
  std::string name() const;

 private:
  FiniteField() = default;

  std::uint32_t p_ = 0;
  std::uint32_t k_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem generator_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp2_;  // two periods, so log sums need no reduction
  std::vector<std::uint32_t> zech_;
  std::vector<Elem> neg_;
  std::vector<std::uint32_t> abs_trace_;
  std::vector<std::uint32_t> rank_;
  std::vector<Elem> by_rank_;
};

// Process-wide cached field. Returned pointers stay valid for the lifetime
// of the process. Throws InvalidArgument for non-prime p or k == 0 and
// CapExceeded when p^k exceeds kFieldTableCap.
FieldPtr gf(std::uint32_t p, std::uint32_t k);

bool is_prime(std::uint64_t n);
// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

class TowerEmbedding;
using EmbeddingPtr = std::shared_ptr<const TowerEmbedding>;

// The inclusion F_{p^e} -> F_{p^{e m}} sending the adjoined root of the
// base modulus to the first root of that modulus in the extension (scanned
// in enumeration order).
class TowerEmbedding {
 public:
  static std::unique_ptr<TowerEmbedding> build(FieldPtr base, FieldPtr extension);

  const FiniteField& base() const { return *base_; }
  const FiniteField& extension() const { return *ext_; }
  const FieldPtr& base_ptr() const { return base_; }
  const FieldPtr& extension_ptr() const { return ext_; }
  std::uint32_t relative_degree() const { return m_; }
  // Image of the base field's adjoined root t.
  Elem root_image() const { return root_image_; }

  Elem embed(Elem base_x) const { return embed_[base_x]; }
  std::optional<Elem> try_pull_back(Elem ext_x) const;
  // Throws InvalidArgument when ext_x is not in the image.
  Elem pull_back(Elem ext_x) const;

  // Sum of the conjugates x^{q^j}, j < m, pulled back to the base.
  Elem relative_trace(Elem ext_x) const;
  // Product of the conjugates x^{q^j}, j < m, pulled back to the base.
  Elem relative_norm(Elem ext_x) const;

  FieldElement embed(const FieldElement& x) const;
  FieldElement relative_trace(const FieldElement& x) const;
  FieldElement relative_norm(const FieldElement& x) const;

 private:
  TowerEmbedding() = default;

  FieldPtr base_;
  FieldPtr ext_;
  std::uint32_t m_ = 1;
  Elem root_image_ = 0;
  std::vector<Elem> embed_;
  std::vector<std::int32_t> pull_back_;
  std::vector<Elem> trace_;
  std::vector<Elem> norm_;
};

// Cached embedding between gf(p, e) and gf(p, e * m).
EmbeddingPtr embedding(std::uint32_t p, std::uint32_t e, std::uint32_t m);

// Discrete log of x with respect to the field's generator.
std::uint32_t discrete_log(const FiniteField& field, const FieldElement& x);

}  // namespace normtrace
