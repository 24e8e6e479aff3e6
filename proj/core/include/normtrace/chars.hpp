#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "normtrace/gf.hpp"
#include "normtrace/sum_value.hpp"

namespace normtrace {

using RootTable = std::shared_ptr<const std::vector<std::complex<double>>>;

// exp(2 pi i j / n) for j in [0, n), cached per n.
RootTable roots_of_unity(std::uint32_t n);

// psi_c(x) = exp(2 pi i Tr_{F_q/F_p}(c x) / p) for a nonzero twist c.
class AdditiveCharacter {
 public:
  explicit AdditiveCharacter(FieldPtr field, Elem twist = 1);

  const FiniteField& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  Elem twist() const { return twist_; }

  // Exponent j in [0, p) with psi(x) = exp(2 pi i j / p).
  std::uint32_t phase(Elem x) const { return field_->absolute_trace(field_->mul(twist_, x)); }
  std::complex<double> operator()(Elem x) const { return (*roots_)[phase(x)]; }

 private:
  FieldPtr field_;
  Elem twist_;
  RootTable roots_;
};

// chi_j(x) = exp(2 pi i j log(x) / (q - 1)), chi_j(0) = 0.
class MultiplicativeCharacter {
 public:
  MultiplicativeCharacter(FieldPtr field, std::int64_t index);

  const FiniteField& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint32_t index() const { return index_; }
  bool is_trivial() const { return index_ == 0; }
  // Order of chi in the character group.
  std::uint32_t order() const;

  MultiplicativeCharacter conjugate() const { return {field_, -static_cast<std::int64_t>(index_)}; }
  MultiplicativeCharacter power(std::int64_t e) const { return {field_, static_cast<std::int64_t>(index_) * e}; }

  std::complex<double> operator()(Elem x) const {
    if (x == 0) return {0.0, 0.0};
    const std::uint64_t t = (std::uint64_t{index_} * field_->log_unchecked(x)) % field_->unit_count();
    return (*roots_)[t];
  }

 private:
  FieldPtr field_;
  std::uint32_t index_;
  RootTable roots_;
};

// chi_0, ..., chi_{q-2} in index order.
std::vector<MultiplicativeCharacter> multiplicative_characters(const FieldPtr& field);

// G(chi, psi) = sum over x != 0 of psi(x) chi(x).
SumValue gauss_sum(const MultiplicativeCharacter& chi, const AdditiveCharacter& psi);

// psi o Tr on the extension of an embedding.
class LiftedAdditive {
 public:
  LiftedAdditive(AdditiveCharacter base, EmbeddingPtr emb);

  std::complex<double> operator()(Elem ext_x) const { return base_(emb_->relative_trace(ext_x)); }
  const TowerEmbedding& embedding() const { return *emb_; }
  const AdditiveCharacter& base() const { return base_; }
  // The same function written as a twisted additive character of the
  // extension: psi_c o Tr = psi'_{emb(c)}.
  AdditiveCharacter as_character() const;

 private:
  AdditiveCharacter base_;
  EmbeddingPtr emb_;
};

// chi o N on the extension of an embedding.
class LiftedMultiplicative {
 public:
  LiftedMultiplicative(MultiplicativeCharacter base, EmbeddingPtr emb);

  std::complex<double> operator()(Elem ext_x) const {
    if (ext_x == 0) return {0.0, 0.0};
    return base_(emb_->relative_norm(ext_x));
  }
  const TowerEmbedding& embedding() const { return *emb_; }
  const MultiplicativeCharacter& base() const { return base_; }
  // The same function as an indexed character of the extension.
  MultiplicativeCharacter as_character() const;

 private:
  MultiplicativeCharacter base_;
  EmbeddingPtr emb_;
};

struct LiftedCharacters {
  LiftedMultiplicative chi;
  LiftedAdditive psi;
};

// Throws FieldMismatch unless both characters live on emb's base field.
LiftedCharacters lift_characters(const MultiplicativeCharacter& chi, const AdditiveCharacter& psi,
                                 const EmbeddingPtr& emb);

// Gauss sum of the lifted pair by direct summation over the extension.
SumValue gauss_sum(const LiftedCharacters& lifted);

struct HasseDavenportCheck {
  SumValue lifted_sum;  // G(chi o N, psi o Tr) summed over F_{q^m}^*
  SumValue predicted;   // (-1)^{m-1} G(chi, psi)^m
  bool agrees(double rel_tol = kDefaultTolerance) const { return lifted_sum.approx_equal(predicted, rel_tol); }
};

HasseDavenportCheck hasse_davenport_check(const MultiplicativeCharacter& chi, const AdditiveCharacter& psi,
                                          unsigned m);

// (-1)^{m-1} G(chi, psi) without the m-th power. Kept only to show that this
// variant disagrees with the lifted sum.
SumValue hasse_davenport_unpowered(const MultiplicativeCharacter& chi, const AdditiveCharacter& psi, unsigned m);

}  // namespace normtrace
