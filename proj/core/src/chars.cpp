#include "normtrace/chars.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "normtrace/error.hpp"

namespace normtrace {

RootTable roots_of_unity(std::uint32_t n) {
  static std::mutex mu;
  static std::map<std::uint32_t, RootTable> cache;
  std::scoped_lock lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto table = std::make_shared<std::vector<std::complex<double>>>(n);
    for (std::uint32_t j = 0; j < n; ++j) {
      // Exact values on the axes keep trivial cases free of rounding noise.
      if (4 * std::uint64_t{j} % n == 0) {
        static constexpr std::complex<double> axes[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        (*table)[j] = axes[4 * std::uint64_t{j} / n];
      } else {
        (*table)[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
      }
    }
    slot = std::move(table);
  }
  return slot;
}

AdditiveCharacter::AdditiveCharacter(FieldPtr field, Elem twist)
    : field_(std::move(field)), twist_(twist), roots_(roots_of_unity(field_->characteristic())) {
  if (!field_->contains(twist_) || twist_ == 0) {
    throw InvalidArgument("additive character twist must be a nonzero element of " + field_->name());
  }
}

MultiplicativeCharacter::MultiplicativeCharacter(FieldPtr field, std::int64_t index)
    : field_(std::move(field)), roots_(roots_of_unity(field_->unit_count())) {
  const std::int64_t n = field_->unit_count();
  index_ = static_cast<std::uint32_t>(((index % n) + n) % n);
}

std::uint32_t MultiplicativeCharacter::order() const {
  const std::uint32_t n = field_->unit_count();
  return n / std::gcd(n, index_);
}

std::vector<MultiplicativeCharacter> multiplicative_characters(const FieldPtr& field) {
  std::vector<MultiplicativeCharacter> out;
  out.reserve(field->unit_count());
  for (std::uint32_t j = 0; j < field->unit_count(); ++j) out.emplace_back(field, j);
  return out;
}

SumValue gauss_sum(const MultiplicativeCharacter& chi, const AdditiveCharacter& psi) {
  if (chi.field().id() != psi.field().id()) {
    throw FieldMismatch("Gauss sum needs characters of one field, got " + chi.field().name() + " and " +
                        psi.field().name());
  }
  PairwiseAccumulator acc;
  for (Elem x = 1; x < chi.field().size(); ++x) acc.add(psi(x) * chi(x));
  return acc.value();
}

LiftedAdditive::LiftedAdditive(AdditiveCharacter base, EmbeddingPtr emb) : base_(std::move(base)), emb_(std::move(emb)) {
  if (base_.field().id() != emb_->base().id()) {
    throw FieldMismatch("additive character lives on " + base_.field().name() + " but the embedding starts at " +
                        emb_->base().name());
  }
}

AdditiveCharacter LiftedAdditive::as_character() const {
  return AdditiveCharacter(emb_->extension_ptr(), emb_->embed(base_.twist()));
}

LiftedMultiplicative::LiftedMultiplicative(MultiplicativeCharacter base, EmbeddingPtr emb)
    : base_(std::move(base)), emb_(std::move(emb)) {
  if (base_.field().id() != emb_->base().id()) {
    throw FieldMismatch("multiplicative character lives on " + base_.field().name() +
                        " but the embedding starts at " + emb_->base().name());
  }
}

MultiplicativeCharacter LiftedMultiplicative::as_character() const {
  const FiniteField& E = emb_->extension();
  const FiniteField& K = emb_->base();
  // N(g_E) = g_K^s, so chi_j(N(g_E^t)) = exp(2 pi i j s t / (q - 1)).
  const std::uint64_t s = K.log(emb_->relative_norm(E.generator()));
  const std::uint64_t scale = E.unit_count() / K.unit_count();
  const std::uint64_t idx = (std::uint64_t{base_.index()} * s % K.unit_count()) * scale;
  return MultiplicativeCharacter(emb_->extension_ptr(), static_cast<std::int64_t>(idx));
}

LiftedCharacters lift_characters(const MultiplicativeCharacter& chi, const AdditiveCharacter& psi,
                                 const EmbeddingPtr& emb) {
  return {LiftedMultiplicative(chi, emb), LiftedAdditive(psi, emb)};
}

SumValue gauss_sum(const LiftedCharacters& lifted) {
  const FiniteField& E = lifted.psi.embedding().extension();
  PairwiseAccumulator acc;
  for (Elem x = 1; x < E.size(); ++x) acc.add(lifted.psi(x) * lifted.chi(x));
  return acc.value();
}

HasseDavenportCheck hasse_davenport_check(const MultiplicativeCharacter& chi, const AdditiveCharacter& psi,
                                          unsigned m) {
  if (m == 0) throw InvalidArgument("extension degree m must be at least 1");
  const FiniteField& K = chi.field();
  const auto emb = embedding(K.characteristic(), K.degree(), m);
  const auto lifted = lift_characters(chi, psi, emb);
  const SumValue g = gauss_sum(chi, psi);
  std::complex<double> power{1.0, 0.0};
  for (unsigned i = 0; i < m; ++i) power *= g.complex();
  const double sign = (m - 1) % 2 == 0 ? 1.0 : -1.0;
  return {gauss_sum(lifted), SumValue(sign * power)};
}

SumValue hasse_davenport_unpowered(const MultiplicativeCharacter& chi, const AdditiveCharacter& psi, unsigned m) {
  const double sign = (m - 1) % 2 == 0 ? 1.0 : -1.0;
  return sign * gauss_sum(chi, psi);
}

}  // namespace normtrace
