#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normtrace/gf.hpp"
#include "normtrace/matrix.hpp"
#include "normtrace/parallel.hpp"

namespace normtrace {

// One Wedderburn factor M_d(F_{q^n}).
struct Factor {
  std::uint32_t d = 1;
  std::uint32_t n = 1;

  friend bool operator==(const Factor&, const Factor&) = default;
};

// B = M_{d_1}(F_{q^{n_1}}) x ... x M_{d_k}(F_{q^{n_k}}) over F_q, q = p^e.
class AlgebraSpec {
 public:
  AlgebraSpec() = default;

  // Validates and computes the derived quantities. Degree n = 1 is rejected
  // unless allow_degree_one is set (smoke tests on F_q itself).
  static AlgebraSpec make(std::uint32_t p, std::uint32_t e, std::vector<Factor> factors,
                          bool allow_degree_one = false);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t k() const { return factors_.size(); }
  // n = sum d_i^2 n_i
  std::uint32_t n() const { return n_; }
  // m = sum d_i n_i
  std::uint32_t m() const { return m_; }
  std::uint32_t sum_d() const { return sum_d_; }
  // |B*| and |B|; 0 when the value does not fit in 64 bits.
  std::uint64_t unit_count() const { return unit_count_; }
  std::uint64_t cardinality() const { return cardinality_; }

  bool is_etale() const;
  bool is_split() const;
  bool is_field() const { return k() == 1 && factors_[0].d == 1; }

  FieldPtr base_field() const { return gf(p_, e_); }
  FieldPtr factor_field(std::size_t i) const { return gf(p_, e_ * factors_[i].n); }
  EmbeddingPtr factor_embedding(std::size_t i) const { return embedding(p_, e_, factors_[i].n); }

  // "M_2(F_4) x F_2 over F_2"
  std::string summary() const;
  // Canonical serialized form accepted by parse_spec.
  std::string to_json() const;

  friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.factors_ == b.factors_;
  }

 private:
  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<Factor> factors_;
  std::uint32_t n_ = 0;
  std::uint32_t m_ = 0;
  std::uint32_t sum_d_ = 0;
  std::uint64_t unit_count_ = 0;
  std::uint64_t cardinality_ = 0;
};

// The split algebra F_q^m companion of a spec.
AlgebraSpec split_companion(const AlgebraSpec& spec);

// Parses {"p": 2, "e": 1, "factors": [[2, 1]]}. Bare keys ({p:2, ...}) are
// accepted so that inline specs can be typed without shell quoting. Unknown
// keys are rejected.
AlgebraSpec parse_spec(std::string_view text, bool allow_degree_one = false);
AlgebraSpec load_spec_file(const std::string& path, bool allow_degree_one = false);

// One matrix per factor, entries in that factor's field.
struct AlgebraElement {
  std::vector<Matrix> parts;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

// Throws InvalidArgument unless x has the shape and entry ranges of spec.
void check_conforms(const AlgebraSpec& spec, const AlgebraElement& x);

// Parses a JSON list with one entry per factor; each entry is a list of rows
// or, for a 1x1 part, a bare integer. Entries are natural element codes.
AlgebraElement parse_element(const AlgebraSpec& spec, std::string_view text);
std::string format_element(const AlgebraSpec& spec, const AlgebraElement& x);

enum class TraceVariant {
  kReduced,                 // sum Tr(tr x_i), prod N(det x_i)
  kRegularRepresentation,   // sum d_i Tr(tr x_i), prod N(det x_i)^{d_i}
};

struct TraceNorm {
  Elem trace = 0;
  Elem norm = 0;
};

TraceNorm trace_norm(const AlgebraSpec& spec, const AlgebraElement& x,
                     TraceVariant variant = TraceVariant::kReduced);

bool is_unit(const AlgebraSpec& spec, const AlgebraElement& x);
bool is_regular(const AlgebraSpec& spec, const AlgebraElement& x);
AlgebraElement multiply(const AlgebraSpec& spec, const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement add(const AlgebraSpec& spec, const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement identity_element(const AlgebraSpec& spec);
// f(x) for f with coefficients in F_q, applied part by part.
AlgebraElement evaluate(const AlgebraSpec& spec, const Poly& f, const AlgebraElement& x);

enum class Domain { kAll, kUnits };

// Every matrix of one factor (or every invertible one), in enumeration
// order: row-major entries, first entry slowest, each entry by field rank.
// Alongside each matrix: its trace and norm contributions in F_q.
class FactorTable {
 public:
  static std::shared_ptr<const FactorTable> get(std::uint32_t p, std::uint32_t e, Factor factor, Domain domain);

  std::uint32_t dim() const { return d_; }
  Domain domain() const { return domain_; }
  const FiniteField& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const TowerEmbedding& embedding() const { return *emb_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(trace_.size()); }

  Matrix matrix(std::uint32_t i) const;
  Elem trace(std::uint32_t i) const { return trace_[i]; }
  Elem norm(std::uint32_t i) const { return norm_[i]; }
  // Index of a matrix in this table, or -1.
  std::int64_t find(const Matrix& m) const;

  // Unit tables only.
  std::uint32_t identity() const { return identity_; }
  std::uint32_t inverse(std::uint32_t i) const { return inverse_[i]; }
  std::uint32_t multiply(std::uint32_t i, std::uint32_t j) const;
  bool regular(std::uint32_t i) const { return regular_[i] != 0; }

 private:
  FactorTable() = default;

  std::uint64_t code(const Matrix& m) const;

  std::uint32_t d_ = 1;
  Domain domain_ = Domain::kUnits;
  FieldPtr field_;
  EmbeddingPtr emb_;
  std::vector<Elem> entries_;
  std::vector<Elem> trace_;
  std::vector<Elem> norm_;
  std::vector<std::int32_t> index_of_code_;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint8_t> regular_;
  std::vector<std::uint32_t> mul_table_;  // filled only for small groups
};

// Elements of B (or B*) as mixed-radix indices over the factor tables,
// factor 0 slowest.
class Enumerator {
 public:
  // Throws CapExceeded (with the cardinality) when the domain is larger
  // than max_elements.
  Enumerator(const AlgebraSpec& spec, Domain domain, std::uint64_t max_elements = kDefaultSummandCap);

  const AlgebraSpec& spec() const { return spec_; }
  std::uint64_t size() const { return size_; }
  const FactorTable& table(std::size_t i) const { return *tables_[i]; }
  std::size_t factor_count() const { return tables_.size(); }

  // Per-factor table indices of element `index`.
  void decode(std::uint64_t index, std::vector<std::uint32_t>& out) const;
  std::uint64_t encode(const std::vector<std::uint32_t>& parts) const;
  AlgebraElement element(std::uint64_t index) const;
  // Index of x in this enumeration, or -1 when x is not in the domain.
  std::int64_t find(const AlgebraElement& x) const;

  Elem trace(const std::vector<std::uint32_t>& parts) const;
  Elem norm(const std::vector<std::uint32_t>& parts) const;

  // fn(index, parts, trace, norm) for every index in range, in order.
  template <class Fn>
  void for_each(IndexRange range, Fn&& fn) const;

 private:
  AlgebraSpec spec_;
  Domain domain_;
  std::vector<std::shared_ptr<const FactorTable>> tables_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t size_ = 0;
};

template <class Fn>
void Enumerator::for_each(IndexRange range, Fn&& fn) const {
  if (range.size() == 0) return;
  const FiniteField& Fq = *spec_.base_field();
  std::vector<std::uint32_t> parts;
  decode(range.begin, parts);
  const std::size_t k = parts.size();
  for (std::uint64_t idx = range.begin; idx < range.end; ++idx) {
    Elem t = 0;
    Elem nm = 1;
    for (std::size_t i = 0; i < k; ++i) {
      t = Fq.add(t, tables_[i]->trace(parts[i]));
      nm = Fq.mul(nm, tables_[i]->norm(parts[i]));
    }
    fn(idx, parts, t, nm);
    // Increment the mixed-radix counter, last factor fastest.
    for (std::size_t i = k; i-- > 0;) {
      if (++parts[i] < tables_[i]->size()) break;
      parts[i] = 0;
    }
  }
}

}  // namespace normtrace
