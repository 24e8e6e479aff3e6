#include "normtrace/algebra.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "normtrace/error.hpp"

namespace normtrace {

namespace {

using json = nlohmann::json;

// Product with overflow reported as 0.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  unsigned __int128 v = static_cast<unsigned __int128>(a) * b;
  if (v > UINT64_MAX) return 0;
  return static_cast<std::uint64_t>(v);
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    v = checked_mul(v, base);
    if (v == 0) return 0;
  }
  return v;
}

std::uint32_t require_u32(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ParseError("spec field '" + field + "' must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < 0 || x > static_cast<std::int64_t>(UINT32_MAX)) {
    throw ParseError("spec field '" + field + "' is out of range: " + std::to_string(x));
  }
  return static_cast<std::uint32_t>(x);
}

std::string relax(std::string_view text) {
  // Quote bare object keys and accept (d, n) tuples for readability.
  static const std::regex bare_key(R"(([\{,]\s*)([A-Za-z_][A-Za-z0-9_]*)\s*:)");
  std::string s(text);
  for (char& c : s) {
    if (c == '(') c = '[';
    if (c == ')') c = ']';
  }
  return std::regex_replace(s, bare_key, "$1\"$2\":");
}

json parse_relaxed(std::string_view text, const std::string& what) {
  try {
    return json::parse(relax(text));
  } catch (const json::parse_error& e) {
    throw ParseError("malformed " + what + ": " + e.what());
  }
}

}  // namespace

AlgebraSpec AlgebraSpec::make(std::uint32_t p, std::uint32_t e, std::vector<Factor> factors, bool allow_degree_one) {
  if (!is_prime(p)) throw InvalidArgument("spec field 'p' must be prime, got " + std::to_string(p));
  if (e == 0) throw InvalidArgument("spec field 'e' must be at least 1");
  if (factors.empty()) throw InvalidArgument("spec field 'factors' must not be empty");
  AlgebraSpec s;
  s.p_ = p;
  s.e_ = e;
  const std::uint64_t q = checked_pow(p, e);
  if (q == 0 || q > kFieldTableCap) {
    throw CapExceeded("base field size p^e exceeds " + std::to_string(kFieldTableCap) + "; reduce parameters");
  }
  s.q_ = static_cast<std::uint32_t>(q);
  std::uint64_t units = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto [d, n] = factors[i];
    if (d == 0 || n == 0) {
      throw InvalidArgument("spec field 'factors[" + std::to_string(i) + "]' needs d >= 1 and n >= 1");
    }
    s.n_ += d * d * n;
    s.m_ += d * n;
    s.sum_d_ += d;
    const std::uint64_t Q = checked_pow(q, n);
    const std::uint64_t Qd = checked_pow(Q, d);
    for (std::uint32_t j = 0; j < d; ++j) {
      const std::uint64_t Qj = checked_pow(Q, j);
      units = (Qd == 0 || Qj == 0) ? 0 : checked_mul(units, Qd - Qj);
    }
  }
  if (s.n_ < 2 && !allow_degree_one) {
    throw InvalidArgument("algebra degree n = sum d_i^2 n_i must be at least 2, got " + std::to_string(s.n_) +
                          " (allow-degree-one accepts n = 1)");
  }
  s.factors_ = std::move(factors);
  s.unit_count_ = units;
  s.cardinality_ = checked_pow(q, s.n_);
  return s;
}

bool AlgebraSpec::is_etale() const {
  for (const auto& f : factors_) {
    if (f.d != 1) return false;
  }
  return true;
}

bool AlgebraSpec::is_split() const {
  for (const auto& f : factors_) {
    if (f.d != 1 || f.n != 1) return false;
  }
  return true;
}

std::string AlgebraSpec::summary() const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += " x ";
    const std::string field = "F_" + std::to_string(checked_pow(q_, factors_[i].n));
    out += factors_[i].d == 1 ? field : "M_" + std::to_string(factors_[i].d) + "(" + field + ")";
  }
  return out + " over F_" + std::to_string(q_);
}

std::string AlgebraSpec::to_json() const {
  json j;
  j["p"] = p_;
  j["e"] = e_;
  j["factors"] = json::array();
  for (const auto& f : factors_) j["factors"].push_back({f.d, f.n});
  return j.dump();
}

AlgebraSpec split_companion(const AlgebraSpec& spec) {
  return AlgebraSpec::make(spec.p(), spec.e(), std::vector<Factor>(spec.m(), Factor{1, 1}), true);
}

AlgebraSpec parse_spec(std::string_view text, bool allow_degree_one) {
  const json j = parse_relaxed(text, "spec");
  if (!j.is_object()) throw ParseError("spec must be an object with fields p, e, factors");
  for (const auto& [key, _] : j.items()) {
    if (key != "p" && key != "e" && key != "factors") throw ParseError("unknown spec field '" + key + "'");
  }
  for (const char* key : {"p", "e", "factors"}) {
    if (!j.contains(key)) throw ParseError(std::string("spec field '") + key + "' is missing");
  }
  const auto p = require_u32(j["p"], "p");
  const auto e = require_u32(j["e"], "e");
  const json& fs = j["factors"];
  if (!fs.is_array()) throw ParseError("spec field 'factors' must be a list of [d, n] pairs");
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string name = "factors[" + std::to_string(i) + "]";
    if (!fs[i].is_array() || fs[i].size() != 2) throw ParseError("spec field '" + name + "' must be a [d, n] pair");
    factors.push_back({require_u32(fs[i][0], name + ".d"), require_u32(fs[i][1], name + ".n")});
  }
  return AlgebraSpec::make(p, e, std::move(factors), allow_degree_one);
}

AlgebraSpec load_spec_file(const std::string& path, bool allow_degree_one) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_spec(buf.str(), allow_degree_one);
  } catch (const InvalidArgument& err) {
    throw ParseError(path + ": " + err.what());
  }
}

void check_conforms(const AlgebraSpec& spec, const AlgebraElement& x) {
  if (x.parts.size() != spec.k()) {
    throw InvalidArgument("element has " + std::to_string(x.parts.size()) + " parts but the algebra has " +
                          std::to_string(spec.k()) + " factors");
  }
  for (std::size_t i = 0; i < spec.k(); ++i) {
    const Matrix& m = x.parts[i];
    if (m.dim != spec.factors()[i].d || m.entries.size() != std::size_t{m.dim} * m.dim) {
      throw InvalidArgument("part " + std::to_string(i) + " must be " + std::to_string(spec.factors()[i].d) + "x" +
                            std::to_string(spec.factors()[i].d));
    }
    const auto F = spec.factor_field(i);
    for (Elem v : m.entries) {
      if (!F->contains(v)) {
        throw InvalidArgument("part " + std::to_string(i) + " has entry " + std::to_string(v) + " outside " + F->name());
      }
    }
  }
}

AlgebraElement parse_element(const AlgebraSpec& spec, std::string_view text) {
  const json j = parse_relaxed(text, "element");
  if (!j.is_array()) throw ParseError("element must be a list with one entry per factor");
  AlgebraElement x;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::uint32_t d = i < spec.k() ? spec.factors()[i].d : 1;
    const std::string name = "part " + std::to_string(i);
    if (j[i].is_number_integer()) {
      if (d != 1) throw ParseError(name + " must be a list of " + std::to_string(d) + " rows");
      x.parts.emplace_back(1, std::vector<Elem>{require_u32(j[i], name)});
      continue;
    }
    if (!j[i].is_array() || j[i].size() != d) throw ParseError(name + " must be a list of " + std::to_string(d) + " rows");
    std::vector<Elem> entries;
    for (const auto& row : j[i]) {
      if (!row.is_array() || row.size() != d) throw ParseError(name + " rows must have " + std::to_string(d) + " entries");
      for (const auto& v : row) entries.push_back(require_u32(v, name));
    }
    x.parts.emplace_back(d, std::move(entries));
  }
  check_conforms(spec, x);
  return x;
}

std::string format_element(const AlgebraSpec& spec, const AlgebraElement& x) {
  json j = json::array();
  for (std::size_t i = 0; i < x.parts.size(); ++i) {
    const Matrix& m = x.parts[i];
    if (i < spec.k() && spec.factors()[i].d == 1 && m.dim == 1) {
      j.push_back(m.entries[0]);
      continue;
    }
    json rows = json::array();
    for (unsigned r = 0; r < m.dim; ++r) {
      json row = json::array();
      for (unsigned c = 0; c < m.dim; ++c) row.push_back(m.at(r, c));
      rows.push_back(row);
    }
    j.push_back(rows);
  }
  return j.dump();
}

TraceNorm trace_norm(const AlgebraSpec& spec, const AlgebraElement& x, TraceVariant variant) {
  check_conforms(spec, x);
  const auto Fq = spec.base_field();
  TraceNorm out{0, 1};
  for (std::size_t i = 0; i < spec.k(); ++i) {
    const auto emb = spec.factor_embedding(i);
    const FiniteField& F = emb->extension();
    Elem t = emb->relative_trace(mat::trace(F, x.parts[i]));
    Elem nm = emb->relative_norm(mat::det(F, x.parts[i]));
    if (variant == TraceVariant::kRegularRepresentation) {
      const std::uint32_t d = spec.factors()[i].d;
      Elem scaled = 0;
      for (std::uint32_t j = 0; j < d; ++j) scaled = Fq->add(scaled, t);
      t = scaled;
      nm = Fq->pow(nm, d);
    }
    out.trace = Fq->add(out.trace, t);
    out.norm = Fq->mul(out.norm, nm);
  }
  return out;
}

bool is_unit(const AlgebraSpec& spec, const AlgebraElement& x) {
  check_conforms(spec, x);
  for (std::size_t i = 0; i < spec.k(); ++i) {
    if (mat::det(*spec.factor_field(i), x.parts[i]) == 0) return false;
  }
  return true;
}

bool is_regular(const AlgebraSpec& spec, const AlgebraElement& x) {
  check_conforms(spec, x);
  for (std::size_t i = 0; i < spec.k(); ++i) {
    if (!is_regular(*spec.factor_field(i), x.parts[i])) return false;
  }
  return true;
}

AlgebraElement multiply(const AlgebraSpec& spec, const AlgebraElement& x, const AlgebraElement& y) {
  check_conforms(spec, x);
  check_conforms(spec, y);
  AlgebraElement out;
  for (std::size_t i = 0; i < spec.k(); ++i) out.parts.push_back(mat::mul(*spec.factor_field(i), x.parts[i], y.parts[i]));
  return out;
}

AlgebraElement add(const AlgebraSpec& spec, const AlgebraElement& x, const AlgebraElement& y) {
  check_conforms(spec, x);
  check_conforms(spec, y);
  AlgebraElement out;
  for (std::size_t i = 0; i < spec.k(); ++i) out.parts.push_back(mat::add(*spec.factor_field(i), x.parts[i], y.parts[i]));
  return out;
}

AlgebraElement identity_element(const AlgebraSpec& spec) {
  AlgebraElement out;
  for (const auto& f : spec.factors()) out.parts.push_back(mat::identity(f.d));
  return out;
}

AlgebraElement evaluate(const AlgebraSpec& spec, const Poly& f, const AlgebraElement& x) {
  check_conforms(spec, x);
  AlgebraElement out;
  for (std::size_t i = 0; i < spec.k(); ++i) {
    const auto emb = spec.factor_embedding(i);
    Poly lifted;
    for (Elem c : f) lifted.push_back(emb->embed(c));
    out.parts.push_back(mat::evaluate(emb->extension(), lifted, x.parts[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// FactorTable

namespace {

constexpr std::uint64_t kFactorCodeCap = std::uint64_t{1} << 24;
constexpr std::uint32_t kMulTableMaxUnits = 1024;

}  // namespace

std::shared_ptr<const FactorTable> FactorTable::get(std::uint32_t p, std::uint32_t e, Factor factor, Domain domain) {
  using Key = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t, int>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const FactorTable>> cache;
  const Key key{p, e, factor.d, factor.n, static_cast<int>(domain)};
  {
    std::scoped_lock lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  auto emb = normtrace::embedding(p, e, factor.n);
  const FiniteField& F = emb->extension();
  const std::uint32_t d = factor.d;
  const std::uint64_t Q = F.size();
  const std::uint64_t codes = checked_pow(Q, std::uint64_t{d} * d);
  if (codes == 0 || codes > kFactorCodeCap) {
    throw CapExceeded("M_" + std::to_string(d) + "(" + F.name() + ") has more than " + std::to_string(kFactorCodeCap) +
                      " elements; reduce parameters");
  }
  if (d > kMaxMatrixDim) {
    throw CapExceeded("matrix dimension " + std::to_string(d) + " exceeds " + std::to_string(kMaxMatrixDim));
  }

  std::shared_ptr<FactorTable> t(new FactorTable());
  t->d_ = d;
  t->domain_ = domain;
  t->field_ = emb->extension_ptr();
  t->emb_ = emb;
  t->index_of_code_.assign(codes, -1);
  const std::size_t dd = std::size_t{d} * d;
  Matrix m(d);
  for (std::uint64_t c = 0; c < codes; ++c) {
    std::uint64_t rest = c;
    for (std::size_t j = dd; j-- > 0;) {
      m.entries[j] = F.at_rank(static_cast<std::uint32_t>(rest % Q));
      rest /= Q;
    }
    const Elem det = mat::det(F, m);
    if (domain == Domain::kUnits && det == 0) continue;
    t->index_of_code_[c] = static_cast<std::int32_t>(t->trace_.size());
    t->entries_.insert(t->entries_.end(), m.entries.begin(), m.entries.end());
    t->trace_.push_back(emb->relative_trace(mat::trace(F, m)));
    t->norm_.push_back(emb->relative_norm(det));
  }

  if (domain == Domain::kUnits) {
    const std::uint32_t units = t->size();
    t->identity_ = static_cast<std::uint32_t>(t->find(mat::identity(d)));
    t->inverse_.resize(units);
    t->regular_.resize(units);
    for (std::uint32_t i = 0; i < units; ++i) {
      const Matrix mi = t->matrix(i);
      t->inverse_[i] = static_cast<std::uint32_t>(t->find(*mat::inverse(F, mi)));
      t->regular_[i] = d == 1 ? 1 : static_cast<std::uint8_t>(is_regular(F, mi));
    }
    if (units <= kMulTableMaxUnits) {
      t->mul_table_.resize(std::size_t{units} * units);
      for (std::uint32_t i = 0; i < units; ++i) {
        const Matrix mi = t->matrix(i);
        for (std::uint32_t j = 0; j < units; ++j) {
          t->mul_table_[std::size_t{i} * units + j] = static_cast<std::uint32_t>(t->find(mat::mul(F, mi, t->matrix(j))));
        }
      }
    }
  }

  std::scoped_lock lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = std::move(t);
  return slot;
}

Matrix FactorTable::matrix(std::uint32_t i) const {
  const std::size_t dd = std::size_t{d_} * d_;
  return Matrix(d_, std::vector<Elem>(entries_.begin() + i * dd, entries_.begin() + (i + 1) * dd));
}

std::uint64_t FactorTable::code(const Matrix& m) const {
  std::uint64_t c = 0;
  for (Elem v : m.entries) c = c * field_->size() + field_->rank(v);
  return c;
}

std::int64_t FactorTable::find(const Matrix& m) const {
  if (m.dim != d_) return -1;
  for (Elem v : m.entries) {
    if (!field_->contains(v)) return -1;
  }
  return index_of_code_[code(m)];
}

std::uint32_t FactorTable::multiply(std::uint32_t i, std::uint32_t j) const {
  if (!mul_table_.empty()) return mul_table_[std::size_t{i} * size() + j];
  if (d_ == 1) return static_cast<std::uint32_t>(index_of_code_[field_->rank(field_->mul(entries_[i], entries_[j]))]);
  return static_cast<std::uint32_t>(find(mat::mul(*field_, matrix(i), matrix(j))));
}

// ---------------------------------------------------------------------------
// Enumerator

Enumerator::Enumerator(const AlgebraSpec& spec, Domain domain, std::uint64_t max_elements)
    : spec_(spec), domain_(domain) {
  const std::uint64_t expected = domain == Domain::kUnits ? spec.unit_count() : spec.cardinality();
  const char* what = domain == Domain::kUnits ? "|B*|" : "|B|";
  if (expected == 0 || expected > max_elements) {
    throw CapExceeded(std::string(what) + " = " + (expected ? std::to_string(expected) : std::string("> 2^64")) +
                      " for " + spec.summary() + " exceeds the enumeration cap " + std::to_string(max_elements) +
                      "; reduce parameters or raise --max-summands");
  }
  for (const auto& f : spec.factors()) tables_.push_back(FactorTable::get(spec.p(), spec.e(), f, domain));
  strides_.assign(tables_.size(), 1);
  size_ = 1;
  for (std::size_t i = tables_.size(); i-- > 0;) {
    strides_[i] = size_;
    size_ *= tables_[i]->size();
  }
  if (size_ != expected) throw Error("enumerated cardinality disagrees with the spec for " + spec.summary());
}

void Enumerator::decode(std::uint64_t index, std::vector<std::uint32_t>& out) const {
  out.resize(tables_.size());
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    out[i] = static_cast<std::uint32_t>(index / strides_[i]);
    index %= strides_[i];
  }
}

std::uint64_t Enumerator::encode(const std::vector<std::uint32_t>& parts) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < tables_.size(); ++i) idx += parts[i] * strides_[i];
  return idx;
}

AlgebraElement Enumerator::element(std::uint64_t index) const {
  std::vector<std::uint32_t> parts;
  decode(index, parts);
  AlgebraElement x;
  for (std::size_t i = 0; i < parts.size(); ++i) x.parts.push_back(tables_[i]->matrix(parts[i]));
  return x;
}

std::int64_t Enumerator::find(const AlgebraElement& x) const {
  if (x.parts.size() != tables_.size()) return -1;
  std::vector<std::uint32_t> parts;
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    const std::int64_t j = tables_[i]->find(x.parts[i]);
    if (j < 0) return -1;
    parts.push_back(static_cast<std::uint32_t>(j));
  }
  return static_cast<std::int64_t>(encode(parts));
}

Elem Enumerator::trace(const std::vector<std::uint32_t>& parts) const {
  const auto Fq = spec_.base_field();
  Elem t = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) t = Fq->add(t, tables_[i]->trace(parts[i]));
  return t;
}

Elem Enumerator::norm(const std::vector<std::uint32_t>& parts) const {
  const auto Fq = spec_.base_field();
  Elem nm = 1;
  for (std::size_t i = 0; i < parts.size(); ++i) nm = Fq->mul(nm, tables_[i]->norm(parts[i]));
  return nm;
}

}  // namespace normtrace
