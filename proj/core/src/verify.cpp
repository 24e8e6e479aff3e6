#include "normtrace/verify.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "normtrace/chars.hpp"
#include "normtrace/counts.hpp"
#include "normtrace/error.hpp"
#include "normtrace/sums.hpp"

namespace normtrace {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::string_view kStatusNames[] = {"pass",     "fail",     "conjecture-violation", "known-paper-mismatch",
                                             "observed", "skipped"};

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

double parse_double(std::string_view s, std::string_view column) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError("column " + std::string(column) + ": '" + std::string(s) + "' is not a number");
  }
  return v;
}

// Builds records for one spec and one suite family.
class Recorder {
 public:
  Recorder(const AlgebraSpec& spec, const VerifyOptions& opts) : spec_(spec.summary()), tol_(opts.tolerance) {}

  Record base(std::string check, std::string a, std::string b, std::string r) const {
    Record rec;
    rec.suite = std::move(check);
    rec.spec = spec_;
    rec.a = std::move(a);
    rec.b = std::move(b);
    rec.r = std::move(r);
    return rec;
  }

  // |value - main| against an exact bound.
  void bound(std::string check, std::string a, std::string b, std::string r, std::int64_t value,
             const Rational& main, const QuadraticSurd& bnd, Status on_violation = Status::kFail) {
    Record rec = base(std::move(check), std::move(a), std::move(b), std::move(r));
    const Rational err = (Rational(value) - main).abs();
    rec.value = std::to_string(value);
    rec.main_term = main.to_double();
    rec.error = err.to_double();
    rec.bound = bnd.to_double();
    rec.slack = rec.bound - rec.error;
    rec.status = bnd.bounds(err) ? Status::kPass : on_violation;
    records.push_back(std::move(rec));
  }

  // lhs == rhs exactly.
  void exact(std::string check, std::string a, std::string b, std::string r, const Rational& lhs,
             const Rational& rhs, Status on_violation = Status::kFail) {
    Record rec = base(std::move(check), std::move(a), std::move(b), std::move(r));
    const Rational err = (lhs - rhs).abs();
    rec.value = lhs.to_string();
    rec.main_term = rhs.to_double();
    rec.error = err.to_double();
    rec.slack = -rec.error;
    rec.status = err == Rational(0) ? Status::kPass : on_violation;
    records.push_back(std::move(rec));
  }

  // |lhs - rhs| within the relative tolerance.
  void numeric(std::string check, std::string a, std::string b, std::string r, const SumValue& lhs,
               const SumValue& rhs) {
    Record rec = base(std::move(check), std::move(a), std::move(b), std::move(r));
    rec.value = lhs.to_string() + " vs " + rhs.to_string();
    rec.error = distance(lhs, rhs);
    rec.bound = tol_ * (1.0 + std::max(lhs.magnitude(), rhs.magnitude()));
    rec.slack = rec.bound - rec.error;
    rec.status = rec.error <= rec.bound ? Status::kPass : Status::kFail;
    records.push_back(std::move(rec));
  }

  // |sum| against a bound, with the float tolerance on the bound side.
  void sum_bound(std::string check, std::string a, std::string b, std::string r, const SumValue& sum,
                 const QuadraticSurd& bnd, Status on_violation = Status::kFail) {
    Record rec = base(std::move(check), std::move(a), std::move(b), std::move(r));
    rec.value = sum.to_string();
    rec.error = sum.magnitude();
    rec.bound = bnd.to_double();
    rec.slack = rec.bound - rec.error;
    rec.status = rec.error <= rec.bound + tol_ * (1.0 + rec.bound) ? Status::kPass : on_violation;
    records.push_back(std::move(rec));
  }

  void skipped(std::string check, std::string r, const std::string& why) {
    Record rec = base(std::move(check), "", "", std::move(r));
    rec.value = why;
    rec.status = Status::kSkipped;
    records.push_back(std::move(rec));
  }

  std::vector<Record> records;

 private:
  std::string spec_;
  double tol_;
};

std::string str(std::uint64_t v) { return std::to_string(v); }

AdditiveCharacter base_psi(const AlgebraSpec& spec, const VerifyOptions& opts) {
  if (opts.psi_twist == 0 || opts.psi_twist >= spec.q()) {
    throw InvalidArgument("psi-twist must be a nonzero element of F_" + std::to_string(spec.q()));
  }
  return AdditiveCharacter(spec.base_field(), opts.psi_twist);
}

Report finish(std::string name, Recorder& rec, Clock::time_point start, std::vector<std::string> notes = {}) {
  Report out;
  out.name = std::move(name);
  out.notes = std::move(notes);
  out.records = std::move(rec.records);
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace

std::string_view to_string(Status s) { return kStatusNames[static_cast<int>(s)]; }

Status parse_status(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kStatusNames); ++i) {
    if (kStatusNames[i] == s) return static_cast<Status>(i);
  }
  throw ParseError("unknown status '" + std::string(s) + "'");
}

Totals Report::totals() const {
  Totals t;
  for (const auto& r : records) {
    switch (r.status) {
      case Status::kPass: ++t.pass; break;
      case Status::kFail: ++t.fail; break;
      case Status::kConjectureViolation: ++t.conjecture_violation; break;
      case Status::kKnownPaperMismatch: ++t.known_paper_mismatch; break;
      case Status::kObserved: ++t.observed; break;
      case Status::kSkipped: ++t.skipped; break;
    }
  }
  return t;
}

const Record* Report::max_ratio_record() const {
  const Record* best = nullptr;
  for (const auto& r : records) {
    if (r.bound <= 0.0 || r.value.find(" vs ") != std::string::npos) continue;
    if (r.status != Status::kPass && r.status != Status::kFail) continue;
    if (!best || r.error / r.bound > best->error / best->bound) best = &r;
  }
  return best;
}

std::optional<double> Report::max_ratio() const {
  const Record* r = max_ratio_record();
  if (!r) return std::nullopt;
  return r->error / r->bound;
}

void Report::append(Report other) {
  notes.insert(notes.end(), std::make_move_iterator(other.notes.begin()), std::make_move_iterator(other.notes.end()));
  records.insert(records.end(), std::make_move_iterator(other.records.begin()),
                 std::make_move_iterator(other.records.end()));
  seconds += other.seconds;
}

Report verify_norm_trace(const AlgebraSpec& spec, const VerifyOptions& opts) {
  const auto start = Clock::now();
  const auto psi = base_psi(spec, opts);
  Recorder rec(spec, opts);
  const TraceNormTable units = trace_norm_table(spec, Domain::kUnits, opts.exec);
  const std::int64_t q = spec.q();
  const std::int64_t n = spec.n();
  const Rational main = norm_trace_main_term(spec);
  const Rational simple_main = norm_trace_simple_main_term(spec);
  const auto main_bound = norm_trace_bound(spec);
  const auto simple_bound = norm_trace_simple_bound(spec);
  const auto zero_bound = norm_trace_zero_bound(spec);
  const auto elem_bound = norm_trace_elementary_bound(spec);
  const Rational field_main(ipow(q, spec.n()) - 1, q * (q - 1));
  const Rational improved_main(ipow(q, spec.n() - 1) - 1, q - 1);
  const Rational split_main(ipow(q - 1, spec.n() - 1) + (n % 2 == 0 ? 1 : -1), q);
  const auto n_bound = QuadraticSurd::power(n, q, n - 2);
  const auto n1_bound = QuadraticSurd::power(n - 1, q, n - 2);

  for (Elem a = 0; a < spec.q(); ++a) {
    for (Elem b = 1; b < spec.q(); ++b) {
      const auto c = count_norm_trace(spec, a, b, CountMethod::kBoth, opts.exec, &units);
      const std::int64_t N = *c.brute;
      const std::string sa = str(a), sb = str(b);
      rec.exact("norm-trace.formula", sa, sb, "", Rational(N), Rational(*c.formula));
      rec.bound("norm-trace.main-bound", sa, sb, "", N, main, main_bound);
      rec.bound("norm-trace.simple-bound", sa, sb, "", N, simple_main, simple_bound);
      if (a == 0) {
        rec.bound("norm-trace.zero-bound", sa, sb, "", N, main, zero_bound);
      } else {
        rec.bound("norm-trace.elementary-bound", sa, sb, "", N, simple_main, elem_bound);
      }
      if (spec.is_field()) {
        rec.bound("norm-trace.field-estimate", sa, sb, "", N, field_main, n_bound);
        rec.bound("norm-trace.improved-field-estimate", sa, sb, "", N, improved_main, n1_bound);
      }
      if (spec.is_split()) rec.bound("norm-trace.split-estimate", sa, sb, "", N, split_main, n1_bound);
    }
  }
  const auto ids = identity_suite(spec, psi, opts.exec);
  for (const auto& id : ids.exact) rec.exact("norm-trace." + id.name, str(id.a), str(id.b), "", id.lhs, id.rhs);
  return finish("norm-trace", rec, start);
}

Report verify_units(const AlgebraSpec& spec, const VerifyOptions& opts) {
  const auto start = Clock::now();
  const auto psi = base_psi(spec, opts);
  Recorder rec(spec, opts);
  const TraceNormTable units = trace_norm_table(spec, Domain::kUnits, opts.exec);
  const TraceNormTable all = trace_norm_table(spec, Domain::kAll, opts.exec);
  for (Elem a = 0; a < spec.q(); ++a) {
    const auto c = count_trace_units(spec, a, CountMethod::kBoth, opts.exec, &units);
    rec.exact("units.trace-count", str(a), "", "", Rational(*c.brute), Rational(*c.formula));
  }
  const auto full = full_unit_sum(spec, psi, opts.exec);
  rec.numeric("units.full-sum", "", "", "", full.direct, SumValue(static_cast<double>(full.closed)));
  for (Elem a = 0; a < spec.q(); ++a) {
    const auto c = count_norm_zero(spec, a, CountMethod::kBoth, opts.exec, &all);
    rec.exact("units.norm-zero", str(a), "0", "", Rational(*c.brute), Rational(*c.formula));
    rec.exact("units.norm-zero-inclusion-exclusion", str(a), "0", "", Rational(*c.brute), *c.reference,
              spec.is_etale() ? Status::kFail : Status::kKnownPaperMismatch);
  }
  return finish("units", rec, start);
}

Report verify_kloosterman(const AlgebraSpec& spec, const VerifyOptions& opts) {
  const auto start = Clock::now();
  const auto psi = base_psi(spec, opts);
  Recorder rec(spec, opts);
  const auto direct = kloosterman_direct_all(spec, psi, opts.exec);
  const auto split = kloosterman_direct_all(split_companion(spec), psi, opts.exec);
  const TraceNormTable units = trace_norm_table(spec, Domain::kUnits, opts.exec);
  const double scale = reduction_sign(spec) * static_cast<double>(reduction_scale(spec));
  const auto bound = kloosterman_bound(spec);
  const auto hyper_bound = hyper_kloosterman_bound(spec.q(), spec.m());
  for (Elem b = 1; b < spec.q(); ++b) {
    const std::string sb = str(b);
    const SumValue hk = hyper_kloosterman(psi, spec.m(), b, opts.exec.max_summands);
    rec.numeric("kloosterman.reduction", "", sb, "", direct[b], scale * hk);
    rec.numeric("kloosterman.split-reduction", "", sb, "", direct[b], scale * split[b]);
    PairwiseAccumulator acc;
    for (Elem a = 0; a < spec.q(); ++a) acc.add(static_cast<double>(units.at(a, b)) * psi(a));
    rec.numeric("kloosterman.trace-expansion", "", sb, "", direct[b], acc.value());
    rec.sum_bound("kloosterman.bound", "", sb, "", direct[b], bound);
    rec.sum_bound("kloosterman.hyper-bound", "", sb, "", hk, hyper_bound);
  }
  return finish("kloosterman", rec, start);
}

Report verify_product_trace(const AlgebraSpec& spec, unsigned r, const VerifyOptions& opts) {
  const auto start = Clock::now();
  const auto psi = base_psi(spec, opts);
  if (r < 2) throw InvalidArgument("r must be at least 2, got " + std::to_string(r));
  Recorder rec(spec, opts);
  const std::string sr = str(r);
  const std::uint64_t cap = opts.exec.max_summands;
  if (spec.unit_count() == 0 || spec.unit_count() > cap) {
    const std::string size = spec.unit_count() ? str(spec.unit_count()) : std::string("> 2^64");
    rec.skipped("product-trace.sweep", sr, "over cap: |B*|=" + size);
    return finish("product-trace", rec, start,
                  {spec.summary() + ", r=" + sr + ": product-trace sweep skipped, over the summand cap"});
  }
  const Enumerator units(spec, Domain::kUnits, cap);
  const std::uint64_t U = units.size();

  // U^e, saturating at cap + 1.
  const auto capped_pow = [&](unsigned e) {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < e; ++i) {
      if (v > (cap + 1) / U) return cap + 1;
      v *= U;
    }
    return v;
  };
  const std::uint64_t per_x = capped_pow(r - 1);
  const std::uint64_t sample = std::min(U, opts.product_trace_sample);
  std::vector<std::string> notes;
  if (per_x > cap || (capped_pow(r) > cap && sample * per_x > cap)) {
    rec.skipped("product-trace.sweep", sr, "over cap: |B*|=" + str(U));
    notes.push_back(spec.summary() + ", r=" + sr + ": product-trace sweep skipped, over the summand cap");
    return finish("product-trace", rec, start, std::move(notes));
  }
  const bool full = capped_pow(r) <= cap;
  const std::uint64_t xs = full ? U : sample;
  if (!full) {
    notes.push_back(spec.summary() + ", r=" + sr + ": x sampled, first " + str(xs) + " of " + str(U) +
                    " units in enumeration order");
  }

  const Rational main = product_trace_main_term(spec, r);
  const auto conj = product_trace_conjecture_bound(spec, r);
  for (std::uint64_t xi = 0; xi < xs; ++xi) {
    const auto res = product_trace(units, r, xi, psi, opts.exec);
    const auto zb = product_trace_bound(spec, units.element(xi), r);
    const std::string sx = "x:" + str(xi);
    if (res.regular) {
      rec.sum_bound("product-trace.coarse-bound", "", sx, sr, res.sum, zb.coarse);
      rec.sum_bound("product-trace.fine-bound", "", sx, sr, res.sum, zb.fine);
    } else {
      rec.sum_bound("product-trace.non-regular", "", sx, sr, res.sum, zb.coarse, Status::kObserved);
      rec.records.back().status = Status::kObserved;
    }
    if (res.etale_product) rec.numeric("product-trace.etale-factorization", "", sx, sr, res.sum, *res.etale_product);

    std::uint64_t total = 0;
    PairwiseAccumulator acc;
    for (Elem a = 0; a < spec.q(); ++a) {
      total += res.trace_counts[a];
      acc.add(static_cast<double>(res.trace_counts[a]) * psi(a));
    }
    rec.exact("product-trace.trace-total", "", sx, sr, Rational(static_cast<std::int64_t>(total)),
              Rational(static_cast<std::int64_t>(per_x)));
    rec.numeric("product-trace.trace-expansion", "", sx, sr, res.sum, acc.value());
    for (Elem a = 0; a < spec.q(); ++a) {
      const bool asserted = a != 0 && res.regular;
      rec.bound("product-trace.conjecture", str(a), sx, sr, static_cast<std::int64_t>(res.trace_counts[a]), main,
                conj, asserted ? Status::kConjectureViolation : Status::kObserved);
      if (!asserted) rec.records.back().status = Status::kObserved;
    }
  }
  return finish("product-trace", rec, start, std::move(notes));
}

Report verify_gauss(const AlgebraSpec& spec, const VerifyOptions& opts) {
  const auto start = Clock::now();
  const auto psi = base_psi(spec, opts);
  Recorder rec(spec, opts);
  std::set<std::pair<std::uint32_t, std::uint32_t>> eichler_seen;
  std::set<std::uint32_t> hd_seen;
  const auto base_chars = multiplicative_characters(spec.base_field());
  for (std::size_t i = 0; i < spec.k(); ++i) {
    const Factor f = spec.factors()[i];
    const FieldPtr F = spec.factor_field(i);
    if (eichler_seen.insert({f.d, F->size()}).second) {
      const AdditiveCharacter psi_Q(F);
      const std::string where = "GL_" + std::to_string(f.d) + "(" + F->name() + ")";
      for (const auto& chi : multiplicative_characters(F)) {
        const auto rp = gauss_sum_gl(f.d, chi, psi_Q, opts.exec);
        rec.numeric("gauss.eichler", "chi:" + str(chi.index()), where, "", rp.direct, rp.closed);
      }
    }
    if (f.n > 1 && hd_seen.insert(f.n).second) {
      const std::string where = F->name() + "/" + spec.base_field()->name();
      for (const auto& chi : base_chars) {
        const auto hd = hasse_davenport_check(chi, psi, f.n);
        rec.numeric("gauss.hasse-davenport", "chi:" + str(chi.index()), where, "", hd.lifted_sum, hd.predicted);
      }
    }
  }
  return finish("gauss", rec, start);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"norm-trace", "units", "kloosterman", "product-trace", "gauss",
                                                 "all"};
  return names;
}

Report run_suite(std::string_view suite, const AlgebraSpec& spec, const VerifyOptions& opts) {
  const auto product = [&] {
    Report out;
    out.name = "product-trace";
    for (unsigned r : opts.product_trace_r) out.append(verify_product_trace(spec, r, opts));
    return out;
  };
  if (suite == "norm-trace") return verify_norm_trace(spec, opts);
  if (suite == "units") return verify_units(spec, opts);
  if (suite == "kloosterman") return verify_kloosterman(spec, opts);
  if (suite == "product-trace") return product();
  if (suite == "gauss") return verify_gauss(spec, opts);
  if (suite == "all") {
    Report out;
    out.name = "all";
    out.append(verify_norm_trace(spec, opts));
    out.append(verify_units(spec, opts));
    out.append(verify_kloosterman(spec, opts));
    out.append(product());
    out.append(verify_gauss(spec, opts));
    return out;
  }
  throw InvalidArgument("suite: unknown suite '" + std::string(suite) +
                        "' (expected norm-trace, units, kloosterman, product-trace, gauss or all)");
}

ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "table") return ReportFormat::kTable;
  if (s == "structured" || s == "json") return ReportFormat::kStructured;
  throw InvalidArgument("format: unknown format '" + std::string(s) + "' (expected csv, table or structured)");
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> row_fields(const Record& r) {
  return {r.suite,
          r.spec,
          r.a,
          r.b,
          r.r,
          r.value,
          format_double(r.main_term),
          format_double(r.error),
          format_double(r.bound),
          format_double(r.slack),
          std::string(to_string(r.status))};
}

void emit_csv(const Report& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : report.records) {
    const auto fields = row_fields(r);
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_field(fields[i]);
    out << '\n';
  }
}

void emit_summary(const Report& report, std::ostream& out) {
  const Totals t = report.totals();
  out << "totals: pass=" << t.pass << " fail=" << t.fail << " conjecture-violation=" << t.conjecture_violation
      << " known-paper-mismatch=" << t.known_paper_mismatch << " observed=" << t.observed
      << " skipped=" << t.skipped << '\n';
  if (const Record* m = report.max_ratio_record()) {
    out << "max error/bound: " << format_double(m->error / m->bound) << " (" << m->suite << ", " << m->spec
        << ", a=" << m->a << ", b=" << m->b << ")\n";
  }
}

void emit_table(const Report& report, std::ostream& out) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"suite", "spec", "a", "b", "r", "value", "main_term", "error", "bound", "slack", "status"});
  for (const auto& r : report.records) rows.push_back(row_fields(r));
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& note : report.notes) out << "# " << note << '\n';
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out << line << '\n';
  }
  for (const auto& r : report.records) {
    if (r.status == Status::kConjectureViolation) {
      out << "WARNING conjecture-violation: " << r.spec << " r=" << r.r << " " << r.b << " a=" << r.a << '\n';
    }
  }
  emit_summary(report, out);
}

void emit_structured(const Report& report, std::ostream& out) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["suite"] = report.name;
  j["notes"] = report.notes;
  const Totals t = report.totals();
  j["totals"] = {{"pass", t.pass},
                 {"fail", t.fail},
                 {"conjecture-violation", t.conjecture_violation},
                 {"known-paper-mismatch", t.known_paper_mismatch},
                 {"observed", t.observed},
                 {"skipped", t.skipped}};
  if (const auto m = report.max_ratio()) {
    j["max_ratio"] = *m;
  } else {
    j["max_ratio"] = nullptr;
  }
  ordered_json recs = ordered_json::array();
  for (const auto& r : report.records) {
    recs.push_back({{"suite", r.suite},
                    {"spec", r.spec},
                    {"a", r.a},
                    {"b", r.b},
                    {"r", r.r},
                    {"value", r.value},
                    {"main_term", r.main_term},
                    {"error", r.error},
                    {"bound", r.bound},
                    {"slack", r.slack},
                    {"status", to_string(r.status)}});
  }
  j["records"] = std::move(recs);
  out << j.dump(2) << '\n';
}

// Splits one CSV line; `pos` advances past the line terminator. Quoted
// fields may contain separators, doubled quotes and newlines.
std::vector<std::string> read_csv_row(std::string_view text, std::size_t& pos) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          fields.back() += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c == '\n') {
      return fields;
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw ParseError("csv: unterminated quoted field");
  return fields;
}

}  // namespace

void emit_report(const Report& report, ReportFormat format, std::ostream& out) {
  switch (format) {
    case ReportFormat::kCsv: emit_csv(report, out); break;
    case ReportFormat::kTable: emit_table(report, out); break;
    case ReportFormat::kStructured: emit_structured(report, out); break;
  }
}

std::string emit_report(const Report& report, ReportFormat format) {
  std::ostringstream out;
  emit_report(report, format, out);
  return out.str();
}

std::vector<Record> parse_report_csv(std::string_view text) {
  std::size_t pos = 0;
  const auto header = read_csv_row(text, pos);
  std::string joined;
  for (std::size_t i = 0; i < header.size(); ++i) joined += (i ? "," : "") + header[i];
  if (joined != kCsvHeader) throw ParseError("csv: unexpected header '" + joined + "'");
  std::vector<Record> out;
  while (pos < text.size()) {
    const auto f = read_csv_row(text, pos);
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != header.size()) {
      throw ParseError("csv: row " + std::to_string(out.size() + 1) + " has " + std::to_string(f.size()) +
                       " fields, expected " + std::to_string(header.size()));
    }
    Record r;
    r.suite = f[0];
    r.spec = f[1];
    r.a = f[2];
    r.b = f[3];
    r.r = f[4];
    r.value = f[5];
    r.main_term = parse_double(f[6], "main_term");
    r.error = parse_double(f[7], "error");
    r.bound = parse_double(f[8], "bound");
    r.slack = parse_double(f[9], "slack");
    r.status = parse_status(f[10]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace normtrace
