#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "normtrace/normtrace.hpp"

namespace normtrace::cli {

namespace {

struct Common {
  std::string spec;
  std::string spec_file;
  bool allow_degree_one = false;
  std::string format = "table";
  std::string method = "both";
  std::uint64_t max_summands = kDefaultSummandCap;
  unsigned partitions = 0;
  double tolerance = kDefaultTolerance;
  std::uint32_t psi_twist = 1;

  Execution exec() const {
    Execution e;
    e.partitions = partitions != 0 ? partitions : std::max(1u, std::thread::hardware_concurrency());
    e.max_summands = max_summands;
    return e;
  }
  ReportFormat report_format() const { return parse_report_format(format); }
};

void add_common(CLI::App* cmd, Common& c, bool with_spec) {
  if (with_spec) {
    auto* s = cmd->add_option("--spec", c.spec, "Inline algebra spec, e.g. '{p:2,e:1,factors:[[2,1]]}'");
    auto* f = cmd->add_option("--spec-file", c.spec_file, "Algebra spec JSON file")->check(CLI::ExistingFile);
    s->excludes(f);
    cmd->add_flag("--allow-degree-one", c.allow_degree_one, "Accept algebras with n = 1 such as F_q itself");
  }
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "table", "structured"}))
      ->capture_default_str();
  cmd->add_option("--max-summands", c.max_summands, "Cap on summands per enumeration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--partitions", c.partitions, "Partition count (default: available parallelism)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tolerance", c.tolerance, "Relative tolerance for complex comparisons")
      ->check(CLI::Range(std::numeric_limits<double>::min(), 1e-3))
      ->capture_default_str();
  cmd->add_option("--psi-twist", c.psi_twist, "Nonzero c selecting psi_c(x) = psi(c x)")->capture_default_str();
}

AlgebraSpec load_spec(const Common& c) {
  if (!c.spec.empty()) return parse_spec(c.spec, c.allow_degree_one);
  if (!c.spec_file.empty()) return load_spec_file(c.spec_file, c.allow_degree_one);
  throw InvalidArgument("spec: one of --spec or --spec-file is required");
}

AdditiveCharacter make_psi(const FieldPtr& F, std::uint32_t twist) {
  if (twist == 0 || twist >= F->size()) {
    throw InvalidArgument("psi-twist: " + std::to_string(twist) + " is not a nonzero element of " + F->name());
  }
  return AdditiveCharacter(F, twist);
}

void require_in(const AlgebraSpec& spec, std::uint32_t v, const char* name) {
  if (v >= spec.q()) {
    throw InvalidArgument(std::string(name) + ": " + std::to_string(v) + " is not an element of F_" +
                          std::to_string(spec.q()));
  }
}

CountMethod count_method(const std::string& m) {
  if (m == "direct") return CountMethod::kBrute;
  if (m == "formula") return CountMethod::kFormula;
  return CountMethod::kBoth;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string provenance(bool direct, bool formula, bool agree) {
  if (direct && formula) return agree ? "both-agree" : "disagree";
  return direct ? "brute" : "formula";
}

// Plain rows with a fixed header, printed in any of the three formats.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> preamble;

  void emit(const std::string& format, std::ostream& out) const {
    if (format == "structured") {
      nlohmann::ordered_json j;
      if (!preamble.empty()) j["notes"] = preamble;
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& row : rows) {
        nlohmann::ordered_json o;
        for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = row[i];
        arr.push_back(std::move(o));
      }
      j["rows"] = std::move(arr);
      out << j.dump(2) << '\n';
      return;
    }
    for (const auto& p : preamble) out << "# " << p << '\n';
    if (format == "csv") {
      const auto field = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
      };
      for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << field(columns[i]);
      out << '\n';
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << field(row[i]);
        out << '\n';
      }
      return;
    }
    std::vector<std::size_t> width(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    const auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        s += cells[i];
        if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
      }
      out << s << '\n';
    };
    line(columns);
    for (const auto& row : rows) line(row);
  }
};

struct FieldArgs {
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  std::optional<std::uint32_t> x;
};

int cmd_field(const Common& c, const FieldArgs& a, std::ostream& out) {
  const FieldPtr F = gf(a.p, a.k);
  const FieldPtr Fp = gf(a.p, 1);
  const EmbeddingPtr emb = embedding(a.p, 1, a.k);
  Poly modulus(F->modulus().begin(), F->modulus().end());
  modulus.push_back(1);
  Table t;
  t.preamble.push_back(F->name() + ": modulus " + poly::format(*Fp, modulus) + ", generator " +
                       std::to_string(F->generator()) + " = " + F->format(F->generator()));
  t.columns = {"code", "element", "log", "trace", "norm", "order", "provenance"};
  const auto row = [&](Elem x) {
    std::string log = "-", order = "-";
    if (x != 0) {
      const std::uint32_t l = F->log(x);
      log = std::to_string(l);
      order = std::to_string(F->unit_count() / std::gcd(l, F->unit_count()));
    }
    t.rows.push_back({std::to_string(x), F->format(x), log, std::to_string(emb->relative_trace(x)),
                      std::to_string(emb->relative_norm(x)), order, "construction"});
  };
  if (a.x) {
    if (!F->contains(*a.x)) throw InvalidArgument("x: " + std::to_string(*a.x) + " is not an element of " + F->name());
    row(*a.x);
  } else if (F->size() <= 64) {
    for (std::uint32_t r = 0; r < F->size(); ++r) row(F->at_rank(r));
  }
  t.emit(c.format, out);
  return kExitOk;
}

struct GaussArgs {
  std::uint32_t p = 2;
  std::uint32_t e = 1;
  std::optional<std::int64_t> chi;
  unsigned d = 1;
  unsigned m = 1;
};

int cmd_gauss(const Common& c, const GaussArgs& a, std::ostream& out) {
  const FieldPtr F = gf(a.p, a.e);
  const auto psi = make_psi(F, c.psi_twist);
  std::vector<MultiplicativeCharacter> chars;
  if (a.chi) {
    chars.emplace_back(F, *a.chi);
  } else {
    chars = multiplicative_characters(F);
  }
  Table t;
  t.columns = {"chi", "order", "gauss_sum", "abs_sq"};
  if (a.d > 1) t.columns.insert(t.columns.end(), {"gl_direct", "gl_closed"});
  if (a.m > 1) t.columns.insert(t.columns.end(), {"hd_lifted", "hd_predicted"});
  t.columns.push_back("provenance");
  bool ok = true;
  for (const auto& chi : chars) {
    const SumValue g = gauss_sum(chi, psi);
    std::vector<std::string> row = {std::to_string(chi.index()), std::to_string(chi.order()), g.to_string(),
                                    fmt(std::norm(g.complex()))};
    bool agree = true;
    bool checked = false;
    if (a.d > 1) {
      const auto rp = gauss_sum_gl(a.d, chi, psi, c.exec());
      row.push_back(rp.direct.to_string());
      row.push_back(rp.closed.to_string());
      agree = agree && rp.agree(c.tolerance);
      checked = true;
    }
    if (a.m > 1) {
      const auto hd = hasse_davenport_check(chi, psi, a.m);
      row.push_back(hd.lifted_sum.to_string());
      row.push_back(hd.predicted.to_string());
      agree = agree && hd.agrees(c.tolerance);
      checked = true;
    }
    row.push_back(checked ? provenance(true, true, agree) : "brute");
    ok = ok && agree;
    t.rows.push_back(std::move(row));
  }
  t.emit(c.format, out);
  return ok ? kExitOk : kExitFailure;
}

struct CountArgs {
  std::uint32_t a = 0;
  std::optional<std::uint32_t> b;
};

void count_row(Table& t, const std::string& quantity, const CountRecord& r) {
  std::string notes;
  for (const auto& n : r.notes) notes += (notes.empty() ? "" : "; ") + n;
  t.rows.push_back({quantity, std::to_string(r.a), r.b ? std::to_string(*r.b) : "-", std::to_string(r.value()),
                    r.main_term.to_string(), r.error().to_string(), r.bound ? r.bound->to_string() : "-",
                    provenance(r.brute.has_value(), r.formula.has_value(), r.routes_agree()), notes});
}

int cmd_count(const Common& c, const CountArgs& a, std::ostream& out) {
  const AlgebraSpec spec = load_spec(c);
  require_in(spec, a.a, "a");
  if (a.b) require_in(spec, *a.b, "b");
  const auto method = count_method(c.method);
  Table t;
  t.columns = {"quantity", "a", "b", "value", "main_term", "error", "bound", "provenance", "notes"};
  bool ok = true;
  if (!a.b) {
    const auto r = count_trace_units(spec, a.a, method, c.exec());
    count_row(t, "N_B*(a)", r);
    ok = r.routes_agree() && r.value() == trace_units_closed_form(spec, a.a);
  } else if (*a.b == 0) {
    const auto r = count_norm_zero(spec, a.a, method, c.exec());
    count_row(t, "N_B(a,0)", r);
    ok = r.routes_agree();
    const Rational ie = norm_zero_inclusion_exclusion(spec, a.a);
    std::string note = spec.is_etale() ? "" : "etale-only formula";
    if (ie != Rational(r.value())) note += note.empty() ? "differs" : "; differs";
    t.rows.push_back({"N_B(a,0) inclusion-exclusion", std::to_string(a.a), "0", ie.to_string(), "-", "-", "-",
                      "formula", note});
    if (spec.is_etale() && ie != Rational(r.value())) ok = false;
  } else {
    const auto r = count_norm_trace(spec, a.a, *a.b, method, c.exec());
    count_row(t, "N_B(a,b)", r);
    ok = r.routes_agree() && r.within_bound();
  }
  t.emit(c.format, out);
  return ok ? kExitOk : kExitFailure;
}

struct KloostermanArgs {
  std::optional<std::uint32_t> b;
};

int cmd_kloosterman(const Common& c, const KloostermanArgs& a, std::ostream& out) {
  const AlgebraSpec spec = load_spec(c);
  const auto psi = make_psi(spec.base_field(), c.psi_twist);
  const auto exec = c.exec();
  const auto method = count_method(c.method);
  const bool direct = method != CountMethod::kFormula;
  const bool formula = method != CountMethod::kBrute;
  if (a.b) {
    require_in(spec, *a.b, "b");
    if (*a.b == 0) throw InvalidArgument("b: must be nonzero");
  }
  std::vector<SumValue> all;
  if (direct) all = kloosterman_direct_all(spec, psi, exec);
  const auto bound = kloosterman_bound(spec);
  const auto hyper_bound = hyper_kloosterman_bound(spec.q(), spec.m());
  Table t;
  t.columns = {"quantity", "b", "value", "reference", "error", "bound", "provenance"};
  bool ok = true;
  for (Elem b = 1; b < spec.q(); ++b) {
    if (a.b && b != *a.b) continue;
    const SumValue hk = hyper_kloosterman(psi, spec.m(), b, exec.max_summands);
    const SumValue reduced = static_cast<double>(reduction_sign(spec) * reduction_scale(spec)) * hk;
    const SumValue value = direct ? all[b] : reduced;
    const double err = direct && formula ? distance(all[b], reduced) : 0.0;
    const bool agree = !(direct && formula) || all[b].approx_equal(reduced, c.tolerance);
    const bool in_bound = value.magnitude() <= bound.to_double() * (1 + c.tolerance) + c.tolerance;
    ok = ok && agree && in_bound;
    t.rows.push_back({"K_B(b)", std::to_string(b), value.to_string(), formula && direct ? reduced.to_string() : "-",
                      fmt(err), bound.to_string(), provenance(direct, formula, agree)});
    ok = ok && hk.magnitude() <= hyper_bound.to_double() * (1 + c.tolerance) + c.tolerance;
    t.rows.push_back({"K_F_q^m(b)", std::to_string(b), hk.to_string(), "-", "0", hyper_bound.to_string(), "brute"});
  }
  if (!a.b) {
    if (direct) {
      const auto full = full_unit_sum(spec, psi, exec);
      const SumValue closed(static_cast<double>(full.closed));
      const bool agree = !formula || full.direct.approx_equal(closed, c.tolerance);
      ok = ok && agree;
      t.rows.push_back({"K_B*", "-", full.direct.to_string(), formula ? std::to_string(full.closed) : "-",
                        fmt(distance(full.direct, closed)), "-", provenance(true, formula, agree)});
    } else {
      const std::int64_t closed = (spec.sum_d() % 2 == 0 ? 1 : -1) * reduction_scale(spec);
      t.rows.push_back({"K_B*", "-", std::to_string(closed), "-", "0", "-", "formula"});
    }
  }
  t.emit(c.format, out);
  return ok ? kExitOk : kExitFailure;
}

struct ProductTraceArgs {
  unsigned r = 2;
  std::string x;
  std::optional<std::uint32_t> a;
};

int cmd_product_trace(const Common& c, const ProductTraceArgs& a, std::ostream& out, std::ostream& err) {
  const AlgebraSpec spec = load_spec(c);
  const auto psi = make_psi(spec.base_field(), c.psi_twist);
  if (a.r < 2) throw InvalidArgument("r: must be at least 2, got " + std::to_string(a.r));
  if (a.a) require_in(spec, *a.a, "a");
  const AlgebraElement x = parse_element(spec, a.x);
  if (!is_unit(spec, x)) throw InvalidArgument("x: must be a unit of " + spec.summary());
  const auto res = product_trace(spec, a.r, x, psi, c.exec());
  const auto zb = product_trace_bound(spec, x, a.r);
  Table t;
  t.preamble.push_back(spec.summary() + ", r=" + std::to_string(a.r) + ", x " +
                       (res.regular ? "regular" : "not regular"));
  t.columns = {"quantity", "a", "value", "reference", "main_term", "error", "bound", "status", "provenance"};
  bool ok = true;
  std::string status = "observed";
  const bool coarse_ok = res.sum.magnitude() <= zb.coarse.to_double() * (1 + c.tolerance) + c.tolerance;
  const bool fine_ok = res.sum.magnitude() <= zb.fine.to_double() * (1 + c.tolerance) + c.tolerance;
  bool agree = true;
  if (res.etale_product) agree = res.sum.approx_equal(*res.etale_product, c.tolerance);
  if (res.regular) {
    status = coarse_ok && fine_ok ? "pass" : "fail";
    ok = coarse_ok && fine_ok;
  }
  ok = ok && agree;
  t.rows.push_back({"K(B,r,x)", "-", res.sum.to_string(), res.etale_product ? res.etale_product->to_string() : "-",
                    "0", fmt(res.sum.magnitude()), zb.coarse.to_string(), status,
                    provenance(true, res.etale_product.has_value(), agree)});
  t.rows.push_back({"K(B,r,x) fine bound", "-", res.sum.to_string(), "-", "0", fmt(res.sum.magnitude()),
                    zb.fine.to_string(), res.regular ? (fine_ok ? "pass" : "fail") : "observed", "brute"});
  std::vector<std::string> warnings;
  for (Elem v = 0; v < spec.q(); ++v) {
    if (a.a && v != *a.a) continue;
    const auto r = count_product_trace(spec, a.r, res, v);
    const bool asserted = v != 0 && res.regular;
    std::string st = "observed";
    if (asserted) st = r.within_bound() ? "pass" : "conjecture-violation";
    if (st == "conjecture-violation") {
      warnings.push_back("warning: conjecture-violation at a=" + std::to_string(v) + " for " + spec.summary());
    }
    t.rows.push_back({"N(B,r,x,a)", std::to_string(v), std::to_string(r.value()), "-", r.main_term.to_string(),
                      r.error().to_string(), r.bound->to_string(), st, "brute"});
  }
  t.emit(c.format, out);
  for (const auto& w : warnings) err << w << '\n';
  return ok ? kExitOk : kExitFailure;
}

struct PolyArgs {
  std::vector<std::uint32_t> f;
  std::optional<std::uint32_t> a;
  std::optional<std::uint32_t> b;
};

int cmd_poly(const Common& c, const PolyArgs& a, std::ostream& out) {
  const AlgebraSpec spec = load_spec(c);
  if (a.a) require_in(spec, *a.a, "a");
  if (a.b) {
    require_in(spec, *a.b, "b");
    if (*a.b == 0) throw InvalidArgument("b: must be nonzero");
  }
  for (auto coef : a.f) require_in(spec, coef, "f");
  Poly f(a.f.begin(), a.f.end());
  poly::normalize(f);
  if (poly::degree(f) < 1) throw InvalidArgument("f: degree must be at least 1");
  const auto exec = c.exec();
  Table t;
  t.columns = {"quantity", "a", "b", "value", "main_term", "error", "bound", "provenance", "notes"};
  for (Elem v = 0; v < spec.q(); ++v) {
    if (a.a && v != *a.a) continue;
    const auto r = count_poly_trace(spec, f, v, a.b, exec);
    std::string notes;
    for (const auto& n : r.notes) notes += (notes.empty() ? "" : "; ") + n;
    t.rows.push_back({"N_B,f(a)", std::to_string(v), a.b ? std::to_string(*a.b) : "-", std::to_string(r.value()),
                      a.b ? "-" : r.main_term.to_string(), a.b ? "-" : r.error().to_string(),
                      r.bound ? r.bound->to_string() : "-", "brute", notes});
  }
  if (a.b) {
    const auto psi = make_psi(spec.base_field(), c.psi_twist);
    const auto k = poly_trace_kloosterman(spec, f, *a.b, psi, exec);
    std::string notes = k.degree_coprime_to_p ? "" : "deg f divisible by p";
    t.rows.push_back({"K_B,f(b)", "-", std::to_string(*a.b), k.value.to_string(), "-", fmt(k.value.magnitude()),
                      k.etale_reference ? k.etale_reference->to_string() : "-", "brute", notes});
  }
  t.emit(c.format, out);
  return kExitOk;
}

struct VerifyArgs {
  std::string suite = "all";
  std::string spec_dir;
  std::string output;
  std::vector<unsigned> r = {2, 3};
  std::uint64_t sample = 256;
};

std::vector<AlgebraSpec> collect_specs(const Common& c, const std::string& dir) {
  std::vector<AlgebraSpec> specs;
  if (!dir.empty()) {
    if (!c.spec.empty() || !c.spec_file.empty()) {
      throw InvalidArgument("spec-dir: cannot be combined with --spec or --spec-file");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw InvalidArgument("spec-dir: no .json spec files in " + dir);
    for (const auto& f : files) specs.push_back(load_spec_file(f.string(), c.allow_degree_one));
    return specs;
  }
  specs.push_back(load_spec(c));
  return specs;
}

VerifyOptions verify_options(const Common& c, const VerifyArgs& a) {
  VerifyOptions o;
  o.exec = c.exec();
  o.psi_twist = c.psi_twist;
  o.tolerance = c.tolerance;
  o.product_trace_sample = a.sample;
  o.product_trace_r = a.r;
  return o;
}

int write_report(const Common& c, const Report& report, const std::string& path, std::ostream& out,
                 std::ostream& err) {
  if (path.empty()) {
    emit_report(report, c.report_format(), out);
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InvalidArgument("output: cannot open " + path);
    emit_report(report, c.report_format(), file);
    if (!file) throw Error("output: write to " + path + " failed");
  }
  const Totals t = report.totals();
  err << report.name << ": " << report.records.size() << " records, " << t.fail << " failed, "
      << t.conjecture_violation << " conjecture-violations, " << fmt(report.seconds) << " s\n";
  if (t.conjecture_violation > 0) {
    err << "warning: " << t.conjecture_violation << " conjecture-violation records\n";
  }
  return t.fail == 0 ? kExitOk : kExitFailure;
}

int cmd_verify(const Common& c, const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  Report report;
  report.name = a.suite;
  for (const auto& spec : collect_specs(c, a.spec_dir)) {
    report.append(run_suite(a.suite, spec, verify_options(c, a)));
  }
  return write_report(c, report, a.output, out, err);
}

int cmd_explore(const Common& c, const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  Report report;
  report.name = "explore";
  for (const auto& spec : collect_specs(c, a.spec_dir)) {
    const auto opts = verify_options(c, a);
    for (unsigned r : a.r) {
      Report one = verify_product_trace(spec, r, opts);
      std::erase_if(one.records, [](const Record& rec) {
        return rec.suite != "product-trace.conjecture" && rec.status != Status::kSkipped;
      });
      report.append(std::move(one));
    }
  }
  return write_report(c, report, a.output, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace and norm counts and Kloosterman-type sums over finite semisimple algebras", "normtrace"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "normtrace 0.1.0");

  Common common;
  FieldArgs field_args;
  GaussArgs gauss_args;
  CountArgs count_args;
  KloostermanArgs kl_args;
  ProductTraceArgs pt_args;
  PolyArgs poly_args;
  VerifyArgs verify_args;

  auto* field = app.add_subcommand("field", "Inspect a constructed finite field");
  field->add_option("--p", field_args.p, "Characteristic")->required();
  field->add_option("--k", field_args.k, "Degree over F_p")->capture_default_str();
  field->add_option("--x", field_args.x, "Element code to inspect");
  add_common(field, common, false);

  auto* gauss = app.add_subcommand("gauss", "Gauss sums, GL Gauss sums and Hasse-Davenport checks");
  gauss->add_option("--p", gauss_args.p, "Characteristic")->required();
  gauss->add_option("--e", gauss_args.e, "Degree of F_q over F_p")->capture_default_str();
  gauss->add_option("--chi", gauss_args.chi, "Character index (default: all)");
  gauss->add_option("--d", gauss_args.d, "Matrix size for the GL_d Gauss sum")->capture_default_str();
  gauss->add_option("--m", gauss_args.m, "Extension degree for the Hasse-Davenport check")->capture_default_str();
  add_common(gauss, common, false);

  auto* count = app.add_subcommand("count", "N_B(a,b), N_B(a,0) or N_B*(a)");
  count->add_option("--a", count_args.a, "Trace value")->required();
  count->add_option("--b", count_args.b, "Norm value; 0 selects the norm-zero count, omit for N_B*(a)");
  count->add_option("--method", common.method, "direct, formula or both")
      ->check(CLI::IsMember({"direct", "formula", "both"}));
  add_common(count, common, true);

  auto* kl = app.add_subcommand("kloosterman", "K_B(b), hyper-Kloosterman sums and the full unit sum");
  kl->add_option("--b", kl_args.b, "Norm value (default: all nonzero b)");
  kl->add_option("--method", common.method, "direct, formula or both")
      ->check(CLI::IsMember({"direct", "formula", "both"}));
  add_common(kl, common, true);

  auto* pt = app.add_subcommand("product-trace", "K(B,r,x) and N(B,r,x,a)");
  pt->add_option("--r", pt_args.r, "Number of factors")->capture_default_str();
  pt->add_option("--x", pt_args.x, "Unit x, one matrix per factor, e.g. '[[[0,1],[1,1]]]'")->required();
  pt->add_option("--a", pt_args.a, "Trace value (default: all)");
  add_common(pt, common, true);

  auto* pl = app.add_subcommand("poly", "N_B,f(a) and K_B,f(b)");
  pl->add_option("--f", poly_args.f, "Coefficients of f over F_q, constant first")->required()->delimiter(',');
  pl->add_option("--a", poly_args.a, "Trace value (default: all)");
  pl->add_option("--b", poly_args.b, "Restrict to units with norm b");
  add_common(pl, common, true);

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", verify_args.suite, "Suite name")
      ->check(CLI::IsMember(suite_names()))
      ->capture_default_str();
  verify->add_option("--spec-dir", verify_args.spec_dir, "Directory of spec files")->check(CLI::ExistingDirectory);
  verify->add_option("--output", verify_args.output, "Write the report to this file");
  verify->add_option("--r", verify_args.r, "Product-trace r values")->delimiter(',');
  verify->add_option("--sample", verify_args.sample, "x sample size when a full sweep is over the cap")
      ->check(CLI::PositiveNumber);
  add_common(verify, common, true);

  auto* explore = app.add_subcommand("explore", "Product-trace conjecture sweeps");
  explore->add_option("--spec-dir", verify_args.spec_dir, "Directory of spec files")->check(CLI::ExistingDirectory);
  explore->add_option("--output", verify_args.output, "Write the report to this file");
  explore->add_option("--r", verify_args.r, "r values")->delimiter(',');
  explore->add_option("--sample", verify_args.sample, "x sample size when a full sweep is over the cap")
      ->check(CLI::PositiveNumber);
  add_common(explore, common, true);

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("normtrace");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*field) return cmd_field(common, field_args, out);
    if (*gauss) return cmd_gauss(common, gauss_args, out);
    if (*count) return cmd_count(common, count_args, out);
    if (*kl) return cmd_kloosterman(common, kl_args, out);
    if (*pt) return cmd_product_trace(common, pt_args, out, err);
    if (*pl) return cmd_poly(common, poly_args, out);
    if (*verify) return cmd_verify(common, verify_args, out, err);
    if (*explore) return cmd_explore(common, verify_args, out, err);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace normtrace::cli
