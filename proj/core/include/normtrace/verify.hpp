#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normtrace/algebra.hpp"
#include "normtrace/parallel.hpp"
#include "normtrace/sum_value.hpp"

namespace normtrace {

enum class Status {
  kPass,
  kFail,                  // a proven bound or exact identity is violated
  kConjectureViolation,   // reported, never fatal
  kKnownPaperMismatch,    // a published closed form outside its valid range
  kObserved,              // informational, no assertion attached
  kSkipped,               // over the configured caps
};

std::string_view to_string(Status s);
Status parse_status(std::string_view s);

// One row of a report. Counts and sums are printed in `value`; the numeric
// columns are doubles derived from exact values where those exist.
struct Record {
  std::string suite;  // "norm-trace.main-bound"
  std::string spec;   // AlgebraSpec::summary()
  std::string a;
  std::string b;
  std::string r;
  std::string value;
  double main_term = 0.0;
  double error = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  Status status = Status::kPass;

  friend bool operator==(const Record&, const Record&) = default;
};

struct Totals {
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  std::uint64_t conjecture_violation = 0;
  std::uint64_t known_paper_mismatch = 0;
  std::uint64_t observed = 0;
  std::uint64_t skipped = 0;
};

struct Report {
  std::string name;
  std::vector<std::string> notes;
  std::vector<Record> records;
  double seconds = 0.0;  // wall clock; never serialized

  Totals totals() const;
  // Largest error/bound over bound-checked records with bound > 0 and
  // status pass or fail.
  std::optional<double> max_ratio() const;
  const Record* max_ratio_record() const;
  bool ok() const { return totals().fail == 0; }

  void append(Report other);
};

struct VerifyOptions {
  Execution exec;
  Elem psi_twist = 1;
  double tolerance = kDefaultTolerance;
  // Number of x values taken in enumeration order when a full product-trace
  // sweep is over the cap.
  std::uint64_t product_trace_sample = 256;
  std::vector<unsigned> product_trace_r = {2, 3};
};

Report verify_norm_trace(const AlgebraSpec& spec, const VerifyOptions& opts = {});
Report verify_units(const AlgebraSpec& spec, const VerifyOptions& opts = {});
Report verify_kloosterman(const AlgebraSpec& spec, const VerifyOptions& opts = {});
Report verify_product_trace(const AlgebraSpec& spec, unsigned r, const VerifyOptions& opts = {});
Report verify_gauss(const AlgebraSpec& spec, const VerifyOptions& opts = {});

// norm-trace, units, kloosterman, product-trace, gauss or all.
const std::vector<std::string>& suite_names();
Report run_suite(std::string_view suite, const AlgebraSpec& spec, const VerifyOptions& opts = {});

enum class ReportFormat { kCsv, kTable, kStructured };
ReportFormat parse_report_format(std::string_view s);

inline constexpr std::string_view kCsvHeader = "suite,spec,a,b,r,value,main_term,error,bound,slack,status";

void emit_report(const Report& report, ReportFormat format, std::ostream& out);
std::string emit_report(const Report& report, ReportFormat format);

// Inverse of the CSV emitter.
std::vector<Record> parse_report_csv(std::string_view text);

}  // namespace normtrace
