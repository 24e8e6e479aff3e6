#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

using normtrace::cli::kExitCap;
using normtrace::cli::kExitOk;
using normtrace::cli::kExitUsage;

const std::string kM2F2 = "{p:2,e:1,factors:[[2,1]]}";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = normtrace::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

// One CSV row, honouring double-quoted fields.
std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> v(1);
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (quoted) {
      if (ch == '"' && i + 1 < s.size() && s[i + 1] == '"') {
        v.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        v.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      v.emplace_back();
    } else {
      v.back() += ch;
    }
  }
  return v;
}

TEST(Count, MatrixAlgebraPrintsFour) {
  const auto r = run({"count", "--spec", kM2F2, "--a", "0", "--b", "1", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "quantity,a,b,value,main_term,error,bound,provenance,notes");
  const auto row = split(ls[1]);
  EXPECT_EQ(row[3], "4");
  EXPECT_EQ(row[7], "both-agree");
}

TEST(Count, TablePrintsFour) {
  const auto r = run({"count", "--spec", kM2F2, "--a", "0", "--b", "1"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("  4  "), std::string::npos) << r.out;
}

TEST(Count, NormZeroIsRouted) {
  const auto r = run({"count", "--spec", kM2F2, "--a", "0", "--b", "0", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_GE(ls.size(), 3u);
  EXPECT_NE(ls[1].find("N_B(a,0)"), std::string::npos);
  EXPECT_EQ(split(ls[1])[3], "4");
  EXPECT_NE(ls[2].find("inclusion-exclusion"), std::string::npos);
}

TEST(Count, TraceUnitsWhenNormOmitted) {
  for (const auto& [a, want] : std::vector<std::pair<std::string, std::string>>{{"0", "4"}, {"1", "2"}}) {
    const auto r = run({"count", "--spec", kM2F2, "--a", a, "--format", "csv"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(split(lines(r.out)[1])[3], want);
  }
}

TEST(Count, MethodsAgreeOnProvenance) {
  const auto direct = run({"count", "--spec", kM2F2, "--a", "1", "--b", "1", "--method", "direct", "--format", "csv"});
  const auto formula =
      run({"count", "--spec", kM2F2, "--a", "1", "--b", "1", "--method", "formula", "--format", "csv"});
  ASSERT_EQ(direct.code, kExitOk);
  ASSERT_EQ(formula.code, kExitOk);
  EXPECT_EQ(split(lines(direct.out)[1])[3], split(lines(formula.out)[1])[3]);
  EXPECT_EQ(split(lines(direct.out)[1])[7], "brute");
  EXPECT_EQ(split(lines(formula.out)[1])[7], "formula");
}

TEST(Count, StructuredOutputIsJson) {
  const auto r = run({"count", "--spec", kM2F2, "--a", "0", "--b", "1", "--format", "structured"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("\"value\": \"4\""), std::string::npos) << r.out;
}

TEST(Count, SpecFileMatchesInline) {
  const auto file = run({"count", "--spec-file", NORMTRACE_SUITE_DIR "/m2_f2.json", "--a", "0", "--b", "1"});
  const auto inline_spec = run({"count", "--spec", kM2F2, "--a", "0", "--b", "1"});
  ASSERT_EQ(file.code, kExitOk) << file.err;
  EXPECT_EQ(file.out, inline_spec.out);
}

TEST(Errors, UsageErrorsExitTwoAndNameTheParameter) {
  struct Case {
    std::vector<std::string> args;
    std::string needle;
  };
  const std::vector<Case> cases = {
      {{"count", "--spec", kM2F2, "--a", "0", "--b", "5"}, "b"},
      {{"count", "--spec", kM2F2, "--a", "7", "--b", "1"}, "a"},
      {{"count", "--a", "0", "--b", "1"}, "spec"},
      {{"count", "--spec", "{p:4,e:1,factors:[[2,1]]}", "--a", "0"}, "p"},
      {{"count", "--spec", "{p:2,e:1,factors:[[1,1]]}", "--a", "0"}, "allow-degree-one"},
      {{"count", "--spec", kM2F2, "--a", "0", "--format", "xml"}, "format"},
      {{"count", "--spec", kM2F2, "--a", "0", "--tolerance", "0.5"}, "tolerance"},
      {{"count", "--spec", kM2F2, "--a", "0", "--max-summands", "0"}, "max-summands"},
      {{"kloosterman", "--spec", kM2F2, "--b", "0"}, "b"},
      {{"kloosterman", "--spec", kM2F2, "--psi-twist", "0"}, "psi-twist"},
      {{"product-trace", "--spec", kM2F2, "--r", "1", "--x", "[[[1,0],[0,1]]]"}, "r"},
      {{"product-trace", "--spec", kM2F2, "--x", "[[[1,1],[1,1]]]"}, "x"},
      {{"poly", "--spec", kM2F2, "--f", "1"}, "f"},
      {{"bogus"}, ""},
      {{}, ""},
  };
  for (const auto& c : cases) {
    const auto r = run(c.args);
    EXPECT_EQ(r.code, kExitUsage) << (c.args.empty() ? "" : c.args[0]) << " " << r.err;
    EXPECT_NE(r.err.find(c.needle), std::string::npos) << r.err;
  }
}

TEST(Errors, CapExceededExitsThree) {
  const auto r = run({"count", "--spec", kM2F2, "--a", "0", "--b", "1", "--method", "direct", "--max-summands", "3"});
  EXPECT_EQ(r.code, kExitCap);
  EXPECT_NE(r.err.find("cap"), std::string::npos);
  const auto k = run({"kloosterman", "--spec", "{p:3,e:2,factors:[[2,1]]}", "--max-summands", "100"});
  EXPECT_EQ(k.code, kExitCap);
}

TEST(Errors, FormulaRouteIgnoresSmallCap) {
  const auto r =
      run({"count", "--spec", kM2F2, "--a", "0", "--b", "1", "--method", "formula", "--max-summands", "3"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST(Help, VersionAndHelpExitZero) {
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  const auto v = run({"--version"});
  EXPECT_EQ(v.code, kExitOk);
  EXPECT_NE(v.out.find("normtrace"), std::string::npos);
}

TEST(Field, ListsEveryElement) {
  const auto r = run({"field", "--p", "3", "--k", "2", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 11u);
  EXPECT_NE(ls[0].find("t^2+1"), std::string::npos);
  const auto one = run({"field", "--p", "3", "--k", "2", "--x", "4", "--format", "csv"});
  ASSERT_EQ(one.code, kExitOk);
  const auto row = split(lines(one.out)[2]);
  EXPECT_EQ(row[1], "w+1");
  EXPECT_EQ(row[5], "8");
  EXPECT_EQ(run({"field", "--p", "3", "--k", "2", "--x", "9"}).code, kExitUsage);
  EXPECT_EQ(run({"field", "--p", "6"}).code, kExitUsage);
}

TEST(Gauss, EichlerAndHasseDavenport) {
  const auto r = run({"gauss", "--p", "3", "--d", "2", "--m", "2", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(split(ls[2])[4], "-9");
  EXPECT_EQ(split(ls[2])[5], "-9");
  EXPECT_EQ(split(ls[2]).back(), "both-agree");
  const auto f2 = run({"gauss", "--p", "2", "--d", "2", "--chi", "0", "--format", "csv"});
  ASSERT_EQ(f2.code, kExitOk);
  EXPECT_EQ(split(lines(f2.out)[1])[4], "2");
}

TEST(Kloosterman, MatrixAlgebraBothRoutes) {
  const auto r = run({"kloosterman", "--spec", kM2F2, "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);
  const auto kb = split(ls[1]);
  EXPECT_EQ(kb[2], "2");
  EXPECT_EQ(kb[3], "2");
  EXPECT_EQ(kb[6], "both-agree");
  EXPECT_EQ(split(ls[3])[2], "2");
}

TEST(Kloosterman, FormulaOnlyRunsOverCap) {
  const auto r = run({"kloosterman", "--spec-file", NORMTRACE_SUITE_DIR "/m2_f9_over_f3.json", "--method",
                      "formula", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const auto& l : lines(r.out)) EXPECT_EQ(l.find("brute,"), std::string::npos) << l;
}

TEST(ProductTrace, CompanionIsRegularAndPasses) {
  const auto r = run({"product-trace", "--spec", kM2F2, "--x", "[[[0,1],[1,1]]]", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  EXPECT_NE(ls[0].find("x regular"), std::string::npos);
  const auto k = split(ls[2]);
  EXPECT_EQ(k[6], "16");
  EXPECT_EQ(k[7], "pass");
  EXPECT_TRUE(r.err.empty()) << r.err;
}

TEST(ProductTrace, EtaleReferenceAgrees) {
  const auto r = run({"product-trace", "--spec", "{p:2,e:1,factors:[[1,2]]}", "--x", "[[[1]]]", "--r", "2",
                      "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto k = split(lines(r.out)[2]);
  EXPECT_EQ(k[2], "3");
  EXPECT_EQ(k[3], "3");
  EXPECT_EQ(k[8], "both-agree");
}

TEST(Poly, CubeOnSplitAlgebra) {
  const auto r = run({"poly", "--spec", "{p:2,e:1,factors:[[1,1],[1,1]]}", "--f", "0,0,0,1", "--b", "1",
                      "--allow-degree-one", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(split(ls.back())[3], "1");
}

TEST(Poly, LinearMatchesNormTrace) {
  const auto p = run({"poly", "--spec", kM2F2, "--f", "0,1", "--a", "0", "--b", "1", "--format", "csv"});
  ASSERT_EQ(p.code, kExitOk) << p.err;
  EXPECT_EQ(split(lines(p.out)[1])[3], "4");
}

TEST(Verify, SuiteDirectoryPasses) {
  const auto r = run({"verify", "--suite", "all", "--spec-dir", NORMTRACE_SUITE_DIR, "--format", "csv",
                      "--partitions", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_GT(ls.size(), 1u);
  EXPECT_EQ(ls[0], "suite,spec,a,b,r,value,main_term,error,bound,slack,status");
  EXPECT_NE(r.err.find("0 failed"), std::string::npos) << r.err;
  for (const auto& l : ls) EXPECT_EQ(l.find(",fail"), std::string::npos) << l;
}

TEST(Verify, OutputFileMatchesStdout) {
  const auto path = std::filesystem::temp_directory_path() / "normtrace_cli_test_report.csv";
  const std::vector<std::string> base = {"verify", "--suite", "norm-trace", "--spec", kM2F2, "--format", "csv",
                                         "--partitions", "2"};
  const auto stdout_run = run(base);
  auto args = base;
  args.insert(args.end(), {"--output", path.string()});
  const auto file_run = run(args);
  ASSERT_EQ(file_run.code, kExitOk) << file_run.err;
  EXPECT_TRUE(file_run.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), stdout_run.out);
  std::filesystem::remove(path);
}

TEST(Verify, SpecDirExcludesSpec) {
  const auto r = run({"verify", "--spec-dir", NORMTRACE_SUITE_DIR, "--spec", kM2F2});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("spec-dir"), std::string::npos);
}

TEST(Explore, ReportsConjectureRecordsOnly) {
  const auto r = run({"explore", "--spec", kM2F2, "--r", "2", "--format", "csv", "--partitions", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_GT(ls.size(), 1u);
  for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_EQ(ls[i].rfind("product-trace.conjecture,", 0), 0u) << ls[i];
}

TEST(Determinism, IdenticalInvocationsGiveIdenticalStdout) {
  const std::vector<std::vector<std::string>> invocations = {
      {"verify", "--suite", "all", "--spec-dir", NORMTRACE_SUITE_DIR, "--format", "csv", "--partitions", "4"},
      {"kloosterman", "--spec", "{p:3,e:1,factors:[[2,1]]}", "--partitions", "3"},
      {"explore", "--spec", kM2F2, "--r", "2,3", "--format", "structured", "--partitions", "2"},
  };
  for (const auto& args : invocations) {
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << args[0];
  }
}

}  // namespace
