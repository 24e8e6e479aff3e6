#include <benchmark/benchmark.h>

#include "normtrace/normtrace.hpp"

using namespace normtrace;

namespace {

void BM_FieldBuild(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto k = static_cast<std::uint32_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(FiniteField::build(p, k));
}
BENCHMARK(BM_FieldBuild)->Args({2, 2})->Args({3, 2})->Args({2, 8})->Args({3, 5})->Args({7, 3});

void BM_UnitHistogram(benchmark::State& state, const char* text) {
  const auto spec = parse_spec(text);
  Execution exec;
  exec.partitions = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(trace_norm_table(spec, Domain::kUnits, exec));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * spec.unit_count()));
}
BENCHMARK_CAPTURE(BM_UnitHistogram, m2_f4, "{p:2,e:2,factors:[[2,1]]}")->Arg(1)->Arg(4);
BENCHMARK_CAPTURE(BM_UnitHistogram, m3_f2, "{p:2,e:1,factors:[[3,1]]}")->Arg(1)->Arg(4);
BENCHMARK_CAPTURE(BM_UnitHistogram, m2_f9_over_f3, "{p:3,e:1,factors:[[2,2]]}")->Arg(1)->Arg(4);

void BM_KloostermanDirect(benchmark::State& state, const char* text) {
  const auto spec = parse_spec(text);
  const AdditiveCharacter psi(spec.base_field(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(kloosterman_direct_all(spec, psi));
}
BENCHMARK_CAPTURE(BM_KloostermanDirect, m2_f3, "{p:3,e:1,factors:[[2,1]]}");
BENCHMARK_CAPTURE(BM_KloostermanDirect, m2_f9_over_f3, "{p:3,e:1,factors:[[2,2]]}");

void BM_ProductTraceSweep(benchmark::State& state, const char* text) {
  const auto spec = parse_spec(text);
  const AdditiveCharacter psi(spec.base_field(), 1);
  const Enumerator units(spec, Domain::kUnits);
  const auto r = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    for (std::uint64_t i = 0; i < units.size(); ++i) benchmark::DoNotOptimize(product_trace(units, r, i, psi));
  }
}
BENCHMARK_CAPTURE(BM_ProductTraceSweep, m2_f2, "{p:2,e:1,factors:[[2,1]]}")->Arg(2)->Arg(3);
BENCHMARK_CAPTURE(BM_ProductTraceSweep, m2_f3, "{p:3,e:1,factors:[[2,1]]}")->Arg(2);

void BM_GaussSumGL(benchmark::State& state) {
  const FieldPtr F = gf(2, 2);
  const AdditiveCharacter psi(F, 1);
  const MultiplicativeCharacter chi(F, 1);
  const auto d = static_cast<unsigned>(state.range(0));
  gauss_sum_gl(d, chi, psi);  // builds the cached GL_d table
  for (auto _ : state) benchmark::DoNotOptimize(gauss_sum_gl(d, chi, psi));
}
BENCHMARK(BM_GaussSumGL)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
