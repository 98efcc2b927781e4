#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "isoq/bargmann.hpp"
#include "isoq/cosets.hpp"
#include "isoq/numerics.hpp"
#include "isoq/poincare.hpp"

using namespace isoq;

static void BM_InnerProduct(benchmark::State& st) {
  const double p = static_cast<double>(st.range(0)) / kPi;
  const auto one = [](double) { return cplx(1.0); };
  const auto a = make_bs_circle({{0.0, 0.0}, 1.0}, p, one).second;
  const auto b = make_bs_circle({{1.0, 0.0}, std::sqrt(2.0)}, p, one).second;
  for (auto _ : st) benchmark::DoNotOptimize(inner_product(a, b));
  st.counters["nodes"] = static_cast<double>(a.nodes.size() + b.nodes.size());
}
BENCHMARK(BM_InnerProduct)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_KatokSeries(benchmark::State& st) {
  const auto table = coset_reps({2, 1, 1, 1}, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(katok_series(8, table, {0.1, 1.1}));
  st.counters["cosets"] = static_cast<double>(table.representatives.size());
}
BENCHMARK(BM_KatokSeries)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);

static void BM_CosetEnumeration(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(coset_reps({2, 1, 1, 1}, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_CosetEnumeration)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_DetSqrt(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  RealMatrix A = RealMatrix::Identity(k, k), B(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) B(i, j) = std::sin(1.0 + i + 2 * j) + std::sin(1.0 + j + 2 * i);
  for (auto _ : st) benchmark::DoNotOptimize(det_sqrt_continued(A, B));
}
BENCHMARK(BM_DetSqrt)->Arg(2)->Arg(6)->Arg(12);
BENCHMARK_MAIN();
