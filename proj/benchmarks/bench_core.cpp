#include <benchmark/benchmark.h>

#include <cstdint>

#include "crossint/arith.hpp"
#include "crossint/bounds.hpp"
#include "crossint/family.hpp"
#include "crossint/kset.hpp"
#include "crossint/verification.hpp"

namespace {

void BM_LexRankRoundTrip(benchmark::State& state) {
  const int n = 30, k = 6;
  const std::uint64_t total = crossint::binomial_u64(n, k);
  std::uint64_t r = 0;
  for (auto _ : state) {
    const crossint::KSet s = crossint::lex_unrank(n, k, r);
    benchmark::DoNotOptimize(crossint::lex_rank(s));
    r = (r + 7919) % total;
  }
}
BENCHMARK(BM_LexRankRoundTrip);

void BM_MaximalPartner(benchmark::State& state) {
  const crossint::Family b =
      crossint::l_initial(7, 3, static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(crossint::maximal_partner(b, 3));
}
BENCHMARK(BM_MaximalPartner)->Arg(5)->Arg(15)->Arg(30);

void BM_Compress(benchmark::State& state) {
  const crossint::Family f =
      crossint::r_family(8, 3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crossint::compress(f));
}
BENCHMARK(BM_Compress)->Arg(2)->Arg(3);

void BM_DisjointnessShadow(benchmark::State& state) {
  const crossint::Family f = crossint::l_initial(10, 4, 60);
  for (auto _ : state)
    benchmark::DoNotOptimize(crossint::disjointness_shadow(f, 3));
}
BENCHMARK(BM_DisjointnessShadow);

void BM_LInitialScan(benchmark::State& state) {
  const crossint::TheoremParams p{7, 3, 3, 3, crossint::Rational(1, 10)};
  for (auto _ : state)
    benchmark::DoNotOptimize(crossint::l_initial_scan(p, {}));
}
BENCHMARK(BM_LInitialScan);

void BM_BruteForceCell(benchmark::State& state) {
  const crossint::TheoremParams p{6, 2, 3, 2, crossint::Rational(1)};
  for (auto _ : state)
    benchmark::DoNotOptimize(crossint::brute_force_max(p, {}));
}
BENCHMARK(BM_BruteForceCell)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
