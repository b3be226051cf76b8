// Serial vs OpenMP for each parallel kernel. The second argument selects
// the mode: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "snorm/analyzer.hpp"
#include "snorm/engine.hpp"
#include "snorm/expsum.hpp"

using namespace snorm;

namespace {

Exec mode(const benchmark::State& st) { return st.range(1) ? Exec::parallel : Exec::serial; }

NormalityProfile toy() {
  return validate_profile(nlohmann::json::parse(R"({"entries":[{"s":2,"M":[1]}],"n_max":2,"c":1,"seed":42})"));
}

void BM_FindBlock(benchmark::State& st) {
  Schedule sched(toy());
  const BigInt star = sched.phase(0).s_star;
  const std::uint64_t a = static_cast<std::uint64_t>(st.range(0));
  const SAdicNumber y{star, nat_pos(a, star), BigInt(12345)};
  const FindRequest req{0, a, sched.ell(0, 0), y, stream_seed(42, 1, 0), 256};
  for (auto _ : st) benchmark::DoNotOptimize(find_block(sched, req, mode(st)));
}
BENCHMARK(BM_FindBlock)->ArgsProduct({{400, 4000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_FirstSuccess(benchmark::State& st) {
  const std::uint64_t target = static_cast<std::uint64_t>(st.range(0));
  auto pred = [&](std::uint64_t i) {
    std::uint64_t h = i;
    for (int k = 0; k < 2000; ++k) h = mix64(h);
    return i >= target && (h & 1);
  };
  for (auto _ : st) benchmark::DoNotOptimize(first_success(1u << 20, 32, pred, mode(st)));
}
BENCHMARK(BM_FirstSuccess)->ArgsProduct({{1000}, {0, 1}});

void BM_ExpSum(benchmark::State& st) {
  ExpSumQuery q;
  q.x = Rational(BigInt(123456789), pow(BigInt(2), 60));
  q.bases = {BigInt(2), BigInt(3), BigInt(5), BigInt(7)};
  for (std::int64_t t = 1; t <= 20; ++t) q.ts.push_back(t);
  q.a = 10;
  q.ell = static_cast<std::uint64_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(exp_sum(q, mode(st)));
}
BENCHMARK(BM_ExpSum)->ArgsProduct({{40, 200}, {0, 1}});

void BM_DigitReport(benchmark::State& st) {
  const std::uint64_t prec = 20000;
  const SAdicNumber x{BigInt(2), prec, (pow(BigInt(2), prec) - 1) / 7};
  const std::uint64_t b = 13000;
  for (auto _ : st)
    benchmark::DoNotOptimize(digit_report(x, b, {2, 3, 5, 10}, {1000, 5000, static_cast<std::uint64_t>(st.range(0))}, mode(st)));
}
BENCHMARK(BM_DigitReport)->ArgsProduct({{5600}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SampleLowDiscrepancy(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(
        sample_low_discrepancy(2, 256, Rational(1, 10), static_cast<std::uint64_t>(st.range(0)), 10, mode(st)));
}
BENCHMARK(BM_SampleLowDiscrepancy)->ArgsProduct({{20000}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
