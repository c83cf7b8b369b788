#include <benchmark/benchmark.h>

#include "ob/quotients.hpp"

namespace {

void BM_WalledBrauerTable(benchmark::State& state) {
  ob::AlgebraSpec spec;
  spec.delta = ob::Scalar(5L);
  spec.use_engine = state.range(1) != 0;
  const auto r = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ob::walled_brauer_algebra(r, 1, spec));
}
BENCHMARK(BM_WalledBrauerTable)->ArgsProduct({{1, 2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
