#include <benchmark/benchmark.h>

#include <random>

#include "ob/rewrite.hpp"
#include "ob/verify.hpp"

namespace {

std::vector<ob::SliceWord> sample_words(std::uint32_t max_slices, std::size_t count) {
  std::mt19937_64 rng(17);
  ob::FuzzBounds bounds;
  bounds.max_slices = max_slices;
  std::vector<ob::SliceWord> words;
  for (std::size_t i = 0; i < count; ++i) words.push_back(ob::random_slice_word(rng, bounds));
  return words;
}

void BM_NormalizeFiltered(benchmark::State& state) {
  const ob::Engine engine;
  const auto words = sample_words(static_cast<std::uint32_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(engine.normalize(words[i++ % words.size()]));
}
BENCHMARK(BM_NormalizeFiltered)->Arg(4)->Arg(8)->Arg(12);

void BM_NormalizeGraded(benchmark::State& state) {
  const ob::Engine engine(ob::EngineMode::graded());
  const auto words = sample_words(static_cast<std::uint32_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(engine.normalize(words[i++ % words.size()]));
}
BENCHMARK(BM_NormalizeGraded)->Arg(4)->Arg(8)->Arg(12);

void BM_RelationSuite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ob::relation_suite());
}
BENCHMARK(BM_RelationSuite)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
