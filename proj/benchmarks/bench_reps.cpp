#include <benchmark/benchmark.h>

#include <random>

#include "ob/reps.hpp"
#include "ob/verify.hpp"

namespace {

void BM_PsiLambdaMatrix(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const ob::Pyramid pyramid({2, 3, 2, 1, 1});
  const auto m = ob::random_parameters(rng, pyramid.levels());
  ob::FuzzBounds bounds;
  bounds.max_slices = static_cast<std::uint32_t>(state.range(0));
  std::vector<ob::SliceWord> words;
  for (int i = 0; i < 32; ++i) words.push_back(ob::random_slice_word(rng, bounds));
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(ob::psi_lambda_matrix<ob::Rational>(words[i++ % words.size()], pyramid, m));
}
BENCHMARK(BM_PsiLambdaMatrix)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
