#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "viphon/lexicon.hpp"
#include "viphon/metrics.hpp"
#include "viphon/phonemic_head.hpp"
#include "viphon/tokenizer.hpp"

namespace {

// A transcript of `words` lexicon entries drawn with a fixed seed.
std::string transcript(std::size_t words) {
  const auto& lexicon = viphon::bundled_lexicon();
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, lexicon.size() - 1);
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) out += ' ';
    out += lexicon[pick(rng)];
  }
  return out;
}

void BM_Tokenize(benchmark::State& state) {
  const auto text = transcript(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(viphon::tokenize(text));
  state.SetComplexityN(state.range(0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Tokenize)->RangeMultiplier(4)->Range(16, 16384)->Complexity(benchmark::oN);

void BM_Detokenize(benchmark::State& state) {
  const auto syllables = viphon::tokenize(transcript(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(viphon::detokenize(syllables));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Detokenize)->Arg(1024);

void BM_EditDistance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> sym(0, 30);
  std::vector<int> a(n);
  std::vector<int> b(n);
  for (auto& x : a) x = sym(rng);
  for (auto& x : b) x = sym(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(viphon::edit_distance(std::span<const int>(a), std::span<const int>(b)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EditDistance)->RangeMultiplier(4)->Range(8, 512)->Complexity(benchmark::oNSquared);

void BM_Per(benchmark::State& state) {
  const auto ref = transcript(200);
  auto hyp = transcript(190);
  for (auto _ : state) benchmark::DoNotOptimize(viphon::per_components(ref, hyp));
}
BENCHMARK(BM_Per);

void BM_HeadLogits(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const viphon::head::Dims dims{d, 26, 165, 9};
  const auto params = viphon::head::HeadParams::random(dims, 3);
  Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(d, -1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(viphon::head::head_logits(f, params));
}
BENCHMARK(BM_HeadLogits)->Arg(8)->Arg(64)->Arg(256);

void BM_LossAndGradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const viphon::head::Dims dims{d, 26, 165, 9};
  const auto params = viphon::head::HeadParams::random(dims, 4);
  const auto batch = viphon::head::random_batch(dims, 16, 5);
  for (auto _ : state) benchmark::DoNotOptimize(viphon::head::loss_and_gradient(params, batch));
}
BENCHMARK(BM_LossAndGradient)->Arg(8)->Arg(64);

void BM_GradCheckToy(benchmark::State& state) {
  const auto toy = viphon::head::toy_config(6);
  for (auto _ : state) benchmark::DoNotOptimize(viphon::head::grad_check(toy.params, toy.batch));
}
BENCHMARK(BM_GradCheckToy);

}  // namespace
BENCHMARK_MAIN();
