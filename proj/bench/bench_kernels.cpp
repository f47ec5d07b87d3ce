// Copyright 2026 The avgdist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference versus OpenMP kernel, pairwise for each parallel hot spot:
// the distance histogram, the binomial lemma sweeps and exhaustive search.

#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "avgdist/codes.hpp"
#include "avgdist/lemmas.hpp"
#include "avgdist/search.hpp"

namespace {

using namespace avgdist;

Code random_code(int n, std::size_t M) {
  std::mt19937_64 rng(7);
  std::set<std::uint64_t> words;
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  while (words.size() < M) words.insert(rng() & mask);
  const std::vector<std::uint64_t> list(words.begin(), words.end());
  return Code::from_integers(n, list);
}

void BM_HistogramSerial(benchmark::State& state) {
  const Code code = random_code(48, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(distance_histogram_serial(code));
  state.SetComplexityN(state.range(0));
}

void BM_HistogramParallel(benchmark::State& state) {
  const Code code = random_code(48, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(distance_histogram(code));
  state.SetComplexityN(state.range(0));
}

void BM_SweepsSerial(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_all_sweeps(n_max, n_max + 1, {false, 1}));
}

void BM_SweepsParallel(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_all_sweeps(n_max, n_max + 1, {true, 0}));
}

SearchConfig search_config(int M) {
  SearchConfig cfg;
  cfg.n = 5;
  cfg.M = static_cast<std::uint64_t>(M);
  return cfg;
}

void BM_SearchSerialReference(benchmark::State& state) {
  const auto cfg = search_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_beta_serial(cfg));
}

void BM_SearchOneThread(benchmark::State& state) {
  auto cfg = search_config(static_cast<int>(state.range(0)));
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_beta(cfg));
}

void BM_SearchParallel(benchmark::State& state) {
  const auto cfg = search_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_beta(cfg));
}

}  // namespace

BENCHMARK(BM_HistogramSerial)->Arg(512)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistogramParallel)->Arg(512)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepsSerial)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepsParallel)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SearchSerialReference)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchOneThread)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchParallel)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
