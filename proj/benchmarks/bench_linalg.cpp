// Copyright 2026 The dawct Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "dawct/dawct.hpp"
#include "dawct/linalg.hpp"

namespace {

dawct::FeatureTensor random_features(int c, int h, int w, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(c) * h * w);
  for (double& x : v) x = g(rng);
  return dawct::FeatureTensor(c, h, w, std::move(v));
}

void BM_SymEigen(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  const auto stats = dawct::compute_stats(random_features(c, 64, 64, 1));
  for (auto _ : state) benchmark::DoNotOptimize(dawct::sym_eigen(stats.cov));
}
BENCHMARK(BM_SymEigen)->Arg(3)->Arg(8)->Arg(27)->Arg(64);

void BM_ComputeStats(benchmark::State& state) {
  const auto t = random_features(static_cast<int>(state.range(0)), 256, 256, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dawct::compute_stats(t));
  state.SetItemsProcessed(state.iterations() * 256 * 256);
}
BENCHMARK(BM_ComputeStats)->Arg(3)->Arg(27);

void BM_WctTransfer(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  const auto fc = random_features(c, 256, 256, 3);
  const auto fs = random_features(c, 256, 256, 4);
  const auto sc = dawct::compute_stats(fc);
  const auto ss = dawct::compute_stats(fs);
  for (auto _ : state) benchmark::DoNotOptimize(dawct::wct_transfer(fc, sc, ss));
  state.SetItemsProcessed(state.iterations() * 256 * 256);
}
BENCHMARK(BM_WctTransfer)->Arg(3)->Arg(27);

}  // namespace
