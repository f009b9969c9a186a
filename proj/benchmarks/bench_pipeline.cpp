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

#include <cmath>
#include <random>

#include "dawct/dawct.hpp"
#include "dawct/guided_filter.hpp"
#include "dawct/metrics.hpp"
#include "dawct/parallel.hpp"

namespace {

dawct::ImageBuffer noisy_image(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(3 * static_cast<std::size_t>(n) * n);
  for (double& x : v) x = u(rng);
  return dawct::ImageBuffer(n, n, std::move(v));
}

dawct::DepthMap slope(int n) {
  dawct::Plane p(n, n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) p(y, x) = static_cast<double>(y) / (n - 1);
  }
  return dawct::DepthMap(std::move(p));
}

void BM_GuidedFilter(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto img = noisy_image(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dawct::guided_filter(img, img, dawct::GifParams{}));
}
BENCHMARK(BM_GuidedFilter)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
  const auto a = noisy_image(512, 2);
  const auto b = noisy_image(512, 3);
  for (auto _ : state) benchmark::DoNotOptimize(dawct::evaluate(a, b));
}
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);

// Full default pipeline; the argument is the worker count.
void BM_Stylize512(benchmark::State& state) {
  dawct::set_thread_count(static_cast<int>(state.range(0)));
  const auto content = noisy_image(512, 4);
  const auto style = noisy_image(512, 5);
  const auto d = slope(512);
  const dawct::DawctConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(dawct::stylize(content, style, d, d, cfg));
  dawct::set_thread_count(1);
}
BENCHMARK(BM_Stylize512)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
