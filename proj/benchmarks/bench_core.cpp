// Copyright 2026 The cvdkit Authors.
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

#include "cvdkit/adapt.hpp"
#include "cvdkit/plate.hpp"
#include "cvdkit/rng.hpp"
#include "cvdkit/screening.hpp"

using namespace cvd;

static void BM_SimulateColor(benchmark::State& state) {
  Rng rng(1);
  std::vector<LinearRGB> colors(1024);
  for (auto& c : colors) c = {rng.uniform(), rng.uniform(), rng.uniform()};
  const CVDProfile p(CVDKind::kDeutan, 0.7);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(colors[i++ & 1023], p));
  }
}
BENCHMARK(BM_SimulateColor);

static void BM_ToLab(benchmark::State& state) {
  std::uint8_t v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(to_lab(SRGB8{v, static_cast<std::uint8_t>(v * 3), static_cast<std::uint8_t>(v * 7)}));
    ++v;
  }
}
BENCHMARK(BM_ToLab);

static void BM_PackDisk(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(pack_disk(seed++));
}
BENCHMARK(BM_PackDisk)->Unit(benchmark::kMillisecond);

static void BM_VanishingPair(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pick_vanishing_pair(CVDProfile::full(CVDKind::kDeutan), 0.5, seed++));
  }
}
BENCHMARK(BM_VanishingPair)->Unit(benchmark::kMillisecond);

static void BM_ComposePlate(benchmark::State& state) {
  std::uint64_t seed = 0;
  const PlateDesign d{PlateKind::kVanishing, CVDKind::kProtan, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(compose_plate(d, "42", seed++));
}
BENCHMARK(BM_ComposePlate)->Unit(benchmark::kMillisecond);

static void BM_CreateBattery(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(create_battery(seed++));
}
BENCHMARK(BM_CreateBattery)->Unit(benchmark::kMillisecond);

static void BM_OptimizePalette(benchmark::State& state) {
  const Palette p{"ui",
                  {{"background", parse_hex("#FFFFFF"), true},
                   {"text", parse_hex("#212121"), true},
                   {"ok", parse_hex("#2E7D32")},
                   {"warn", parse_hex("#F9A825")},
                   {"bad", parse_hex("#C62828")},
                   {"link", parse_hex("#1565C0")}}};
  for (auto _ : state) benchmark::DoNotOptimize(optimize_palette(p, CVDProfile::full(CVDKind::kDeutan)));
}
BENCHMARK(BM_OptimizePalette)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
