// Copyright 2026 The planvec Authors. All Rights Reserved.
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


#include <benchmark/benchmark.h>

#include <random>

#include "planvec/geometry.h"
#include "planvec/junctions.h"
#include "planvec/vectorize.h"
#include "synthetic_plan.h"

namespace planvec {
namespace {

void BM_ExtractJunctions(benchmark::State& state) {
  testing::PlanOptions options;
  options.size = static_cast<int>(state.range(0));
  const auto plan = testing::make_plan(1, options);
  const Tensor detector = testing::ideal_detector(plan.truth, plan.junctions);
  const auto map = identity_channel_map();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        extract_junctions(detector, map, kDefaultThreshold, kDefaultNmsRadius));
  }
}
BENCHMARK(BM_ExtractJunctions)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SelfIntersection(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> c(0.0, 100.0);
  std::vector<std::vector<Point>> rings(256);
  for (auto& ring : rings) {
    ring.resize(static_cast<std::size_t>(state.range(0)));
    for (Point& p : ring) p = {c(rng), c(rng)};
  }
  for (auto _ : state) {
    int count = 0;
    for (const auto& ring : rings) count += is_self_intersecting(ring);
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * rings.size());
}
BENCHMARK(BM_SelfIntersection)->Arg(4)->Arg(12)->Arg(64);

void BM_Prune(benchmark::State& state) {
  const auto plan = testing::make_plan(3);
  const Tensor detector = testing::ideal_detector(plan.truth, plan.junctions);
  const LabelMap rooms = argmax_labels(detector, kRoomScoreOffset, kRoomClassCount);
  const LabelMap icons = argmax_labels(detector, kIconScoreOffset, kIconClassCount);
  std::vector<Polygon> polygons = plan.truth.rooms;
  polygons.insert(polygons.end(), plan.truth.icons.begin(), plan.truth.icons.end());
  for (auto _ : state) benchmark::DoNotOptimize(prune(polygons, rooms, icons));
}
BENCHMARK(BM_Prune)->Unit(benchmark::kMillisecond);

void BM_VectorizeDetectorOutput(benchmark::State& state) {
  const auto plan = testing::make_plan(4);
  const Tensor detector = testing::ideal_detector(plan.truth, plan.junctions);
  const auto map = identity_channel_map();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        vectorize_detector_output(detector, kDefaultThreshold, kDefaultNmsRadius, {}, map));
  }
}
BENCHMARK(BM_VectorizeDetectorOutput)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace planvec
