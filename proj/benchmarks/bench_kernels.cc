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

#include "planvec/kernels.h"
#include "planvec/network.h"
#include "planvec/upscale.h"

namespace planvec {
namespace {

Tensor uniform(Shape dims, std::uint64_t seed) {
  Tensor t(std::move(dims));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  for (float& v : t.data()) v = u(rng);
  return t;
}

// 64 -> 64 channels, 3x3, the shape that dominates EDSR.
void BM_Conv2d3x3(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const Tensor in = uniform({64, side, side}, 1);
  const Tensor kernel = uniform({64, 64, 3, 3}, 2);
  const Tensor bias = uniform({64}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(conv2d(in, kernel, bias, 1, 1));
  state.SetItemsProcessed(state.iterations() * 64 * 64 * 9 * side * side);
}
BENCHMARK(BM_Conv2d3x3)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

// FSRCNN's 9x9 stride-2 deconvolution.
void BM_ConvTranspose9x9(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const Tensor in = uniform({56, side, side}, 4);
  const Tensor kernel = uniform({56, 1, 9, 9}, 5);
  const Tensor bias = uniform({1}, 6);
  for (auto _ : state) benchmark::DoNotOptimize(conv_transpose2d(in, kernel, bias, 2, 4, 1));
}
BENCHMARK(BM_ConvTranspose9x9)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_PixelShuffle(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const Tensor in = uniform({std::size_t(3 * r * r), 128, 128}, 7);
  for (auto _ : state) benchmark::DoNotOptimize(pixel_shuffle(in, r));
  state.SetBytesProcessed(state.iterations() * in.size() * sizeof(float));
}
BENCHMARK(BM_PixelShuffle)->Arg(2)->Arg(3)->Arg(4);

// End-to-end x2 upscale of a small RGB image with random weights.
void BM_Upscale(benchmark::State& state) {
  const auto arch = static_cast<Architecture>(state.range(0));
  const NetworkSpec spec = build_network(arch, 2);
  const WeightBundle weights = random_weights(spec, 8);
  RasterImage image(32, 32, 3);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  for (float& v : image.samples) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(upscale(spec, weights, image));
  state.SetLabel(std::string(display_name(arch)));
}
BENCHMARK(BM_Upscale)
    ->Arg(static_cast<int>(Architecture::kEspcn))
    ->Arg(static_cast<int>(Architecture::kFsrcnn))
    ->Arg(static_cast<int>(Architecture::kLapsrn))
    ->Arg(static_cast<int>(Architecture::kEdsr))
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace planvec
