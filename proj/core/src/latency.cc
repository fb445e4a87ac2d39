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

#include "planvec/latency.h"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "planvec/error.h"
#include "planvec/upscale.h"

namespace planvec {

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

LatencyResult benchmark_latency(const NetworkSpec& spec, const WeightBundle& weights,
                                const RasterImage& image, int repetitions) {
  if (repetitions < 1) fail(ErrorKind::kInvalidArgument, "repetitions must be >= 1");
  LatencyResult result;
  result.samples.reserve(repetitions);
  const ExecutionOptions single_threaded{1};
  for (int i = 0; i < repetitions; ++i) {
    const auto start = std::chrono::steady_clock::now();
    RasterImage out = upscale(spec, weights, image, single_threaded);
    const auto stop = std::chrono::steady_clock::now();
    result.samples.push_back(std::chrono::duration<double>(stop - start).count());
  }
  result.median_seconds = median(result.samples);
  return result;
}

std::string render_latency_csv(const std::vector<LatencyRow>& rows) {
  static constexpr Architecture kColumns[] = {Architecture::kEdsr, Architecture::kEspcn,
                                              Architecture::kLapsrn, Architecture::kFsrcnn};
  std::string out = "image_size,edsr,espcn,lapsrn,fsrcnn\n";
  char buf[64];
  for (const LatencyRow& row : rows) {
    out += row.image_size;
    for (Architecture arch : kColumns) {
      out += ',';
      auto it = row.seconds.find(arch);
      if (it != row.seconds.end()) {
        std::snprintf(buf, sizeof(buf), "%.6f", it->second);
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace planvec
