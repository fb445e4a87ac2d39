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

#ifndef PLANVEC_LATENCY_H_
#define PLANVEC_LATENCY_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "planvec/image.h"
#include "planvec/network.h"
#include "planvec/tensorio.h"

namespace planvec {

struct LatencyResult {
  double median_seconds = 0.0;
  std::vector<double> samples;  // one wall-clock time per repetition
};

// Times `repetitions` single-threaded end-to-end upscale calls.
LatencyResult benchmark_latency(const NetworkSpec& spec, const WeightBundle& weights,
                                const RasterImage& image, int repetitions);

double median(std::vector<double> values);

// One row of the latency table; columns are keyed by architecture.
struct LatencyRow {
  std::string image_size;  // "<width>x<height>"
  std::map<Architecture, double> seconds;
};

// Header "image_size,edsr,espcn,lapsrn,fsrcnn"; missing cells stay empty.
std::string render_latency_csv(const std::vector<LatencyRow>& rows);

}  // namespace planvec

#endif  // PLANVEC_LATENCY_H_
