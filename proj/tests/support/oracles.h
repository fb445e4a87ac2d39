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

#ifndef PLANVEC_TESTS_SUPPORT_ORACLES_H_
#define PLANVEC_TESTS_SUPPORT_ORACLES_H_

// Slow, straightforward reference implementations used only by tests.

#include <cstdint>
#include <vector>

#include "planvec/evaluate.h"
#include "planvec/geometry.h"
#include "planvec/image.h"
#include "planvec/junctions.h"
#include "planvec/raster.h"
#include "planvec/tensor.h"

namespace planvec::oracle {

// Quadruple loop with double accumulation.
Tensor conv2d_direct(const Tensor& input, const Tensor& kernel, const Tensor& bias, int stride,
                     int pad);

// Scatter form: every input sample adds kernel * value into the output.
Tensor conv_transpose2d_scatter(const Tensor& input, const Tensor& kernel, const Tensor& bias,
                                int stride, int pad, int output_padding);

// Gather form of the sub-pixel rearrangement, one output sample at a time.
Tensor pixel_shuffle_formula(const Tensor& input, int r);

// Evaluates the 4x4 Catmull-Rom kernel per output sample.
RasterImage bicubic_scalar(const RasterImage& image, int factor);

// Local-maximum test plus suppression checked against all accepted peaks.
std::vector<Peak> peaks_all_pairs(const std::vector<float>& plane, int height, int width,
                                  float threshold, int radius);

// Exact parametric segment tests in 64-bit integers; coordinates must be
// integral.
bool self_intersecting_exact(const std::vector<Point>& ring);

struct BruteMetrics {
  std::vector<double> precision, recall, f1;
  std::vector<std::uint64_t> support;
  double micro_precision, micro_recall, micro_f1;
};

// Per-class counts taken by scanning pixels once per class.
BruteMetrics metrics_by_counting(const LabelMap& pred, const LabelMap& truth);

// Even-odd ray-crossing test for one point.
bool point_in_polygon(const std::vector<Point>& ring, double x, double y);

}  // namespace planvec::oracle

#endif  // PLANVEC_TESTS_SUPPORT_ORACLES_H_
