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

#ifndef PLANVEC_TESTS_SUPPORT_SYNTHETIC_PLAN_H_
#define PLANVEC_TESTS_SUPPORT_SYNTHETIC_PLAN_H_

#include <cstdint>
#include <vector>

#include "planvec/geometry.h"
#include "planvec/image.h"
#include "planvec/junctions.h"
#include "planvec/tensor.h"

namespace planvec::testing {

struct PlanOptions {
  int size = 512;
  int grid = 16;      // wall lines sit on multiples of this
  int margin = 32;    // building outline inset
  int min_side = 48;  // smallest room side, wall line to wall line
  int min_rooms = 2;
  int max_rooms = 6;
};

// A rectilinear plan: guillotine-split rooms, 3-pixel walls, icons inside
// rooms and doors/windows cut into walls, plus the junctions an ideal
// detector would report for it.
struct SyntheticPlan {
  Annotation truth;
  std::vector<JunctionPoint> junctions;
  int room_count = 0;
};

SyntheticPlan make_plan(std::uint64_t seed, const PlanOptions& options = {});

// [44,H,W]: Gaussian peaks for the junctions, one-hot room and icon scores
// from the rasterized annotation.
Tensor ideal_detector(const Annotation& truth, const std::vector<JunctionPoint>& junctions,
                      float sigma = 1.5f);

// Same plan at `factor` times the resolution, as a detector run on an
// upscaled image would see it.
SyntheticPlan scale_plan(const SyntheticPlan& plan, int factor);

// Grey-on-white drawing of the annotation, RGB.
RasterImage render_plan(const Annotation& truth);

}  // namespace planvec::testing

#endif  // PLANVEC_TESTS_SUPPORT_SYNTHETIC_PLAN_H_
