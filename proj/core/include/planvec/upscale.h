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

#ifndef PLANVEC_UPSCALE_H_
#define PLANVEC_UPSCALE_H_

#include "planvec/image.h"
#include "planvec/kernels.h"
#include "planvec/network.h"
#include "planvec/tensorio.h"

namespace planvec {

// Catmull-Rom (a = -0.5) with edge-clamped taps and half-pixel centres.
// Output is clamped to [0,1].
RasterImage bicubic_resize(const RasterImage& image, int factor);

// Runs the network forward. Luma networks on RGB input upscale Y with the
// network and Cb/Cr bicubically; RGB networks on gray input replicate the
// plane and return the luma of the result. Only the final output is clamped.
RasterImage upscale(const NetworkSpec& spec, const WeightBundle& weights,
                    const RasterImage& image, const ExecutionOptions& options = {});

// Raw network forward on a [C,H,W] tensor, no clamping.
Tensor forward(const NetworkSpec& spec, const WeightBundle& weights,
               const Tensor& input, const ExecutionOptions& options = {});

inline constexpr int kDefaultGateLimit = 800;

// SR applies only to images strictly smaller than limit x limit.
bool sr_gate(int height, int width, int limit = kDefaultGateLimit);

}  // namespace planvec

#endif  // PLANVEC_UPSCALE_H_
