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

#ifndef PLANVEC_OVERLAY_H_
#define PLANVEC_OVERLAY_H_

#include "planvec/geometry.h"
#include "planvec/image.h"

namespace planvec {

// RGB copy of `image` with room and icon polygons blended in per-class
// colours and their region borders darkened. With `truth`, the result is
// twice as wide: ground truth on the left, prediction on the right.
RasterImage render_overlay(const RasterImage& image, const Annotation& prediction,
                           const Annotation* truth = nullptr);

}  // namespace planvec

#endif  // PLANVEC_OVERLAY_H_
