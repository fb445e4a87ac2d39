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

#ifndef PLANVEC_IMAGE_H_
#define PLANVEC_IMAGE_H_

#include <filesystem>
#include <vector>

#include "planvec/tensor.h"

namespace planvec {

// Interleaved H x W x C image with float samples nominally in [0,1].
// Channels is 1 (luma) or 3 (RGB).
struct RasterImage {
  int height = 0;
  int width = 0;
  int channels = 1;
  std::vector<float> samples;

  RasterImage() = default;
  RasterImage(int height, int width, int channels, float fill = 0.0f);

  float& at(int y, int x, int c = 0) {
    return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  float at(int y, int x, int c = 0) const {
    return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  bool empty() const noexcept { return height == 0 || width == 0; }
};

void clamp_unit(RasterImage& image);

// [C,H,W] planar tensor <-> interleaved image.
Tensor to_planar(const RasterImage& image);
RasterImage from_planar(const Tensor& planar);

// BT.601 full-range conversions. Planes are Y, Cb, Cr with chroma centred
// at 0.5.
RasterImage rgb_to_ycbcr(const RasterImage& rgb);
RasterImage ycbcr_to_rgb(const RasterImage& ycbcr);
RasterImage to_luma(const RasterImage& image);

// 8/16-bit gray, gray+alpha, RGB, RGBA and palette PNGs are accepted;
// alpha is dropped. Output is 8-bit.
RasterImage read_png(const std::filesystem::path& path);
void write_png(const RasterImage& image, const std::filesystem::path& path);

}  // namespace planvec

#endif  // PLANVEC_IMAGE_H_
