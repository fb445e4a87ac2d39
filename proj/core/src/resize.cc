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

#include <algorithm>
#include <cmath>

#include "planvec/error.h"
#include "planvec/upscale.h"

namespace planvec {
namespace {

double cubic_weight(double t) {
  constexpr double a = -0.5;
  t = std::abs(t);
  if (t <= 1.0) return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
  if (t < 2.0) return ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a;
  return 0.0;
}

struct Taps {
  int index[4];
  double weight[4];
};

std::vector<Taps> axis_taps(int in_size, int factor) {
  std::vector<Taps> taps(static_cast<std::size_t>(in_size) * factor);
  for (std::size_t o = 0; o < taps.size(); ++o) {
    const double src = (static_cast<double>(o) + 0.5) / factor - 0.5;
    const double base = std::floor(src);
    const double t = src - base;
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
      taps[o].index[k] = std::clamp(static_cast<int>(base) - 1 + k, 0, in_size - 1);
      taps[o].weight[k] = cubic_weight(t - (k - 1));
      total += taps[o].weight[k];
    }
    for (double& w : taps[o].weight) w /= total;
  }
  return taps;
}

}  // namespace

RasterImage bicubic_resize(const RasterImage& image, int factor) {
  if (factor < 1) fail(ErrorKind::kInvalidArgument, "resize factor must be >= 1");
  if (image.empty()) fail(ErrorKind::kInvalidArgument, "cannot resize an empty image");
  if (factor == 1) return image;

  const int h = image.height, w = image.width, c = image.channels;
  const auto xt = axis_taps(w, factor);
  const auto yt = axis_taps(h, factor);

  // Horizontal pass into a double buffer, then vertical.
  std::vector<double> rows(static_cast<std::size_t>(h) * w * factor * c);
  const std::size_t ow = static_cast<std::size_t>(w) * factor;
  for (int y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      for (int k = 0; k < c; ++k) {
        double acc = 0.0;
        for (int j = 0; j < 4; ++j) acc += xt[x].weight[j] * image.at(y, xt[x].index[j], k);
        rows[(y * ow + x) * c + k] = acc;
      }
    }
  }
  RasterImage out(h * factor, w * factor, c);
  for (int y = 0; y < out.height; ++y) {
    const Taps& ty = yt[y];
    for (std::size_t x = 0; x < ow; ++x) {
      for (int k = 0; k < c; ++k) {
        double acc = 0.0;
        for (int j = 0; j < 4; ++j) acc += ty.weight[j] * rows[(ty.index[j] * ow + x) * c + k];
        out.at(y, static_cast<int>(x), k) = static_cast<float>(std::clamp(acc, 0.0, 1.0));
      }
    }
  }
  return out;
}

bool sr_gate(int height, int width, int limit) {
  if (height <= 0 || width <= 0) {
    fail(ErrorKind::kInvalidArgument, "sr_gate needs positive dims");
  }
  return height < limit && width < limit;
}

}  // namespace planvec
