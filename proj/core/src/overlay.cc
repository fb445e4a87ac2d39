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

#include "planvec/overlay.h"

#include <array>

#include "planvec/error.h"
#include "planvec/groundtruth.h"

namespace planvec {
namespace {

using Rgb = std::array<float, 3>;

// Distinct hues; index 0 of each layer is never drawn.
constexpr std::array<Rgb, 12> kRoomColours = {{{0, 0, 0},
                                               {0.55f, 0.80f, 0.45f},
                                               {0.20f, 0.20f, 0.20f},
                                               {0.95f, 0.60f, 0.20f},
                                               {0.95f, 0.85f, 0.30f},
                                               {0.45f, 0.60f, 0.95f},
                                               {0.35f, 0.85f, 0.90f},
                                               {0.85f, 0.45f, 0.75f},
                                               {0.55f, 0.45f, 0.35f},
                                               {0.70f, 0.70f, 0.55f},
                                               {0.60f, 0.60f, 0.75f},
                                               {0.80f, 0.80f, 0.80f}}};
constexpr std::array<Rgb, 11> kIconColours = {{{0, 0, 0},
                                               {0.10f, 0.60f, 1.00f},
                                               {1.00f, 0.20f, 0.20f},
                                               {0.60f, 0.30f, 0.10f},
                                               {1.00f, 0.90f, 0.00f},
                                               {0.00f, 0.80f, 0.60f},
                                               {0.00f, 0.50f, 0.80f},
                                               {0.80f, 0.50f, 0.30f},
                                               {1.00f, 0.40f, 0.00f},
                                               {0.30f, 0.90f, 1.00f},
                                               {0.50f, 0.20f, 0.50f}}};

void blend(const LabelMap& map, const auto& colours, float alpha, RasterImage& out, int x_off) {
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      const int c = map.at(y, x);
      const bool border = (x + 1 < map.width && map.at(y, x + 1) != c) ||
                          (y + 1 < map.height && map.at(y + 1, x) != c);
      if (c == 0 && !border) continue;
      for (int k = 0; k < 3; ++k) {
        float& v = out.at(y, x + x_off, k);
        if (border) {
          v *= 0.25f;
        } else {
          v = (1.0f - alpha) * v + alpha * colours[c][k];
        }
      }
    }
  }
}

void paint(const Annotation& a, RasterImage& out, int x_off) {
  blend(rasterize_annotation(a, PolygonLayer::kRooms), kRoomColours, 0.35f, out, x_off);
  blend(rasterize_annotation(a, PolygonLayer::kIcons), kIconColours, 0.6f, out, x_off);
}

}  // namespace

RasterImage render_overlay(const RasterImage& image, const Annotation& prediction,
                           const Annotation* truth) {
  auto check = [&](const Annotation& a) {
    if (a.height != image.height || a.width != image.width) {
      fail(ErrorKind::kDimensionMismatch, "overlay annotation does not match the image size");
    }
  };
  check(prediction);
  if (truth) check(*truth);
  const int panels = truth ? 2 : 1;
  RasterImage out(image.height, image.width * panels, 3);
  for (int p = 0; p < panels; ++p) {
    for (int y = 0; y < image.height; ++y) {
      for (int x = 0; x < image.width; ++x) {
        for (int k = 0; k < 3; ++k) {
          out.at(y, x + p * image.width, k) = image.at(y, x, image.channels == 3 ? k : 0);
        }
      }
    }
  }
  if (truth) {
    paint(*truth, out, 0);
    paint(prediction, out, image.width);
  } else {
    paint(prediction, out, 0);
  }
  return out;
}

}  // namespace planvec
