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

#include "planvec/raster.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "planvec/error.h"

namespace planvec {

int class_count(PolygonLayer layer) {
  return layer == PolygonLayer::kRooms ? kRoomClassCount : kIconClassCount;
}

LabelMap::LabelMap(int h, int w, int n, int fill) : height(h), width(w), n_classes(n) {
  if (h < 0 || w < 0) fail(ErrorKind::kInvalidArgument, "label map dims must be >= 0");
  if (n < 1 || n > 255) fail(ErrorKind::kInvalidArgument, "label map needs 1..255 classes");
  if (fill < 0 || fill >= n) fail(ErrorKind::kInvalidArgument, "fill class out of range");
  classes.assign(static_cast<std::size_t>(h) * w, static_cast<std::uint8_t>(fill));
}

void scan_fill(const std::vector<Point>& ring, int height, int width,
               const std::function<void(int, int, int)>& span) {
  const std::size_t n = ring.size();
  if (n < 3 || height <= 0 || width <= 0) return;
  double min_y = ring[0].y, max_y = ring[0].y;
  for (const Point& p : ring) {
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  // Rows whose centre y + 0.5 falls in [min_y, max_y].
  const int y_begin = std::max(0, static_cast<int>(std::ceil(min_y - 0.5)));
  const int y_end = std::min(height, static_cast<int>(std::ceil(max_y - 0.5)) + 1);

  std::vector<double> xs;
  for (int y = y_begin; y < y_end; ++y) {
    const double yc = y + 0.5;
    xs.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = ring[i];
      const Point& b = ring[(i + 1) % n];
      if ((a.y <= yc) != (b.y <= yc)) {
        xs.push_back(a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y));
      }
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // Pixel x is inside when xs[k] <= x + 0.5 < xs[k+1].
      const double lo = std::ceil(xs[k] - 0.5);
      const double hi = std::ceil(xs[k + 1] - 0.5);
      const int x0 = static_cast<int>(std::clamp(lo, 0.0, static_cast<double>(width)));
      const int x1 = static_cast<int>(std::clamp(hi, 0.0, static_cast<double>(width)));
      if (x1 > x0) span(y, x0, x1);
    }
  }
}

std::vector<std::size_t> paint_order(std::span<const Polygon> polygons, PolygonLayer layer) {
  std::vector<std::size_t> order;
  std::vector<double> area(polygons.size(), 0.0);
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    if (polygons[i].layer != layer) continue;
    order.push_back(i);
    area[i] = polygon_area(polygons[i]);
  }
  const bool rooms = layer == PolygonLayer::kRooms;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rooms) {
      const bool wa = polygons[a].label == kRoomWall, wb = polygons[b].label == kRoomWall;
      if (wa != wb) return wb;
    }
    return area[a] > area[b];
  });
  return order;
}

LabelMap rasterize_polygons(std::span<const Polygon> polygons, int height, int width,
                            PolygonLayer layer) {
  const int n_classes = class_count(layer);
  LabelMap map(height, width, n_classes, 0);
  for (std::size_t i : paint_order(polygons, layer)) {
    const Polygon& p = polygons[i];
    if (p.label < 0 || p.label >= n_classes) {
      fail(ErrorKind::kInvalidArgument, "polygon label " + std::to_string(p.label) +
                                            " outside the layer's classes");
    }
    const auto value = static_cast<std::uint8_t>(p.label);
    scan_fill(p.vertices, height, width, [&](int y, int x0, int x1) {
      std::fill(map.classes.begin() + static_cast<std::ptrdiff_t>(y) * width + x0,
                map.classes.begin() + static_cast<std::ptrdiff_t>(y) * width + x1, value);
    });
  }
  return map;
}

int majority(std::span<const std::uint64_t> votes) {
  int best = -1;
  std::uint64_t best_votes = 0;
  for (std::size_t c = 0; c < votes.size(); ++c) {
    if (votes[c] > best_votes) {
      best_votes = votes[c];
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace planvec
