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

#ifndef PLANVEC_RASTER_H_
#define PLANVEC_RASTER_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "planvec/geometry.h"

namespace planvec {

inline constexpr int kRoomClassCount = 12;
inline constexpr int kIconClassCount = 11;

// Room ids follow the room table: Background, Outdoor, Wall, Kitchen, ...
inline constexpr int kRoomBackground = 0;
inline constexpr int kRoomWall = 2;
// Icon ids: No Icon, Window, Door, ...
inline constexpr int kIconNone = 0;
inline constexpr int kIconWindow = 1;
inline constexpr int kIconDoor = 2;

int class_count(PolygonLayer layer);

// Per-pixel class raster, row-major.
struct LabelMap {
  int height = 0;
  int width = 0;
  int n_classes = 0;
  std::vector<std::uint8_t> classes;

  LabelMap() = default;
  LabelMap(int height, int width, int n_classes, int fill = 0);

  std::uint8_t& at(int y, int x) { return classes[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int y, int x) const { return classes[static_cast<std::size_t>(y) * width + x]; }
  std::size_t size() const noexcept { return classes.size(); }
  friend bool operator==(const LabelMap&, const LabelMap&) = default;
};

// Calls span(y, x_begin, x_end) for every run of pixels whose centre lies
// inside the ring under the even-odd rule, clipped to the canvas.
void scan_fill(const std::vector<Point>& ring, int height, int width,
               const std::function<void(int, int, int)>& span);

// Paint order for one layer: rooms go largest area first with Wall
// polygons after all other rooms; icons go largest area first. Ties keep
// input order. Polygons of the other layer are skipped.
std::vector<std::size_t> paint_order(std::span<const Polygon> polygons, PolygonLayer layer);

// Background (class 0) fill, then polygons in paint_order.
LabelMap rasterize_polygons(std::span<const Polygon> polygons, int height, int width,
                            PolygonLayer layer);

// Class with the most votes; ties go to the lower id. Returns -1 when all
// counts are zero.
int majority(std::span<const std::uint64_t> votes);

}  // namespace planvec

#endif  // PLANVEC_RASTER_H_
