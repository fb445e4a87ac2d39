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

#ifndef PLANVEC_VECTORIZE_H_
#define PLANVEC_VECTORIZE_H_

#include <cstddef>
#include <vector>

#include "planvec/geometry.h"
#include "planvec/junctions.h"
#include "planvec/raster.h"
#include "planvec/tensor.h"

namespace planvec {

enum class Axis { kHorizontal, kVertical };

// Indices into the junction list handed to connect_walls; a < b.
struct WallSegment {
  std::size_t a;
  std::size_t b;
  Axis axis;
  friend bool operator==(const WallSegment&, const WallSegment&) = default;
};

struct VectorizeOptions {
  double align_tol = 5.0;
  int wall_thickness = 3;
  int min_area = 50;
  std::size_t polygon_cap = 10000;
  // Used for an opening whose footprint holds neither Window nor Door.
  int opening_label = kIconWindow;
};

// Links wall junctions p -> q when q is p's nearest aligned junction in one
// of p's directions d that has opposite(d), and p is likewise q's nearest
// such junction looking back. Non-wall points are ignored. Sorted by (a, b).
std::vector<WallSegment> connect_walls(const std::vector<JunctionPoint>& points,
                                       double align_tol);

// Pixel rectangle covered by a dilated wall segment, clipped to the canvas.
Polygon wall_polygon(const JunctionPoint& a, const JunctionPoint& b, Axis axis,
                     int thickness, int height, int width);

// Rasterises dilated segments, splits the remaining pixels into 4-connected
// faces, and emits each face of >= min_area pixels as a traced rectilinear
// ring labeled by majority vote of room_map over the face. Every segment
// also yields a Wall polygon.
std::vector<Polygon> skeleton_to_rooms(const std::vector<JunctionPoint>& points,
                                       const std::vector<WallSegment>& segments,
                                       const LabelMap& room_map,
                                       const VectorizeOptions& options = {});

// Greedy smallest-perimeter matching of aligned TL/TR/BR/BL icon corners.
// Rectangles whose icon_map majority is No Icon are discarded before
// matching. Throws kPolygonExplosion past options.polygon_cap candidates.
std::vector<Polygon> icons_from_corners(const std::vector<JunctionPoint>& points,
                                        const LabelMap& icon_map,
                                        const VectorizeOptions& options = {});

// Pairs right/left (or down/up) opening endpoints that sit on the same wall
// segment into wall-thick rectangles labeled Window or Door by icon_map.
std::vector<Polygon> openings_from_points(const std::vector<JunctionPoint>& openings,
                                          const std::vector<JunctionPoint>& walls,
                                          const std::vector<WallSegment>& segments,
                                          const LabelMap& icon_map,
                                          const VectorizeOptions& options = {});

// Drops self-intersecting polygons, then relabels each survivor by the
// majority class its paint footprint covers in the matching map, dropping
// background / No Icon majorities and polygons that paint nothing. Sorted
// by (layer, label, top-left vertex).
std::vector<Polygon> prune(std::vector<Polygon> polygons, const LabelMap& room_map,
                           const LabelMap& icon_map, const VectorizeOptions& options = {});

LabelMap rasterize_prediction(const std::vector<Polygon>& polygons, int height, int width,
                              PolygonLayer layer);

// Detector output: [44,H,W] = 21 junction heatmaps, 12 room scores,
// 11 icon scores.
inline constexpr int kDetectorChannels = 44;
inline constexpr int kRoomScoreOffset = 21;
inline constexpr int kIconScoreOffset = 33;

void check_detector_output(const Tensor& detector);

// Per-pixel argmax over channels [first, first + count); ties go to the
// lower class.
LabelMap argmax_labels(const Tensor& scores, int first_channel, int count);

struct Vectorized {
  std::vector<JunctionPoint> junctions;
  // Wall-kind subset of `junctions`; segment indices refer to this list.
  std::vector<JunctionPoint> walls;
  std::vector<WallSegment> segments;
  Annotation annotation;
};

// extract_junctions -> connect_walls -> skeleton_to_rooms +
// icons_from_corners + openings_from_points -> prune.
// Everything after peak extraction: walls, faces, icons, openings, pruning.
Vectorized vectorize_junctions(std::vector<JunctionPoint> junctions, const LabelMap& room_map,
                               const LabelMap& icon_map, const VectorizeOptions& options);

Vectorized vectorize_detector_output(const Tensor& detector, float threshold, int nms_radius,
                                     const VectorizeOptions& options,
                                     std::span<const int, kJunctionClassCount> channel_map);

}  // namespace planvec

#endif  // PLANVEC_VECTORIZE_H_
