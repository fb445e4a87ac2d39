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

#ifndef PLANVEC_GEOMETRY_H_
#define PLANVEC_GEOMETRY_H_

#include <vector>

namespace planvec {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

enum class PolygonLayer { kRooms, kIcons };

// Implicitly closed ring of >= 3 vertices with no consecutive duplicates.
// Coordinates are in pixel-corner units: pixel (x, y) spans [x,x+1]x[y,y+1].
struct Polygon {
  std::vector<Point> vertices;
  int label = 0;
  PolygonLayer layer = PolygonLayer::kRooms;
  friend bool operator==(const Polygon&, const Polygon&) = default;
};

// Labeled polygons on a canvas; used both for parsed ground truth and for
// post-processed predictions.
struct Annotation {
  int height = 0;
  int width = 0;
  std::vector<Polygon> rooms;
  std::vector<Polygon> icons;
  friend bool operator==(const Annotation&, const Annotation&) = default;
};

// Throws kInvalidArgument when the ring has < 3 vertices or repeats a
// vertex consecutively (including last == first).
void validate_polygon(const Polygon& polygon);

// Drops consecutive duplicates, including a closing repeat of the first
// vertex.
std::vector<Point> dedupe_ring(std::vector<Point> ring);

double signed_area(const std::vector<Point>& ring);
double polygon_area(const Polygon& polygon);

// Smallest (y, x) vertex.
Point top_left_vertex(const Polygon& polygon);

struct Box {
  double x0, y0, x1, y1;
};
Box bounding_box(const Polygon& polygon);

// Rectangle [x0,x1] x [y0,y1] as a 4-vertex ring (clockwise in image space).
Polygon make_rect(double x0, double y0, double x1, double y1, int label, PolygonLayer layer);

// True iff two non-adjacent edges cross at a point interior to both, or
// overlap collinearly over a positive length; adjacent edges count only
// when they fold back over each other. Touching at a single point does not
// count.
bool is_self_intersecting(const Polygon& polygon);
bool is_self_intersecting(const std::vector<Point>& ring);

}  // namespace planvec

#endif  // PLANVEC_GEOMETRY_H_
