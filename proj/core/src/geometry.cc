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

#include "planvec/geometry.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "planvec/error.h"

namespace planvec {
namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// Projects collinear segments onto their dominant axis and checks for a
// shared stretch of positive length.
bool collinear_overlap(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
  const bool use_x = std::abs(p2.x - p1.x) + std::abs(q2.x - q1.x) >=
                     std::abs(p2.y - p1.y) + std::abs(q2.y - q1.y);
  auto coord = [use_x](const Point& p) { return use_x ? p.x : p.y; };
  const double lo = std::max(std::min(coord(p1), coord(p2)), std::min(coord(q1), coord(q2)));
  const double hi = std::min(std::max(coord(p1), coord(p2)), std::max(coord(q1), coord(q2)));
  return hi > lo;
}

bool edges_conflict(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
  const int o1 = sign(cross(p1, p2, q1));
  const int o2 = sign(cross(p1, p2, q2));
  const int o3 = sign(cross(q1, q2, p1));
  const int o4 = sign(cross(q1, q2, p2));
  if (o1 == 0 && o2 == 0) return collinear_overlap(p1, p2, q1, q2);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

// Adjacent edges share `shared`; they conflict when they leave it in the
// same direction.
bool adjacent_fold(const Point& shared, const Point& a, const Point& b) {
  if (sign(cross(shared, a, b)) != 0) return false;
  const double dot = (a.x - shared.x) * (b.x - shared.x) + (a.y - shared.y) * (b.y - shared.y);
  return dot > 0.0;
}

}  // namespace

void validate_polygon(const Polygon& polygon) {
  const auto& v = polygon.vertices;
  if (v.size() < 3) {
    fail(ErrorKind::kInvalidArgument,
         "polygon needs >= 3 vertices, has " + std::to_string(v.size()));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == v[(i + 1) % v.size()]) {
      fail(ErrorKind::kInvalidArgument, "polygon repeats vertex " + std::to_string(i));
    }
  }
}

std::vector<Point> dedupe_ring(std::vector<Point> ring) {
  ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
  while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
  return ring;
}

double signed_area(const std::vector<Point>& ring) {
  double twice = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

double polygon_area(const Polygon& polygon) { return std::abs(signed_area(polygon.vertices)); }

Point top_left_vertex(const Polygon& polygon) {
  return *std::min_element(polygon.vertices.begin(), polygon.vertices.end(),
                           [](const Point& a, const Point& b) {
                             return a.y != b.y ? a.y < b.y : a.x < b.x;
                           });
}

Box bounding_box(const Polygon& polygon) {
  Box box{polygon.vertices.at(0).x, polygon.vertices[0].y, polygon.vertices[0].x,
          polygon.vertices[0].y};
  for (const Point& p : polygon.vertices) {
    box.x0 = std::min(box.x0, p.x);
    box.y0 = std::min(box.y0, p.y);
    box.x1 = std::max(box.x1, p.x);
    box.y1 = std::max(box.y1, p.y);
  }
  return box;
}

Polygon make_rect(double x0, double y0, double x1, double y1, int label, PolygonLayer layer) {
  return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, label, layer};
}

bool is_self_intersecting(const std::vector<Point>& ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;

  struct Edge {
    std::size_t index;
    double x0, x1, y0, y1;
  };
  std::vector<Edge> edges(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    edges[i] = {i, std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y),
                std::max(a.y, b.y)};
  }

  // Sweep along x; only edges whose x-extents overlap are tested exactly.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return edges[a].x0 != edges[b].x0 ? edges[a].x0 < edges[b].x0 : a < b;
  });

  std::vector<std::size_t> active;
  for (std::size_t k : order) {
    const Edge& e = edges[k];
    std::erase_if(active, [&](std::size_t a) { return edges[a].x1 < e.x0; });
    for (std::size_t a : active) {
      const Edge& f = edges[a];
      if (f.y1 < e.y0 || e.y1 < f.y0) continue;
      const std::size_t i = std::min(a, k), j = std::max(a, k);
      const Point& p1 = ring[i];
      const Point& p2 = ring[(i + 1) % n];
      const Point& q1 = ring[j];
      const Point& q2 = ring[(j + 1) % n];
      bool hit;
      if (j == i + 1) {
        hit = adjacent_fold(p2, p1, q2);
      } else if (i == 0 && j == n - 1) {
        hit = adjacent_fold(p1, p2, q1);
      } else {
        hit = edges_conflict(p1, p2, q1, q2);
      }
      if (hit) return true;
    }
    active.push_back(k);
  }
  return false;
}

bool is_self_intersecting(const Polygon& polygon) { return is_self_intersecting(polygon.vertices); }

}  // namespace planvec
