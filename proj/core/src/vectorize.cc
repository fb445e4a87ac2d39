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

#include "planvec/vectorize.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include "planvec/error.h"

namespace planvec {
namespace {

struct Offset {
  double along;   // distance travelled in the search direction
  double across;  // misalignment perpendicular to it
};

Offset offset(const JunctionPoint& from, const JunctionPoint& to, Direction d) {
  const double dx = to.x - from.x, dy = to.y - from.y;
  switch (d) {
    case kRight: return {dx, std::abs(dy)};
    case kLeft: return {-dx, std::abs(dy)};
    case kDown: return {dy, std::abs(dx)};
    case kUp: return {-dy, std::abs(dx)};
  }
  return {0.0, 0.0};
}

std::optional<std::size_t> nearest_compatible(const std::vector<JunctionPoint>& points,
                                              std::size_t from, Direction d, double tol) {
  std::optional<std::size_t> best;
  Offset best_off{0.0, 0.0};
  const Direction want = opposite(d);
  for (std::size_t q = 0; q < points.size(); ++q) {
    if (q == from || points[q].kind() != JunctionKind::kWall) continue;
    if ((points[q].directions() & want) == 0) continue;
    const Offset o = offset(points[from], points[q], d);
    if (o.along <= 0.0 || o.across > tol) continue;
    if (!best || o.along < best_off.along ||
        (o.along == best_off.along && o.across < best_off.across)) {
      best = q;
      best_off = o;
    }
  }
  return best;
}

std::uint64_t pixel_count(const Box& box) {
  return static_cast<std::uint64_t>(std::max(0.0, box.x1 - box.x0) *
                                    std::max(0.0, box.y1 - box.y0));
}

// Majority vote of `map` over the pixels whose centres lie in the ring.
std::vector<std::uint64_t> votes_inside(const std::vector<Point>& ring, const LabelMap& map) {
  std::vector<std::uint64_t> votes(map.n_classes, 0);
  scan_fill(ring, map.height, map.width, [&](int y, int x0, int x1) {
    const std::uint8_t* row = map.classes.data() + static_cast<std::size_t>(y) * map.width;
    for (int x = x0; x < x1; ++x) ++votes[row[x]];
  });
  return votes;
}

// Traces the outer crack boundary of the 4-connected component `id`,
// starting from its first pixel in row-major order. The region stays on the
// right-hand side of travel; only direction changes become vertices.
std::vector<Point> trace_outline(const std::vector<int>& component, int height, int width,
                                 int id, int start_x, int start_y) {
  auto inside = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < width && y < height &&
           component[static_cast<std::size_t>(y) * width + x] == id;
  };
  // 0 = east, 1 = south, 2 = west, 3 = north.
  static constexpr int kDx[4] = {1, 0, -1, 0};
  static constexpr int kDy[4] = {0, 1, 0, -1};
  auto ahead = [&](int cx, int cy, int dir, bool right) {
    switch (dir) {
      case 0: return right ? inside(cx, cy) : inside(cx, cy - 1);
      case 1: return right ? inside(cx - 1, cy) : inside(cx, cy);
      case 2: return right ? inside(cx - 1, cy - 1) : inside(cx - 1, cy);
      default: return right ? inside(cx, cy - 1) : inside(cx - 1, cy - 1);
    }
  };

  std::vector<Point> ring;
  int cx = start_x, cy = start_y, dir = 3;
  do {
    int next;
    if (ahead(cx, cy, dir, true)) {
      next = ahead(cx, cy, dir, false) ? (dir + 3) % 4 : dir;
    } else {
      next = (dir + 1) % 4;
    }
    if (next != dir) ring.push_back({static_cast<double>(cx), static_cast<double>(cy)});
    dir = next;
    cx += kDx[dir];
    cy += kDy[dir];
  } while (cx != start_x || cy != start_y);
  return ring;
}

}  // namespace

std::vector<WallSegment> connect_walls(const std::vector<JunctionPoint>& points,
                                       double align_tol) {
  std::set<std::tuple<std::size_t, std::size_t, Axis>> found;
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (points[p].kind() != JunctionKind::kWall) continue;
    for (Direction d : kDirections) {
      if ((points[p].directions() & d) == 0) continue;
      const auto q = nearest_compatible(points, p, d, align_tol);
      if (!q) continue;
      const auto back = nearest_compatible(points, *q, opposite(d), align_tol);
      if (back != p) continue;
      const Axis axis = (d == kLeft || d == kRight) ? Axis::kHorizontal : Axis::kVertical;
      found.emplace(std::min(p, *q), std::max(p, *q), axis);
    }
  }
  std::vector<WallSegment> segments;
  segments.reserve(found.size());
  for (const auto& [a, b, axis] : found) segments.push_back({a, b, axis});
  return segments;
}

Polygon wall_polygon(const JunctionPoint& a, const JunctionPoint& b, Axis axis, int thickness,
                     int height, int width) {
  const int half = (thickness - 1) / 2;
  double x0, x1, y0, y1;
  if (axis == Axis::kHorizontal) {
    const double yc = std::round(0.5 * (a.y + b.y));
    x0 = std::min(a.x, b.x) - half;
    x1 = std::max(a.x, b.x) - half + thickness;
    y0 = yc - half;
    y1 = yc - half + thickness;
  } else {
    const double xc = std::round(0.5 * (a.x + b.x));
    y0 = std::min(a.y, b.y) - half;
    y1 = std::max(a.y, b.y) - half + thickness;
    x0 = xc - half;
    x1 = xc - half + thickness;
  }
  x0 = std::clamp(x0, 0.0, static_cast<double>(width));
  x1 = std::clamp(x1, 0.0, static_cast<double>(width));
  y0 = std::clamp(y0, 0.0, static_cast<double>(height));
  y1 = std::clamp(y1, 0.0, static_cast<double>(height));
  return make_rect(x0, y0, x1, y1, kRoomWall, PolygonLayer::kRooms);
}

std::vector<Polygon> skeleton_to_rooms(const std::vector<JunctionPoint>& points,
                                       const std::vector<WallSegment>& segments,
                                       const LabelMap& room_map,
                                       const VectorizeOptions& options) {
  const int height = room_map.height, width = room_map.width;
  if (room_map.n_classes != kRoomClassCount) {
    fail(ErrorKind::kDimensionMismatch, "room map must have 12 classes");
  }
  if (options.wall_thickness < 1) fail(ErrorKind::kInvalidArgument, "wall thickness must be >= 1");
  const std::size_t n_pixels = static_cast<std::size_t>(height) * width;

  std::vector<Polygon> walls;
  std::vector<int> component(n_pixels, -1);
  constexpr int kWallPixel = -2;
  for (const WallSegment& s : segments) {
    if (s.a >= points.size() || s.b >= points.size()) {
      fail(ErrorKind::kInvalidArgument, "wall segment refers to a missing junction");
    }
    Polygon wall = wall_polygon(points[s.a], points[s.b], s.axis, options.wall_thickness,
                                height, width);
    const Box box = bounding_box(wall);
    if (pixel_count(box) == 0) continue;
    for (int y = static_cast<int>(box.y0); y < static_cast<int>(box.y1); ++y) {
      for (int x = static_cast<int>(box.x0); x < static_cast<int>(box.x1); ++x) {
        component[static_cast<std::size_t>(y) * width + x] = kWallPixel;
      }
    }
    walls.push_back(std::move(wall));
  }

  std::vector<Polygon> faces;
  std::deque<std::size_t> queue;
  int next_id = 0;
  for (std::size_t seed = 0; seed < n_pixels; ++seed) {
    if (component[seed] != -1) continue;
    const int id = next_id++;
    std::vector<std::uint64_t> votes(kRoomClassCount, 0);
    std::uint64_t area = 0;
    component[seed] = id;
    queue.push_back(seed);
    while (!queue.empty()) {
      const std::size_t idx = queue.front();
      queue.pop_front();
      ++area;
      ++votes[room_map.classes[idx]];
      const int x = static_cast<int>(idx % width), y = static_cast<int>(idx / width);
      const std::size_t nbrs[4] = {
          x > 0 ? idx - 1 : n_pixels, x + 1 < width ? idx + 1 : n_pixels,
          y > 0 ? idx - width : n_pixels, y + 1 < height ? idx + width : n_pixels};
      for (std::size_t nb : nbrs) {
        if (nb < n_pixels && component[nb] == -1) {
          component[nb] = id;
          queue.push_back(nb);
        }
      }
    }
    if (area < static_cast<std::uint64_t>(std::max(options.min_area, 0))) continue;
    Polygon face;
    face.layer = PolygonLayer::kRooms;
    face.label = majority(votes);
    face.vertices = trace_outline(component, height, width, id, static_cast<int>(seed % width),
                                  static_cast<int>(seed / width));
    faces.push_back(std::move(face));
  }

  faces.insert(faces.end(), std::make_move_iterator(walls.begin()),
               std::make_move_iterator(walls.end()));
  return faces;
}

std::vector<Polygon> icons_from_corners(const std::vector<JunctionPoint>& points,
                                        const LabelMap& icon_map,
                                        const VectorizeOptions& options) {
  const double tol = options.align_tol;
  std::array<std::vector<std::size_t>, 4> by_corner;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int c = points[i].class_id;
    if (c >= kIconTopLeft && c <= kIconBottomLeft) by_corner[c - kIconTopLeft].push_back(i);
  }
  const auto& tls = by_corner[0];
  const auto& trs = by_corner[1];
  const auto& brs = by_corner[2];
  const auto& bls = by_corner[3];

  struct Candidate {
    std::array<std::size_t, 4> corners;  // tl, tr, br, bl
    double perimeter;
    Polygon rect;
  };
  std::vector<Candidate> candidates;
  std::size_t geometric = 0;
  auto aligned = [tol](double a, double b) { return std::abs(a - b) <= tol; };

  for (std::size_t tl : tls) {
    const JunctionPoint& TL = points[tl];
    for (std::size_t tr : trs) {
      const JunctionPoint& TR = points[tr];
      if (TR.x <= TL.x || !aligned(TR.y, TL.y)) continue;
      for (std::size_t bl : bls) {
        const JunctionPoint& BL = points[bl];
        if (BL.y <= TL.y || !aligned(BL.x, TL.x)) continue;
        for (std::size_t br : brs) {
          const JunctionPoint& BR = points[br];
          if (BR.y <= TR.y || BR.x <= BL.x || !aligned(BR.x, TR.x) || !aligned(BR.y, BL.y)) {
            continue;
          }
          if (++geometric > options.polygon_cap) {
            fail(ErrorKind::kPolygonExplosion,
                 "more than " + std::to_string(options.polygon_cap) +
                     " icon rectangle candidates from " + std::to_string(points.size()) +
                     " corners");
          }
          const double x0 = 0.5 * (TL.x + BL.x), x1 = 0.5 * (TR.x + BR.x) + 1.0;
          const double y0 = 0.5 * (TL.y + TR.y), y1 = 0.5 * (BL.y + BR.y) + 1.0;
          Polygon rect = make_rect(x0, y0, x1, y1, kIconNone, PolygonLayer::kIcons);
          const int label = majority(votes_inside(rect.vertices, icon_map));
          if (label <= kIconNone) continue;
          rect.label = label;
          candidates.push_back({{tl, tr, br, bl}, 2.0 * ((x1 - x0) + (y1 - y0)), std::move(rect)});
        }
      }
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.perimeter != b.perimeter ? a.perimeter < b.perimeter : a.corners < b.corners;
  });
  std::vector<bool> used(points.size(), false);
  std::vector<Polygon> icons;
  for (Candidate& c : candidates) {
    if (std::any_of(c.corners.begin(), c.corners.end(), [&](std::size_t i) { return used[i]; })) {
      continue;
    }
    for (std::size_t i : c.corners) used[i] = true;
    icons.push_back(std::move(c.rect));
  }
  return icons;
}

std::vector<Polygon> openings_from_points(const std::vector<JunctionPoint>& openings,
                                          const std::vector<JunctionPoint>& walls,
                                          const std::vector<WallSegment>& segments,
                                          const LabelMap& icon_map,
                                          const VectorizeOptions& options) {
  const double tol = options.align_tol;
  const int half = (options.wall_thickness - 1) / 2;

  struct Line {
    Axis axis;
    double level;     // y for horizontal walls, x for vertical ones
    double lo, hi;    // extent along the wall
  };
  std::vector<Line> lines;
  for (const WallSegment& s : segments) {
    const JunctionPoint& a = walls.at(s.a);
    const JunctionPoint& b = walls.at(s.b);
    if (s.axis == Axis::kHorizontal) {
      lines.push_back({s.axis, std::round(0.5 * (a.y + b.y)), double(std::min(a.x, b.x)),
                       double(std::max(a.x, b.x))});
    } else {
      lines.push_back({s.axis, std::round(0.5 * (a.x + b.x)), double(std::min(a.y, b.y)),
                       double(std::max(a.y, b.y))});
    }
  }
  // Closest wall line of `axis` that both points sit on.
  auto shared_line = [&](const JunctionPoint& p, const JunctionPoint& q,
                         Axis axis) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const Line& l = lines[i];
      if (l.axis != axis) continue;
      auto on = [&](const JunctionPoint& j) {
        const double level = axis == Axis::kHorizontal ? j.y : j.x;
        const double along = axis == Axis::kHorizontal ? j.x : j.y;
        return std::abs(level - l.level) <= tol && along >= l.lo - tol && along <= l.hi + tol;
      };
      if (!on(p) || !on(q)) continue;
      const double gap = std::abs((axis == Axis::kHorizontal ? p.y : p.x) - l.level);
      if (gap < best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    return best;
  };

  struct Pair {
    double length;
    std::size_t p, q, line;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < openings.size(); ++i) {
    const JunctionPoint& p = openings[i];
    if (p.class_id != kOpeningRight && p.class_id != kOpeningDown) continue;
    const bool horizontal = p.class_id == kOpeningRight;
    const int partner = horizontal ? kOpeningLeft : kOpeningUp;
    for (std::size_t j = 0; j < openings.size(); ++j) {
      const JunctionPoint& q = openings[j];
      if (q.class_id != partner) continue;
      const double along = horizontal ? q.x - p.x : q.y - p.y;
      const double across = horizontal ? std::abs(q.y - p.y) : std::abs(q.x - p.x);
      if (along <= 0.0 || across > tol) continue;
      const auto line = shared_line(p, q, horizontal ? Axis::kHorizontal : Axis::kVertical);
      if (!line) continue;
      pairs.push_back({along, i, j, *line});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return std::tie(a.length, a.p, a.q) < std::tie(b.length, b.p, b.q);
  });

  std::vector<bool> used(openings.size(), false);
  std::vector<Polygon> result;
  for (const Pair& pr : pairs) {
    if (used[pr.p] || used[pr.q]) continue;
    used[pr.p] = used[pr.q] = true;
    const JunctionPoint& p = openings[pr.p];
    const JunctionPoint& q = openings[pr.q];
    const Line& l = lines[pr.line];
    Polygon rect;
    if (l.axis == Axis::kHorizontal) {
      rect = make_rect(p.x, l.level - half, q.x + 1.0, l.level - half + options.wall_thickness,
                       options.opening_label, PolygonLayer::kIcons);
    } else {
      rect = make_rect(l.level - half, p.y, l.level - half + options.wall_thickness, q.y + 1.0,
                       options.opening_label, PolygonLayer::kIcons);
    }
    const auto votes = votes_inside(rect.vertices, icon_map);
    if (votes[kIconWindow] > 0 || votes[kIconDoor] > 0) {
      rect.label = votes[kIconDoor] > votes[kIconWindow] ? kIconDoor : kIconWindow;
    }
    result.push_back(std::move(rect));
  }
  return result;
}

std::vector<Polygon> prune(std::vector<Polygon> polygons, const LabelMap& room_map,
                           const LabelMap& icon_map, const VectorizeOptions& options) {
  if (polygons.size() > options.polygon_cap) {
    fail(ErrorKind::kPolygonExplosion, std::to_string(polygons.size()) +
                                           " candidate polygons exceed the cap of " +
                                           std::to_string(options.polygon_cap));
  }
  std::erase_if(polygons, [](const Polygon& p) {
    return p.vertices.size() < 3 || is_self_intersecting(p);
  });

  std::vector<bool> keep(polygons.size(), true);
  for (PolygonLayer layer : {PolygonLayer::kRooms, PolygonLayer::kIcons}) {
    const LabelMap& map = layer == PolygonLayer::kRooms ? room_map : icon_map;
    const std::vector<std::size_t> order = paint_order(polygons, layer);
    if (order.empty()) continue;
    if (map.n_classes != class_count(layer)) {
      fail(ErrorKind::kDimensionMismatch, "segmentation map has the wrong class count");
    }
    // Footprint = the pixels each polygon still owns after painting.
    std::vector<int> owner(map.size(), -1);
    for (std::size_t i : order) {
      scan_fill(polygons[i].vertices, map.height, map.width, [&](int y, int x0, int x1) {
        std::fill(owner.begin() + static_cast<std::ptrdiff_t>(y) * map.width + x0,
                  owner.begin() + static_cast<std::ptrdiff_t>(y) * map.width + x1,
                  static_cast<int>(i));
      });
    }
    std::vector<std::uint64_t> votes(polygons.size() * map.n_classes, 0);
    for (std::size_t px = 0; px < owner.size(); ++px) {
      if (owner[px] >= 0) ++votes[owner[px] * map.n_classes + map.classes[px]];
    }
    for (std::size_t i : order) {
      const int m = majority(std::span<const std::uint64_t>(
          votes.data() + i * map.n_classes, static_cast<std::size_t>(map.n_classes)));
      if (m <= 0) {
        keep[i] = false;
      } else {
        polygons[i].label = m;
      }
    }
  }

  std::vector<Polygon> kept;
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    if (keep[i]) kept.push_back(std::move(polygons[i]));
  }
  std::stable_sort(kept.begin(), kept.end(), [](const Polygon& a, const Polygon& b) {
    if (a.layer != b.layer) return a.layer < b.layer;
    if (a.label != b.label) return a.label < b.label;
    const Point pa = top_left_vertex(a), pb = top_left_vertex(b);
    return pa.y != pb.y ? pa.y < pb.y : pa.x < pb.x;
  });
  return kept;
}

LabelMap rasterize_prediction(const std::vector<Polygon>& polygons, int height, int width,
                              PolygonLayer layer) {
  return rasterize_polygons(polygons, height, width, layer);
}

void check_detector_output(const Tensor& detector) {
  if (detector.ndim() != 3 || detector.dim(0) != kDetectorChannels) {
    std::string dims;
    for (std::size_t i = 0; i < detector.ndim(); ++i) {
      dims += (i ? "," : "") + std::to_string(detector.dim(i));
    }
    fail(ErrorKind::kShapeMismatch, "detector output must be [44,H,W], got [" + dims + "]");
  }
}

LabelMap argmax_labels(const Tensor& scores, int first_channel, int count) {
  if (scores.ndim() != 3 || first_channel < 0 ||
      static_cast<std::size_t>(first_channel + count) > scores.dim(0)) {
    fail(ErrorKind::kShapeMismatch, "score block outside the tensor");
  }
  const int height = static_cast<int>(scores.dim(1)), width = static_cast<int>(scores.dim(2));
  const std::size_t plane = static_cast<std::size_t>(height) * width;
  LabelMap map(height, width, count, 0);
  std::vector<float> best(plane, -std::numeric_limits<float>::infinity());
  for (int c = 0; c < count; ++c) {
    const float* src = scores.raw() + (first_channel + c) * plane;
    for (std::size_t i = 0; i < plane; ++i) {
      if (src[i] > best[i]) {
        best[i] = src[i];
        map.classes[i] = static_cast<std::uint8_t>(c);
      }
    }
  }
  return map;
}

Vectorized vectorize_junctions(std::vector<JunctionPoint> junctions, const LabelMap& room_map,
                               const LabelMap& icon_map, const VectorizeOptions& options) {
  if (room_map.height != icon_map.height || room_map.width != icon_map.width) {
    fail(ErrorKind::kDimensionMismatch, "room and icon maps differ in size");
  }
  Vectorized out;
  out.junctions = std::move(junctions);
  std::vector<JunctionPoint> corners, openings;
  for (const JunctionPoint& j : out.junctions) {
    switch (j.kind()) {
      case JunctionKind::kWall: out.walls.push_back(j); break;
      case JunctionKind::kIconCorner: corners.push_back(j); break;
      case JunctionKind::kOpening: openings.push_back(j); break;
    }
  }
  out.segments = connect_walls(out.walls, options.align_tol);

  std::vector<Polygon> polygons = skeleton_to_rooms(out.walls, out.segments, room_map, options);
  std::vector<Polygon> icons = icons_from_corners(corners, icon_map, options);
  std::vector<Polygon> doors =
      openings_from_points(openings, out.walls, out.segments, icon_map, options);
  polygons.insert(polygons.end(), icons.begin(), icons.end());
  polygons.insert(polygons.end(), doors.begin(), doors.end());

  out.annotation.height = room_map.height;
  out.annotation.width = room_map.width;
  for (Polygon& p : prune(std::move(polygons), room_map, icon_map, options)) {
    (p.layer == PolygonLayer::kRooms ? out.annotation.rooms : out.annotation.icons)
        .push_back(std::move(p));
  }
  return out;
}

Vectorized vectorize_detector_output(const Tensor& detector, float threshold, int nms_radius,
                                     const VectorizeOptions& options,
                                     std::span<const int, kJunctionClassCount> channel_map) {
  check_detector_output(detector);
  return vectorize_junctions(extract_junctions(detector, channel_map, threshold, nms_radius),
                             argmax_labels(detector, kRoomScoreOffset, kRoomClassCount),
                             argmax_labels(detector, kIconScoreOffset, kIconClassCount), options);
}

}  // namespace planvec
