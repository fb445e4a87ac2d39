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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.h"
#include "planvec/error.h"
#include "planvec/groundtruth.h"
#include "synthetic_plan.h"

namespace planvec {
namespace {

JunctionPoint wall(DirectionSet dirs, int x, int y) {
  return {*wall_class_for(dirs), x, y, 1.0f};
}

LabelMap filled(int h, int w, int n, int c) { return LabelMap(h, w, n, c); }

void paint_rect(LabelMap& map, int x0, int y0, int x1, int y1, int c) {
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) map.at(y, x) = static_cast<std::uint8_t>(c);
}

TEST(ConnectWalls, RectangleOfFourCorners) {
  const std::vector<JunctionPoint> pts = {wall(kRight | kDown, 10, 10), wall(kDown | kLeft, 50, 11),
                                          wall(kUp | kLeft, 50, 40), wall(kUp | kRight, 9, 40)};
  const auto segs = connect_walls(pts, 5.0);
  ASSERT_EQ(segs.size(), 4u);
  int horizontal = 0;
  for (const auto& s : segs) horizontal += s.axis == Axis::kHorizontal;
  EXPECT_EQ(horizontal, 2);
}

TEST(ConnectWalls, MisalignedBeyondToleranceStaysApart) {
  const std::vector<JunctionPoint> pts = {wall(kRight, 0, 0), wall(kLeft, 30, 8)};
  EXPECT_TRUE(connect_walls(pts, 5.0).empty());
  EXPECT_EQ(connect_walls(pts, 8.0).size(), 1u);
}

TEST(ConnectWalls, TJunctionJoinsNearestOnly) {
  // a -- t -- b along one line, t also points down to c.
  const std::vector<JunctionPoint> pts = {wall(kRight, 0, 0), wall(kLeft | kRight | kDown, 20, 0),
                                          wall(kLeft, 40, 0), wall(kUp, 20, 30)};
  const auto segs = connect_walls(pts, 3.0);
  ASSERT_EQ(segs.size(), 3u);
  for (const auto& s : segs) EXPECT_FALSE(s.a == 0 && s.b == 2);
}

TEST(ConnectWalls, SegmentsAlwaysJoinOpposingDirections) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<JunctionPoint> pts;
    const int n = std::uniform_int_distribution<int>(0, 25)(rng);
    for (int i = 0; i < n; ++i) {
      const int cls = std::uniform_int_distribution<int>(0, 12)(rng);
      pts.push_back({cls, std::uniform_int_distribution<int>(0, 60)(rng),
                     std::uniform_int_distribution<int>(0, 60)(rng), 1.0f});
    }
    const double tol = 3.0;
    for (const auto& s : connect_walls(pts, tol)) {
      const auto& a = pts[s.a];
      const auto& b = pts[s.b];
      ASSERT_NE(s.a, s.b);
      if (s.axis == Axis::kHorizontal) {
        const auto& left = a.x < b.x ? a : b;
        const auto& right = a.x < b.x ? b : a;
        EXPECT_NE(left.x, right.x);
        EXPECT_TRUE(left.directions() & kRight);
        EXPECT_TRUE(right.directions() & kLeft);
        EXPECT_LE(std::abs(a.y - b.y), tol);
      } else {
        const auto& top = a.y < b.y ? a : b;
        const auto& bottom = a.y < b.y ? b : a;
        EXPECT_NE(top.y, bottom.y);
        EXPECT_TRUE(top.directions() & kDown);
        EXPECT_TRUE(bottom.directions() & kUp);
        EXPECT_LE(std::abs(a.x - b.x), tol);
      }
    }
  }
}

TEST(WallPolygon, ThreePixelBandPastEachEndpoint) {
  const Polygon p = wall_polygon(wall(kRight, 10, 20), wall(kLeft, 30, 20), Axis::kHorizontal, 3,
                                 100, 100);
  const Box b = bounding_box(p);
  EXPECT_EQ(b.x0, 9);
  EXPECT_EQ(b.x1, 32);
  EXPECT_EQ(b.y0, 19);
  EXPECT_EQ(b.y1, 22);
  EXPECT_EQ(p.label, kRoomWall);
}

TEST(SkeletonToRooms, SingleRoomBecomesFacePlusWalls) {
  const std::vector<JunctionPoint> pts = {wall(kRight | kDown, 10, 10), wall(kDown | kLeft, 50, 10),
                                          wall(kUp | kLeft, 50, 40), wall(kUp | kRight, 10, 40)};
  const auto segs = connect_walls(pts, 2.0);
  LabelMap rooms = filled(60, 70, kRoomClassCount, 0);
  paint_rect(rooms, 12, 12, 49, 39, 3);
  const auto polys = skeleton_to_rooms(pts, segs, rooms);
  int walls = 0;
  std::vector<Polygon> faces;
  for (const auto& p : polys) {
    if (p.label == kRoomWall) {
      ++walls;
    } else {
      faces.push_back(p);
    }
  }
  EXPECT_EQ(walls, 4);
  // Inner room and the outside.
  ASSERT_EQ(faces.size(), 2u);
  const auto inner = std::find_if(faces.begin(), faces.end(), [](const Polygon& p) { return p.label == 3; });
  ASSERT_NE(inner, faces.end());
  const Box b = bounding_box(*inner);
  EXPECT_EQ(b.x0, 12);
  EXPECT_EQ(b.y0, 12);
  EXPECT_EQ(b.x1, 49);
  EXPECT_EQ(b.y1, 39);
  EXPECT_EQ(inner->vertices.size(), 4u);
}

TEST(SkeletonToRooms, TracedOutlineCoversExactlyTheFace) {
  // Box with a walled-off corner notch: an L-shaped room, the notch, and
  // the strip of canvas outside the building.
  const std::vector<JunctionPoint> pts = {
      wall(kRight | kDown, 0, 0),        wall(kLeft | kDown, 60, 0),
      wall(kUp | kDown | kLeft, 60, 30), wall(kUp | kLeft, 60, 60),
      wall(kLeft | kRight | kUp, 30, 60), wall(kUp | kRight, 0, 60),
      wall(kRight | kDown, 30, 30)};
  const auto segs = connect_walls(pts, 1.0);
  ASSERT_EQ(segs.size(), 8u);
  const LabelMap rooms = filled(64, 64, kRoomClassCount, 4);
  const auto polys = skeleton_to_rooms(pts, segs, rooms);
  int faces = 0;
  std::size_t max_vertices = 0;
  for (const Polygon& p : polys) {
    if (p.label == kRoomWall) continue;
    ++faces;
    max_vertices = std::max(max_vertices, p.vertices.size());
    EXPECT_FALSE(is_self_intersecting(p));
    std::uint64_t painted = 0;
    scan_fill(p.vertices, 64, 64, [&](int, int x0, int x1) { painted += x1 - x0; });
    EXPECT_NEAR(polygon_area(p), double(painted), 1e-9);
  }
  EXPECT_EQ(faces, 3);
  EXPECT_EQ(max_vertices, 6u);
}

TEST(SkeletonToRooms, SmallFacesAreDropped) {
  const std::vector<JunctionPoint> pts = {wall(kRight | kDown, 2, 2), wall(kDown | kLeft, 8, 2),
                                          wall(kUp | kLeft, 8, 8), wall(kUp | kRight, 2, 8)};
  const auto segs = connect_walls(pts, 1.0);
  VectorizeOptions opts;
  opts.min_area = 50;
  const LabelMap rooms = filled(12, 12, kRoomClassCount, 3);
  for (const auto& p : skeleton_to_rooms(pts, segs, rooms, opts)) {
    // Inner face is 3x3 < 50 and the outside is 12*12 minus walls.
    if (p.label != kRoomWall) {
      EXPECT_GE(polygon_area(p), 50.0);
    }
  }
}

std::vector<JunctionPoint> quad(int x0, int y0, int x1, int y1) {
  return {{kIconTopLeft, x0, y0, 1.0f},
          {kIconTopRight, x1, y0, 1.0f},
          {kIconBottomRight, x1, y1, 1.0f},
          {kIconBottomLeft, x0, y1, 1.0f}};
}

TEST(IconsFromCorners, ConsistentQuadrupleOverToilet) {
  LabelMap icons = filled(40, 40, kIconClassCount, 0);
  paint_rect(icons, 5, 5, 21, 16, 5);
  const auto out = icons_from_corners(quad(5, 5, 20, 15), icons);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].label, 5);
  const Box b = bounding_box(out[0]);
  EXPECT_EQ(b.x0, 5);
  EXPECT_EQ(b.x1, 21);
  EXPECT_EQ(b.y1, 16);
}

TEST(IconsFromCorners, IncompleteQuadrupleGivesNothing) {
  LabelMap icons = filled(40, 40, kIconClassCount, 5);
  auto pts = quad(5, 5, 20, 15);
  pts.resize(2);
  EXPECT_TRUE(icons_from_corners(pts, icons).empty());
}

TEST(IconsFromCorners, NestedQuadruplesMatchInnerFirst) {
  LabelMap icons = filled(80, 80, kIconClassCount, 3);
  auto pts = quad(10, 10, 60, 60);
  const auto inner = quad(20, 20, 40, 40);
  pts.insert(pts.end(), inner.begin(), inner.end());
  const auto out = icons_from_corners(pts, icons);
  ASSERT_EQ(out.size(), 2u);
  std::vector<double> areas = {polygon_area(out[0]), polygon_area(out[1])};
  std::sort(areas.begin(), areas.end());
  EXPECT_EQ(areas[0], 21.0 * 21.0);
  EXPECT_EQ(areas[1], 51.0 * 51.0);
}

TEST(IconsFromCorners, NoIconRegionRejected) {
  const LabelMap icons = filled(40, 40, kIconClassCount, kIconNone);
  EXPECT_TRUE(icons_from_corners(quad(5, 5, 20, 15), icons).empty());
}

TEST(IconsFromCorners, CandidateCapRaisesExplosion) {
  std::vector<JunctionPoint> pts;
  for (int i = 0; i < 12; ++i) {
    const auto q = quad(i, i, 100 + i, 100 + i);
    pts.insert(pts.end(), q.begin(), q.end());
  }
  VectorizeOptions opts;
  opts.align_tol = 20;
  opts.polygon_cap = 100;
  const LabelMap icons = filled(128, 128, kIconClassCount, 3);
  try {
    icons_from_corners(pts, icons, opts);
    FAIL() << "expected polygon explosion";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kPolygonExplosion);
  }
}

TEST(OpeningsFromPoints, PairOnOneWall) {
  const std::vector<JunctionPoint> walls = {wall(kRight, 0, 20), wall(kLeft, 80, 20)};
  const auto segs = connect_walls(walls, 2.0);
  LabelMap icons = filled(40, 100, kIconClassCount, 0);
  paint_rect(icons, 30, 19, 46, 22, kIconDoor);
  const std::vector<JunctionPoint> openings = {{kOpeningRight, 30, 20, 1.0f},
                                               {kOpeningLeft, 45, 21, 1.0f}};
  const auto out = openings_from_points(openings, walls, segs, icons);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].label, kIconDoor);
  const Box b = bounding_box(out[0]);
  EXPECT_EQ(b.x0, 30);
  EXPECT_EQ(b.x1, 46);
  EXPECT_EQ(b.y0, 19);
  EXPECT_EQ(b.y1, 22);
}

TEST(OpeningsFromPoints, VerticalPairDefaultsToWindow) {
  const std::vector<JunctionPoint> walls = {wall(kDown, 10, 0), wall(kUp, 10, 90)};
  const auto segs = connect_walls(walls, 2.0);
  const LabelMap icons = filled(100, 30, kIconClassCount, 0);
  const std::vector<JunctionPoint> openings = {{kOpeningDown, 10, 20, 1.0f},
                                               {kOpeningUp, 10, 40, 1.0f}};
  const auto out = openings_from_points(openings, walls, segs, icons);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].label, kIconWindow);
}

TEST(OpeningsFromPoints, FarFromWallsOrEmpty) {
  const std::vector<JunctionPoint> walls = {wall(kRight, 0, 20), wall(kLeft, 80, 20)};
  const auto segs = connect_walls(walls, 2.0);
  const LabelMap icons = filled(100, 100, kIconClassCount, 0);
  const std::vector<JunctionPoint> far = {{kOpeningRight, 30, 60, 1.0f},
                                          {kOpeningLeft, 45, 60, 1.0f}};
  EXPECT_TRUE(openings_from_points(far, walls, segs, icons).empty());
  EXPECT_TRUE(openings_from_points({}, walls, segs, icons).empty());
}

TEST(Prune, DropsBowtieAndRelabelsByMajority) {
  LabelMap rooms = filled(20, 20, kRoomClassCount, 0);
  paint_rect(rooms, 0, 0, 10, 10, 6);
  const LabelMap icons = filled(20, 20, kIconClassCount, 0);
  std::vector<Polygon> polys = {
      make_rect(0, 0, 10, 10, 3, PolygonLayer::kRooms),
      Polygon{{{0, 0}, {2, 2}, {2, 0}, {0, 2}}, 6, PolygonLayer::kRooms},
  };
  const auto out = prune(polys, rooms, icons);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].label, 6);
}

TEST(Prune, BackgroundMajorityDroppedAndEmptyStaysEmpty) {
  const LabelMap rooms = filled(20, 20, kRoomClassCount, 0);
  const LabelMap icons = filled(20, 20, kIconClassCount, 0);
  EXPECT_TRUE(prune({make_rect(2, 2, 8, 8, 4, PolygonLayer::kRooms)}, rooms, icons).empty());
  EXPECT_TRUE(prune({}, rooms, icons).empty());
}

TEST(Prune, OrderIsLayerLabelTopLeft) {
  LabelMap rooms = filled(40, 40, kRoomClassCount, 0);
  paint_rect(rooms, 0, 0, 10, 10, 5);
  paint_rect(rooms, 20, 0, 30, 10, 3);
  paint_rect(rooms, 0, 20, 10, 30, 3);
  LabelMap icons = filled(40, 40, kIconClassCount, 0);
  paint_rect(icons, 30, 30, 35, 35, 4);
  std::vector<Polygon> polys = {make_rect(30, 30, 35, 35, 4, PolygonLayer::kIcons),
                                make_rect(0, 20, 10, 30, 3, PolygonLayer::kRooms),
                                make_rect(0, 0, 10, 10, 5, PolygonLayer::kRooms),
                                make_rect(20, 0, 30, 10, 3, PolygonLayer::kRooms)};
  const auto out = prune(polys, rooms, icons);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0].label, 3);
  EXPECT_EQ(top_left_vertex(out[0]).y, 0);
  EXPECT_EQ(out[1].label, 3);
  EXPECT_EQ(out[2].label, 5);
  EXPECT_EQ(out[3].layer, PolygonLayer::kIcons);
}

TEST(Prune, CapAbortsWithPolygonExplosion) {
  const LabelMap rooms = filled(4, 4, kRoomClassCount, 1);
  const LabelMap icons = filled(4, 4, kIconClassCount, 0);
  VectorizeOptions opts;
  opts.polygon_cap = 3;
  std::vector<Polygon> polys(4, make_rect(0, 0, 2, 2, 1, PolygonLayer::kRooms));
  EXPECT_THROW(prune(polys, rooms, icons, opts), Error);
}

TEST(Prune, NeverEmitsSelfIntersecting) {
  std::mt19937_64 rng(3);
  LabelMap rooms = filled(16, 16, kRoomClassCount, 4);
  const LabelMap icons = filled(16, 16, kIconClassCount, 0);
  std::vector<Polygon> polys;
  for (int i = 0; i < 300; ++i) {
    Polygon p;
    const int n = std::uniform_int_distribution<int>(3, 7)(rng);
    for (int k = 0; k < n; ++k) {
      p.vertices.push_back({double(std::uniform_int_distribution<int>(0, 16)(rng)),
                            double(std::uniform_int_distribution<int>(0, 16)(rng))});
    }
    p.vertices = dedupe_ring(p.vertices);
    if (p.vertices.size() < 3) continue;
    p.label = 4;
    polys.push_back(p);
  }
  for (const Polygon& p : prune(polys, rooms, icons)) EXPECT_FALSE(is_self_intersecting(p));
}

TEST(RasterizePrediction, SmallRoomPaintsOverLargerOne) {
  const std::vector<Polygon> polys = {make_rect(0, 0, 20, 20, 1, PolygonLayer::kRooms),
                                      make_rect(5, 5, 10, 10, 6, PolygonLayer::kRooms)};
  const LabelMap m = rasterize_prediction(polys, 20, 20, PolygonLayer::kRooms);
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 20; ++x) {
      const bool in_bath = x >= 5 && x < 10 && y >= 5 && y < 10;
      EXPECT_EQ(m.at(y, x), in_bath ? 6 : 1);
    }
  }
  const LabelMap empty = rasterize_prediction({}, 3, 3, PolygonLayer::kIcons);
  EXPECT_TRUE(std::all_of(empty.classes.begin(), empty.classes.end(), [](auto c) { return c == 0; }));
}

TEST(DetectorOutput, ShapeIsChecked) {
  EXPECT_THROW(check_detector_output(Tensor({34, 8, 8})), Error);
  EXPECT_THROW(check_detector_output(Tensor({44, 8})), Error);
  EXPECT_NO_THROW(check_detector_output(Tensor({44, 8, 8})));
}

TEST(ArgmaxLabels, TakesLargestScorePerPixel) {
  Tensor t({44, 1, 2});
  t.at(kRoomScoreOffset + 4, 0, 0) = 0.9f;
  t.at(kRoomScoreOffset + 7, 0, 1) = 0.2f;
  const LabelMap m = argmax_labels(t, kRoomScoreOffset, kRoomClassCount);
  EXPECT_EQ(m.at(0, 0), 4);
  EXPECT_EQ(m.at(0, 1), 7);
}

// Ideal detector output for random synthetic plans reproduces both layers.
TEST(RoundTrip, SyntheticPlansReproduceLabelMaps) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto plan = testing::make_plan(seed);
    const Tensor det = testing::ideal_detector(plan.truth, plan.junctions);
    const Vectorized v = vectorize_detector_output(det, 0.5f, 3, {}, identity_channel_map());
    for (PolygonLayer layer : {PolygonLayer::kRooms, PolygonLayer::kIcons}) {
      const LabelMap want = rasterize_annotation(plan.truth, layer);
      const LabelMap got = rasterize_annotation(v.annotation, layer);
      std::size_t agree = 0;
      for (std::size_t i = 0; i < want.size(); ++i) agree += want.classes[i] == got.classes[i];
      EXPECT_GE(double(agree) / want.size(), 0.95) << "seed " << seed;
    }
    for (const auto* list : {&v.annotation.rooms, &v.annotation.icons}) {
      for (const Polygon& p : *list) EXPECT_FALSE(is_self_intersecting(p));
    }
  }
}

}  // namespace
}  // namespace planvec
