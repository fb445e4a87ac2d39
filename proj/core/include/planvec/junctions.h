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

#ifndef PLANVEC_JUNCTIONS_H_
#define PLANVEC_JUNCTIONS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "planvec/tensor.h"

namespace planvec {

enum class JunctionKind { kWall, kIconCorner, kOpening };

// Bit flags; a DirectionSet is any OR of these.
enum Direction : std::uint8_t {
  kUp = 1,
  kRight = 2,
  kDown = 4,
  kLeft = 8,
};
using DirectionSet = std::uint8_t;

inline constexpr DirectionSet kAllDirections = kUp | kRight | kDown | kLeft;
inline constexpr Direction kDirections[] = {kUp, kRight, kDown, kLeft};

constexpr Direction opposite(Direction d) {
  switch (d) {
    case kUp: return kDown;
    case kRight: return kLeft;
    case kDown: return kUp;
    case kLeft: return kRight;
  }
  return kUp;
}

int direction_count(DirectionSet set);

// Wall classes: directions a wall continues from the junction.
// Icon corners: the two rectangle edges leaving the corner (TL = right|down).
// Openings: the direction the opening extends from the endpoint.
struct JunctionClass {
  int id;
  JunctionKind kind;
  DirectionSet directions;
  std::string_view name;
};

inline constexpr int kJunctionClassCount = 21;
inline constexpr int kFirstIconCornerClass = 13;
inline constexpr int kFirstOpeningClass = 17;

// ids 0-3   wall endpoints   up, right, down, left
// ids 4-7   wall corners     up|right, right|down, down|left, left|up
// ids 8-11  wall T           missing up, right, down, left
// id  12    wall X
// ids 13-16 icon corners     top-left, top-right, bottom-right, bottom-left
// ids 17-20 openings         up, right, down, left
const std::array<JunctionClass, kJunctionClassCount>& taxonomy();

// Wall class id for a direction set with at least one direction.
std::optional<int> wall_class_for(DirectionSet directions);

inline constexpr int kIconTopLeft = 13;
inline constexpr int kIconTopRight = 14;
inline constexpr int kIconBottomRight = 15;
inline constexpr int kIconBottomLeft = 16;

inline constexpr int kOpeningUp = 17;
inline constexpr int kOpeningRight = 18;
inline constexpr int kOpeningDown = 19;
inline constexpr int kOpeningLeft = 20;

struct Peak {
  int x;
  int y;
  float score;
  friend bool operator==(const Peak&, const Peak&) = default;
};

struct JunctionPoint {
  int class_id;
  int x;
  int y;
  float score;

  const JunctionClass& junction_class() const { return taxonomy()[class_id]; }
  JunctionKind kind() const { return junction_class().kind; }
  DirectionSet directions() const { return junction_class().directions; }
  friend bool operator==(const JunctionPoint&, const JunctionPoint&) = default;
};

inline constexpr float kDefaultThreshold = 0.5f;
inline constexpr int kDefaultNmsRadius = 3;

// A pixel is a candidate when its score is >= threshold and it beats all
// 8 neighbours under the order (higher score, then smaller row-major index).
// Greedy suppression keeps the best candidates so that no two kept peaks are
// within Chebyshev distance nms_radius. Output is in row-major order.
// Samples outside [0,1] are clamped with a logged warning.
std::vector<Peak> extract_peaks(const Tensor& channel, float threshold = kDefaultThreshold,
                                int nms_radius = kDefaultNmsRadius);

// Same on a raw H x W plane.
std::vector<Peak> extract_peaks(std::span<const float> plane, int height, int width,
                                float threshold, int nms_radius);

// heatmaps [21,H,W]; suppression is per channel. Sorted by class id, then
// row-major position.
std::vector<JunctionPoint> extract_junctions(const Tensor& heatmaps,
                                             float threshold = kDefaultThreshold,
                                             int nms_radius = kDefaultNmsRadius);

// Same, reading class c from channel channel_of_class[c] of a [C,H,W]
// tensor (C >= 21). The default map is the identity on channels 0-20.
std::vector<JunctionPoint> extract_junctions(
    const Tensor& tensor, std::span<const int, kJunctionClassCount> channel_of_class,
    float threshold, int nms_radius);

std::array<int, kJunctionClassCount> identity_channel_map();

}  // namespace planvec

#endif  // PLANVEC_JUNCTIONS_H_
