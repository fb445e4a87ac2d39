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

#include "planvec/junctions.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "planvec/error.h"
#include "planvec/log.h"

namespace planvec {

int direction_count(DirectionSet set) { return std::popcount(static_cast<unsigned>(set)); }

const std::array<JunctionClass, kJunctionClassCount>& taxonomy() {
  using K = JunctionKind;
  static const std::array<JunctionClass, kJunctionClassCount> classes = {{
      {0, K::kWall, kUp, "wall-end-up"},
      {1, K::kWall, kRight, "wall-end-right"},
      {2, K::kWall, kDown, "wall-end-down"},
      {3, K::kWall, kLeft, "wall-end-left"},
      {4, K::kWall, kUp | kRight, "wall-corner-up-right"},
      {5, K::kWall, kRight | kDown, "wall-corner-right-down"},
      {6, K::kWall, kDown | kLeft, "wall-corner-down-left"},
      {7, K::kWall, kLeft | kUp, "wall-corner-left-up"},
      {8, K::kWall, kRight | kDown | kLeft, "wall-t-no-up"},
      {9, K::kWall, kUp | kDown | kLeft, "wall-t-no-right"},
      {10, K::kWall, kUp | kRight | kLeft, "wall-t-no-down"},
      {11, K::kWall, kUp | kRight | kDown, "wall-t-no-left"},
      {12, K::kWall, kAllDirections, "wall-cross"},
      {13, K::kIconCorner, kRight | kDown, "icon-top-left"},
      {14, K::kIconCorner, kDown | kLeft, "icon-top-right"},
      {15, K::kIconCorner, kUp | kLeft, "icon-bottom-right"},
      {16, K::kIconCorner, kUp | kRight, "icon-bottom-left"},
      {17, K::kOpening, kUp, "opening-up"},
      {18, K::kOpening, kRight, "opening-right"},
      {19, K::kOpening, kDown, "opening-down"},
      {20, K::kOpening, kLeft, "opening-left"},
  }};
  return classes;
}

std::optional<int> wall_class_for(DirectionSet directions) {
  for (const JunctionClass& c : taxonomy()) {
    if (c.kind == JunctionKind::kWall && c.directions == directions) return c.id;
  }
  return std::nullopt;
}

std::array<int, kJunctionClassCount> identity_channel_map() {
  std::array<int, kJunctionClassCount> map{};
  for (int i = 0; i < kJunctionClassCount; ++i) map[i] = i;
  return map;
}

namespace {

struct PeakScan {
  std::vector<Peak> peaks;
  std::size_t clamped = 0;
};

PeakScan scan_plane(const float* plane, int height, int width, float threshold,
                    int nms_radius) {
  PeakScan scan;
  const std::size_t n = static_cast<std::size_t>(height) * width;
  std::vector<float> values(plane, plane + n);
  for (float& v : values) {
    if (!(v >= 0.0f && v <= 1.0f)) {
      ++scan.clamped;
      v = std::isnan(v) ? 0.0f : std::clamp(v, 0.0f, 1.0f);
    }
  }

  struct Candidate {
    float score;
    std::size_t index;
  };
  std::vector<Candidate> candidates;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * width + x;
      const float v = values[idx];
      if (v < threshold) continue;
      bool wins = true;
      for (int dy = -1; dy <= 1 && wins; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int ny = y + dy, nx = x + dx;
          if (ny < 0 || ny >= height || nx < 0 || nx >= width) continue;
          const std::size_t nidx = static_cast<std::size_t>(ny) * width + nx;
          const float u = values[nidx];
          if (u > v || (u == v && nidx < idx)) {
            wins = false;
            break;
          }
        }
      }
      if (wins) candidates.push_back({v, idx});
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.score != b.score ? a.score > b.score : a.index < b.index;
  });
  std::vector<std::uint8_t> kept(n, 0);
  for (const Candidate& c : candidates) {
    const int y = static_cast<int>(c.index / width), x = static_cast<int>(c.index % width);
    bool suppressed = false;
    for (int ny = std::max(0, y - nms_radius); ny <= std::min(height - 1, y + nms_radius) && !suppressed; ++ny) {
      for (int nx = std::max(0, x - nms_radius); nx <= std::min(width - 1, x + nms_radius); ++nx) {
        if (kept[static_cast<std::size_t>(ny) * width + nx]) {
          suppressed = true;
          break;
        }
      }
    }
    if (!suppressed) kept[c.index] = 1;
  }
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (kept[idx]) {
      scan.peaks.push_back({static_cast<int>(idx % width), static_cast<int>(idx / width), values[idx]});
    }
  }
  return scan;
}

void check_peak_args(float threshold, int nms_radius) {
  if (!(threshold > 0.0f && threshold < 1.0f)) {
    fail(ErrorKind::kInvalidArgument, "threshold must lie in (0,1)");
  }
  if (nms_radius < 1) fail(ErrorKind::kInvalidArgument, "nms_radius must be >= 1");
}

void warn_clamped(std::size_t clamped) {
  if (clamped > 0) {
    log_warning("heatmap had " + std::to_string(clamped) +
                " samples outside [0,1]; clamped before peak extraction");
  }
}

}  // namespace

std::vector<Peak> extract_peaks(std::span<const float> plane, int height, int width,
                                float threshold, int nms_radius) {
  check_peak_args(threshold, nms_radius);
  if (height < 1 || width < 1 ||
      plane.size() != static_cast<std::size_t>(height) * static_cast<std::size_t>(width)) {
    fail(ErrorKind::kShapeMismatch, "plane size does not match height x width");
  }
  PeakScan scan = scan_plane(plane.data(), height, width, threshold, nms_radius);
  warn_clamped(scan.clamped);
  return std::move(scan.peaks);
}

std::vector<Peak> extract_peaks(const Tensor& channel, float threshold, int nms_radius) {
  if (channel.ndim() != 2) fail(ErrorKind::kShapeMismatch, "extract_peaks expects [H,W]");
  return extract_peaks(channel.data(), static_cast<int>(channel.dim(0)),
                       static_cast<int>(channel.dim(1)), threshold, nms_radius);
}

std::vector<JunctionPoint> extract_junctions(
    const Tensor& tensor, std::span<const int, kJunctionClassCount> channel_of_class,
    float threshold, int nms_radius) {
  check_peak_args(threshold, nms_radius);
  if (tensor.ndim() != 3) fail(ErrorKind::kShapeMismatch, "junction heatmaps must be [C,H,W]");
  const int channels = static_cast<int>(tensor.dim(0));
  const int height = static_cast<int>(tensor.dim(1)), width = static_cast<int>(tensor.dim(2));
  const std::size_t plane = static_cast<std::size_t>(height) * width;

  std::vector<JunctionPoint> points;
  std::size_t clamped = 0;
  for (int cls = 0; cls < kJunctionClassCount; ++cls) {
    const int ch = channel_of_class[cls];
    if (ch < 0 || ch >= channels) {
      fail(ErrorKind::kInvalidArgument, "junction class " + std::to_string(cls) +
                                            " maps to missing channel " + std::to_string(ch));
    }
    PeakScan scan = scan_plane(tensor.raw() + ch * plane, height, width, threshold, nms_radius);
    clamped += scan.clamped;
    for (const Peak& p : scan.peaks) points.push_back({cls, p.x, p.y, p.score});
  }
  warn_clamped(clamped);
  return points;
}

std::vector<JunctionPoint> extract_junctions(const Tensor& heatmaps, float threshold,
                                             int nms_radius) {
  if (heatmaps.ndim() != 3 || heatmaps.dim(0) != kJunctionClassCount) {
    fail(ErrorKind::kShapeMismatch, "junction heatmaps must be [21,H,W], got " +
                                        std::to_string(heatmaps.ndim() ? heatmaps.dim(0) : 0) +
                                        " channels");
  }
  const auto map = identity_channel_map();
  return extract_junctions(heatmaps, map, threshold, nms_radius);
}

}  // namespace planvec
