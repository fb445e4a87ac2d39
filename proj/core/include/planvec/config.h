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

#ifndef PLANVEC_CONFIG_H_
#define PLANVEC_CONFIG_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "planvec/junctions.h"
#include "planvec/network.h"
#include "planvec/upscale.h"

namespace planvec {

struct PipelineConfig {
  std::optional<Architecture> sr_method;  // empty means no super-resolution
  int scale_factor = 2;
  int gate_limit = kDefaultGateLimit;
  float threshold = kDefaultThreshold;
  int nms_radius = kDefaultNmsRadius;
  double align_tol = 5.0;
  int min_area = 50;
  std::size_t polygon_cap = 10000;
  int wall_thickness = 3;
  std::string class_map;    // class map file; empty uses the built-in table
  std::string weights;      // weight bundle for sr_method
  std::string weights_dir;  // holds <method>_x<scale> bundles
  bool random_weights = false;
  std::uint64_t seed = 0;
  ChannelMode sr_channels = ChannelMode::kAuto;
  int workers = 1;
  std::array<int, kJunctionClassCount> junction_channel_map = identity_channel_map();

  // Throws kInvalidArgument naming the offending field.
  void validate() const;
};

// "none" (or "original") yields an empty optional; unknown names throw.
std::optional<Architecture> parse_sr_method(std::string_view name);
// Column name used in reports: the display name, or "Original".
std::string method_name(std::optional<Architecture> method);
// Lower-case spelling used in file names: "edsr", ..., or "none".
std::string method_slug(std::optional<Architecture> method);

// Sets one field from its textual form; unknown keys throw kParse.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value);

// Flat `key = value` lines; `#` starts a comment and values may be quoted.
PipelineConfig parse_pipeline_config(const std::string& text, PipelineConfig base = {});
PipelineConfig load_pipeline_config(const std::string& path, PipelineConfig base = {});
std::string serialize_pipeline_config(const PipelineConfig& config);

}  // namespace planvec

#endif  // PLANVEC_CONFIG_H_
