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

#include "planvec/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "planvec/error.h"

namespace planvec {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T v{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    fail(ErrorKind::kParse, std::string(key) + ": '" + std::string(value) + "' is not a number");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  const std::string v = lower(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(ErrorKind::kParse, std::string(key) + ": '" + std::string(value) + "' is not a boolean");
}

}  // namespace

void PipelineConfig::validate() const {
  auto bad = [](const std::string& what) { fail(ErrorKind::kInvalidArgument, what); };
  if (scale_factor < 2 || scale_factor > 4) bad("scale_factor must be 2, 3 or 4");
  if (gate_limit <= 0) bad("gate_limit must be positive");
  if (!(threshold > 0.0f) || !(threshold < 1.0f)) bad("threshold must lie in (0, 1)");
  if (nms_radius <= 0) bad("nms_radius must be positive");
  if (!(align_tol > 0.0)) bad("align_tol must be positive");
  if (min_area <= 0) bad("min_area must be positive");
  if (polygon_cap == 0) bad("polygon_cap must be positive");
  if (wall_thickness <= 0) bad("wall_thickness must be positive");
  if (workers <= 0) bad("workers must be positive");
  for (int c : junction_channel_map) {
    if (c < 0) bad("junction_channel_map entries must be non-negative");
  }
}

std::optional<Architecture> parse_sr_method(std::string_view name) {
  const std::string n = lower(trim(name));
  if (n == "none" || n == "original") return std::nullopt;
  if (const auto arch = parse_architecture(n)) return arch;
  fail(ErrorKind::kInvalidArgument, "unknown SR method '" + std::string(name) + "'");
}

std::string method_name(std::optional<Architecture> method) {
  return method ? std::string(display_name(*method)) : "Original";
}

std::string method_slug(std::optional<Architecture> method) {
  return method ? lower(display_name(*method)) : "none";
}

void apply_setting(PipelineConfig& c, std::string_view key, std::string_view raw) {
  std::string_view value = trim(raw);
  if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
      value.back() == value.front()) {
    value = value.substr(1, value.size() - 2);
  }
  const std::string k = lower(trim(key));
  if (k == "sr_method") {
    c.sr_method = parse_sr_method(value);
  } else if (k == "scale_factor") {
    c.scale_factor = parse_number<int>(k, value);
  } else if (k == "gate_limit") {
    c.gate_limit = parse_number<int>(k, value);
  } else if (k == "threshold") {
    c.threshold = parse_number<float>(k, value);
  } else if (k == "nms_radius") {
    c.nms_radius = parse_number<int>(k, value);
  } else if (k == "align_tol") {
    c.align_tol = parse_number<double>(k, value);
  } else if (k == "min_area") {
    c.min_area = parse_number<int>(k, value);
  } else if (k == "polygon_cap") {
    c.polygon_cap = parse_number<std::size_t>(k, value);
  } else if (k == "wall_thickness") {
    c.wall_thickness = parse_number<int>(k, value);
  } else if (k == "class_map") {
    c.class_map = value;
  } else if (k == "weights") {
    c.weights = value;
  } else if (k == "weights_dir") {
    c.weights_dir = value;
  } else if (k == "random_weights") {
    c.random_weights = parse_bool(k, value);
  } else if (k == "seed") {
    c.seed = parse_number<std::uint64_t>(k, value);
  } else if (k == "sr_channels") {
    const auto mode = parse_channel_mode(value);
    if (!mode) fail(ErrorKind::kParse, "sr_channels: expected auto, luma or rgb");
    c.sr_channels = *mode;
  } else if (k == "workers") {
    c.workers = parse_number<int>(k, value);
  } else if (k == "junction_channel_map") {
    std::array<int, kJunctionClassCount> map{};
    std::size_t n = 0;
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      if (n == map.size()) fail(ErrorKind::kParse, "junction_channel_map needs 21 entries");
      map[n++] = parse_number<int>(k, item);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (n != map.size()) fail(ErrorKind::kParse, "junction_channel_map needs 21 entries");
    c.junction_channel_map = map;
  } else {
    fail(ErrorKind::kParse, "unknown config key '" + std::string(key) + "'");
  }
}

PipelineConfig parse_pipeline_config(const std::string& text, PipelineConfig base) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::kParse, "config line " + std::to_string(line_no) + " lacks '='");
    }
    try {
      apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
    } catch (const Error& e) {
      fail(ErrorKind::kParse, "config line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  base.validate();
  return base;
}

PipelineConfig load_pipeline_config(const std::string& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_pipeline_config(text.str(), std::move(base));
}

std::string serialize_pipeline_config(const PipelineConfig& c) {
  std::ostringstream out;
  out << "sr_method = " << method_slug(c.sr_method) << "\n"
      << "scale_factor = " << c.scale_factor << "\n"
      << "gate_limit = " << c.gate_limit << "\n"
      << "threshold = " << c.threshold << "\n"
      << "nms_radius = " << c.nms_radius << "\n"
      << "align_tol = " << c.align_tol << "\n"
      << "min_area = " << c.min_area << "\n"
      << "polygon_cap = " << c.polygon_cap << "\n"
      << "wall_thickness = " << c.wall_thickness << "\n"
      << "class_map = \"" << c.class_map << "\"\n"
      << "weights = \"" << c.weights << "\"\n"
      << "weights_dir = \"" << c.weights_dir << "\"\n"
      << "random_weights = " << (c.random_weights ? "true" : "false") << "\n"
      << "seed = " << c.seed << "\n"
      << "sr_channels = "
      << (c.sr_channels == ChannelMode::kAuto   ? "auto"
          : c.sr_channels == ChannelMode::kLuma ? "luma"
                                                : "rgb")
      << "\n"
      << "workers = " << c.workers << "\n"
      << "junction_channel_map = ";
  for (std::size_t i = 0; i < c.junction_channel_map.size(); ++i) {
    out << (i ? "," : "") << c.junction_channel_map[i];
  }
  out << "\n";
  return out.str();
}

}  // namespace planvec
