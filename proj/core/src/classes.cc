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

#include "planvec/classes.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <sstream>

#include "planvec/error.h"
#include "planvec/raster.h"

namespace planvec {
namespace {

namespace pt = boost::property_tree;

ClassMapConfig make_default() {
  ClassMapConfig c;
  c.room_names = {"Background", "Outdoor", "Wall",  "Kitchen", "Living Room", "Bed Room",
                  "Bath",       "Entry",   "Railing", "Storage", "Garage",    "Undefined"};
  c.icon_names = {"No Icon", "Window",  "Door",      "Closet",  "Electrical Applience",
                  "Toilet",  "Sink",    "Sauna Bench", "Fire Place", "Bathtub", "Chimney"};
  const std::pair<const char*, int> rooms[] = {
      {"Background", 0}, {"Outdoor", 1},  {"Wall", 2},          {"Kitchen", 3},
      {"LivingRoom", 4}, {"Dining", 4},   {"Bedroom", 5},       {"Bath", 6},
      {"Sauna", 6},      {"Entry", 7},    {"Hall", 7},          {"Railing", 8},
      {"Storage", 9},    {"Garage", 10},  {"Undefined", 11}};
  const std::pair<const char*, int> icons[] = {
      {"Window", 1},     {"Door", 2},         {"Closet", 3},
      {"ElectricalAppliance", 4}, {"Toilet", 5}, {"Sink", 6},
      {"SaunaBench", 7}, {"Fireplace", 8},    {"Bathtub", 9}, {"Chimney", 10}};
  for (const auto& [token, id] : rooms) c.svg_class_to_id[token] = {PolygonLayer::kRooms, id};
  for (const auto& [token, id] : icons) c.svg_class_to_id[token] = {PolygonLayer::kIcons, id};
  return c;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

int find_name(const std::vector<std::string>& names, std::string_view name) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::string> read_names(const pt::ptree& tree, const char* section, int count) {
  const auto node = tree.get_child_optional(section);
  if (!node) fail(ErrorKind::kParse, std::string("class map lacks a [") + section + "] section");
  std::vector<std::string> names(count);
  std::vector<bool> seen(count, false);
  for (const auto& [key, value] : *node) {
    const auto id = parse_int(key);
    if (!id || *id < 0 || *id >= count) {
      fail(ErrorKind::kParse, std::string("[") + section + "] key '" + key +
                                  "' is not an id in 0.." + std::to_string(count - 1));
    }
    names[*id] = value.data();
    seen[*id] = true;
  }
  for (int i = 0; i < count; ++i) {
    if (!seen[i]) {
      fail(ErrorKind::kParse,
           std::string("[") + section + "] is missing id " + std::to_string(i));
    }
  }
  return names;
}

}  // namespace

void ClassMapConfig::validate() const {
  if (room_names.size() != static_cast<std::size_t>(kRoomClassCount) ||
      icon_names.size() != static_cast<std::size_t>(kIconClassCount)) {
    fail(ErrorKind::kInvalidArgument, "class map needs 12 room and 11 icon names");
  }
  for (const auto& [token, ref] : svg_class_to_id) {
    if (ref.id < 0 || ref.id >= class_count(ref.layer)) {
      fail(ErrorKind::kInvalidArgument, "token '" + token + "' maps outside its layer");
    }
  }
}

const std::vector<std::string>& ClassMapConfig::names(PolygonLayer layer) const {
  return layer == PolygonLayer::kRooms ? room_names : icon_names;
}

std::optional<ClassRef> ClassMapConfig::lookup(std::string_view token) const {
  if (const auto it = svg_class_to_id.find(token); it != svg_class_to_id.end()) return it->second;
  if (const int r = find_name(room_names, token); r >= 0) return ClassRef{PolygonLayer::kRooms, r};
  if (const int i = find_name(icon_names, token); i >= 0) return ClassRef{PolygonLayer::kIcons, i};
  return std::nullopt;
}

std::string ClassMapConfig::svg_class(PolygonLayer layer, int id) const {
  const auto& list = names(layer);
  if (id < 0 || static_cast<std::size_t>(id) >= list.size()) {
    fail(ErrorKind::kInvalidArgument, "no class name for id " + std::to_string(id));
  }
  // The display name resolves back unless a token shadows it.
  const std::string& name = list[id];
  if (lookup(name) == ClassRef{layer, id}) return name;
  for (const auto& [token, ref] : svg_class_to_id) {
    if (ref == ClassRef{layer, id} && token.find(' ') == std::string::npos) return token;
  }
  fail(ErrorKind::kInvalidArgument, "class '" + name + "' has no SVG spelling that resolves back");
}

const ClassMapConfig& default_class_map() {
  static const ClassMapConfig config = make_default();
  return config;
}

ClassMapConfig parse_class_map(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorKind::kParse, std::string("class map: ") + e.what());
  }
  ClassMapConfig c;
  c.room_names = read_names(tree, "rooms", kRoomClassCount);
  c.icon_names = read_names(tree, "icons", kIconClassCount);
  if (const auto tokens = tree.get_child_optional("tokens")) {
    for (const auto& [token, value] : *tokens) {
      const std::string v = value.data();
      const auto colon = v.find(':');
      const std::string layer_name = v.substr(0, colon);
      PolygonLayer layer;
      if (layer_name == "rooms") {
        layer = PolygonLayer::kRooms;
      } else if (layer_name == "icons") {
        layer = PolygonLayer::kIcons;
      } else {
        fail(ErrorKind::kParse, "token '" + token + "' must map to rooms:<class> or icons:<class>");
      }
      const std::string target = colon == std::string::npos ? "" : v.substr(colon + 1);
      int id = parse_int(target).value_or(find_name(c.names(layer), target));
      if (id < 0 || id >= class_count(layer)) {
        fail(ErrorKind::kParse, "token '" + token + "' names unknown class '" + target + "'");
      }
      c.svg_class_to_id[token] = {layer, id};
    }
  }
  c.validate();
  return c;
}

ClassMapConfig load_class_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open class map " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_class_map(text.str());
}

std::string serialize_class_map(const ClassMapConfig& config) {
  config.validate();
  std::ostringstream out;
  out << "[rooms]\n";
  for (std::size_t i = 0; i < config.room_names.size(); ++i) {
    out << i << " = " << config.room_names[i] << "\n";
  }
  out << "\n[icons]\n";
  for (std::size_t i = 0; i < config.icon_names.size(); ++i) {
    out << i << " = " << config.icon_names[i] << "\n";
  }
  out << "\n[tokens]\n";
  for (const auto& [token, ref] : config.svg_class_to_id) {
    out << token << " = " << (ref.layer == PolygonLayer::kRooms ? "rooms:" : "icons:")
        << config.names(ref.layer)[ref.id] << "\n";
  }
  return out.str();
}

}  // namespace planvec
