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

#ifndef PLANVEC_CLASSES_H_
#define PLANVEC_CLASSES_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "planvec/geometry.h"

namespace planvec {

struct ClassRef {
  PolygonLayer layer;
  int id;
  friend bool operator==(const ClassRef&, const ClassRef&) = default;
};

// Names of the 12 room and 11 icon classes, and the SVG class-attribute
// tokens that map onto them.
struct ClassMapConfig {
  std::vector<std::string> room_names;
  std::vector<std::string> icon_names;
  std::map<std::string, ClassRef, std::less<>> svg_class_to_id;

  void validate() const;
  const std::vector<std::string>& names(PolygonLayer layer) const;
  // Token table first, then the display names (rooms before icons).
  std::optional<ClassRef> lookup(std::string_view token) const;
  // Class attribute written for (layer, id) by the SVG serializer.
  std::string svg_class(PolygonLayer layer, int id) const;
};

const ClassMapConfig& default_class_map();

// INI text with [rooms], [icons] and [tokens] sections. Room and icon
// entries are `<id> = <name>`; tokens are `<token> = rooms:<id|name>` or
// `icons:<id|name>`.
ClassMapConfig parse_class_map(const std::string& text);
ClassMapConfig load_class_map(const std::string& path);
std::string serialize_class_map(const ClassMapConfig& config);

}  // namespace planvec

#endif  // PLANVEC_CLASSES_H_
