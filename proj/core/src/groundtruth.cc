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

#include "planvec/groundtruth.h"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <tuple>

#include "planvec/error.h"
#include "planvec/log.h"

namespace planvec {
namespace {

namespace pt = boost::property_tree;

std::string_view local_name(std::string_view name) {
  const auto colon = name.rfind(':');
  return colon == std::string_view::npos ? name : name.substr(colon + 1);
}

bool is_separator(char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); }

std::vector<std::string_view> split_numbers(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_separator(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_separator(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Length attribute; a trailing "px" is accepted.
std::optional<double> to_length(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  if (s.size() > 2 && s.substr(s.size() - 2) == "px") s.remove_suffix(2);
  return to_double(s);
}

std::optional<std::string> attribute(const pt::ptree& node, const char* name) {
  if (const auto attrs = node.get_child_optional("<xmlattr>")) {
    if (const auto v = attrs->get_optional<std::string>(name)) return *v;
  }
  return std::nullopt;
}

std::optional<ClassRef> resolve(const std::string& attr, const ClassMapConfig& config) {
  if (auto ref = config.lookup(attr)) return ref;
  std::istringstream words(attr);
  std::vector<std::string> owned;
  for (std::string w; words >> w;) owned.push_back(w);
  for (auto it = owned.rbegin(); it != owned.rend(); ++it) {
    if (auto ref = config.lookup(*it)) return ref;
  }
  return std::nullopt;
}

std::pair<double, double> parse_root_scale(const std::string& transform) {
  std::string_view t = transform;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  if (t.empty()) return {1.0, 1.0};
  if (t.substr(0, 6) != "scale(" || t.back() != ')') {
    fail(ErrorKind::kParse, "unsupported root transform '" + transform + "'; only scale() is read");
  }
  const auto args = split_numbers(t.substr(6, t.size() - 7));
  if (args.empty() || args.size() > 2) fail(ErrorKind::kParse, "bad root scale '" + transform + "'");
  const auto sx = to_double(args[0]);
  const auto sy = args.size() == 2 ? to_double(args[1]) : sx;
  if (!sx || !sy) fail(ErrorKind::kParse, "bad root scale '" + transform + "'");
  return {*sx, *sy};
}

struct Walker {
  const ClassMapConfig& config;
  SvgParseStats stats;
  Annotation annotation;
  double sx = 1.0, sy = 1.0;
  std::vector<const std::string*> classes;  // ancestor class attributes, outermost first

  std::string describe(std::string_view tag, const pt::ptree& node) const {
    std::string what = std::string(tag) + " element #" + std::to_string(stats.polygons);
    if (const auto id = attribute(node, "id")) what += " (id '" + *id + "')";
    return what;
  }

  std::vector<Point> read_points(std::string_view tag, const pt::ptree& node) const {
    std::vector<Point> ring;
    if (tag == "polygon") {
      const std::string points = attribute(node, "points").value_or("");
      const auto nums = split_numbers(points);
      if (nums.size() % 2 != 0) {
        fail(ErrorKind::kParse, describe(tag, node) + " has an odd number of coordinates");
      }
      for (std::size_t i = 0; i < nums.size(); i += 2) {
        const auto x = to_double(nums[i]), y = to_double(nums[i + 1]);
        if (!x || !y) fail(ErrorKind::kParse, describe(tag, node) + " has a malformed coordinate");
        ring.push_back({*x, *y});
      }
    } else {
      auto get = [&](const char* name, bool required) {
        const auto s = attribute(node, name);
        if (!s) {
          if (required) fail(ErrorKind::kParse, describe(tag, node) + " lacks " + name);
          return 0.0;
        }
        const auto v = to_length(*s);
        if (!v) fail(ErrorKind::kParse, describe(tag, node) + " has a malformed " + name);
        return *v;
      };
      const double x = get("x", false), y = get("y", false);
      const double w = get("width", true), h = get("height", true);
      ring = {{x, y}, {x + w, y}, {x + w, y + h}, {x, y + h}};
    }
    const double width = annotation.width, height = annotation.height;
    for (Point& p : ring) {
      p.x = std::clamp(p.x * sx, 0.0, width);
      p.y = std::clamp(p.y * sy, 0.0, height);
    }
    ring = dedupe_ring(std::move(ring));
    if (ring.size() < 3) {
      fail(ErrorKind::kParse, describe(tag, node) + " has fewer than 3 distinct points");
    }
    return ring;
  }

  void visit(const pt::ptree& node) {
    for (const auto& [name, child] : node) {
      if (name.empty() || name.front() == '<') continue;  // attributes, comments, text
      const std::string_view tag = local_name(name);
      const auto cls = attribute(child, "class");
      if (tag == "polygon" || tag == "rect") {
        ++stats.polygons;
        std::optional<ClassRef> ref;
        if (cls) ref = resolve(*cls, config);
        for (auto it = classes.rbegin(); !ref && it != classes.rend(); ++it) {
          ref = resolve(**it, config);
        }
        if (!ref) {
          ++stats.unmapped;
          continue;
        }
        Polygon p{read_points(tag, child), ref->id, ref->layer};
        (p.layer == PolygonLayer::kRooms ? annotation.rooms : annotation.icons)
            .push_back(std::move(p));
        continue;
      }
      if (cls) classes.push_back(&*cls);
      visit(child);
      if (cls) classes.pop_back();
    }
  }
};

void append_number(std::string& out, double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

nlohmann::json polygons_json(const std::vector<Polygon>& polygons) {
  nlohmann::json list = nlohmann::json::array();
  for (const Polygon& p : polygons) {
    nlohmann::json vertices = nlohmann::json::array();
    for (const Point& v : p.vertices) vertices.push_back({v.x, v.y});
    list.push_back({{"label", p.label}, {"vertices", std::move(vertices)}});
  }
  return list;
}

std::vector<Polygon> polygons_from_json(const nlohmann::json& list, PolygonLayer layer) {
  std::vector<Polygon> out;
  for (const auto& item : list) {
    Polygon p;
    p.layer = layer;
    p.label = item.at("label").get<int>();
    for (const auto& v : item.at("vertices")) {
      p.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    }
    validate_polygon(p);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

Annotation parse_svg(const std::string& text, const ClassMapConfig& config,
                     SvgParseStats* stats) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    fail(ErrorKind::kParse, std::string("malformed XML: ") + e.what());
  }
  const pt::ptree* root = nullptr;
  for (const auto& [name, child] : tree) {
    if (!name.empty() && name.front() != '<') {
      if (local_name(name) != "svg") {
        fail(ErrorKind::kParse, "root element is '" + name + "', expected svg");
      }
      root = &child;
    }
  }
  if (!root) fail(ErrorKind::kParse, "document has no root element");

  Walker walker{config, {}, {}, 1.0, 1.0, {}};
  auto dim = [&](const char* name) {
    const auto s = attribute(*root, name);
    if (!s) fail(ErrorKind::kParse, std::string("root svg lacks the ") + name + " attribute");
    const auto v = to_length(*s);
    if (!v || *v <= 0.0) fail(ErrorKind::kParse, std::string("root svg has a bad ") + name);
    return static_cast<int>(std::ceil(*v - 1e-9));
  };
  walker.annotation.width = dim("width");
  walker.annotation.height = dim("height");
  if (const auto transform = attribute(*root, "transform")) {
    std::tie(walker.sx, walker.sy) = parse_root_scale(*transform);
  }
  walker.visit(*root);
  if (walker.stats.unmapped > 0) {
    log_info("svg: skipped " + std::to_string(walker.stats.unmapped) + " of " +
             std::to_string(walker.stats.polygons) + " polygon elements with unmapped classes");
  }
  if (stats) *stats = walker.stats;
  return std::move(walker.annotation);
}

Annotation load_svg(const std::string& path, const ClassMapConfig& config, SvgParseStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_svg(text.str(), config, stats);
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.detail());
  }
}

std::string serialize_svg(const Annotation& annotation, const ClassMapConfig& config) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(annotation.width) +
         "\" height=\"" + std::to_string(annotation.height) + "\">\n";
  for (const auto* list : {&annotation.rooms, &annotation.icons}) {
    for (const Polygon& p : *list) {
      validate_polygon(p);
      out += "  <polygon class=\"" + config.svg_class(p.layer, p.label) + "\" points=\"";
      for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        if (i) out += ' ';
        append_number(out, p.vertices[i].x);
        out += ',';
        append_number(out, p.vertices[i].y);
      }
      out += "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

Annotation scale_annotation(const Annotation& annotation, int factor) {
  if (factor < 1) fail(ErrorKind::kInvalidArgument, "scale factor must be >= 1");
  Annotation out = annotation;
  out.height *= factor;
  out.width *= factor;
  for (auto* list : {&out.rooms, &out.icons}) {
    for (Polygon& p : *list) {
      for (Point& v : p.vertices) {
        v.x *= factor;
        v.y *= factor;
      }
    }
  }
  return out;
}

LabelMap rasterize_annotation(const Annotation& annotation, PolygonLayer layer) {
  const auto& list = layer == PolygonLayer::kRooms ? annotation.rooms : annotation.icons;
  return rasterize_polygons(list, annotation.height, annotation.width, layer);
}

std::string annotation_to_json(const Annotation& annotation) {
  const nlohmann::json doc = {{"height", annotation.height},
                              {"width", annotation.width},
                              {"rooms", polygons_json(annotation.rooms)},
                              {"icons", polygons_json(annotation.icons)}};
  return doc.dump(1) + "\n";
}

Annotation annotation_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    Annotation a;
    a.height = doc.at("height").get<int>();
    a.width = doc.at("width").get<int>();
    a.rooms = polygons_from_json(doc.at("rooms"), PolygonLayer::kRooms);
    a.icons = polygons_from_json(doc.at("icons"), PolygonLayer::kIcons);
    return a;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, std::string("annotation JSON: ") + e.what());
  }
}

}  // namespace planvec
