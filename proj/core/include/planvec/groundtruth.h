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

#ifndef PLANVEC_GROUNDTRUTH_H_
#define PLANVEC_GROUNDTRUTH_H_

#include <cstddef>
#include <string>

#include "planvec/classes.h"
#include "planvec/geometry.h"
#include "planvec/raster.h"

namespace planvec {

struct SvgParseStats {
  std::size_t polygons = 0;  // polygon and rect elements seen
  std::size_t unmapped = 0;  // skipped because no class token resolved
};

// Reads `polygon` and `rect` elements. An element takes its class from its
// own class attribute or, failing that, the nearest ancestor that resolves.
// Within one attribute the whole string is tried first, then its
// whitespace-separated tokens from last to first.
Annotation parse_svg(const std::string& text, const ClassMapConfig& config = default_class_map(),
                     SvgParseStats* stats = nullptr);
Annotation load_svg(const std::string& path, const ClassMapConfig& config = default_class_map(),
                    SvgParseStats* stats = nullptr);

// Canonical document: one `polygon` per entry, rooms then icons.
std::string serialize_svg(const Annotation& annotation,
                          const ClassMapConfig& config = default_class_map());

Annotation scale_annotation(const Annotation& annotation, int factor);

LabelMap rasterize_annotation(const Annotation& annotation, PolygonLayer layer);

// {"height":H,"width":W,"rooms":[{"label":id,"vertices":[[x,y],...]}],"icons":[...]}
std::string annotation_to_json(const Annotation& annotation);
Annotation annotation_from_json(const std::string& text);

}  // namespace planvec

#endif  // PLANVEC_GROUNDTRUTH_H_
