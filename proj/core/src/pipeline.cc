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

#include "planvec/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "parallel.h"
#include "planvec/error.h"
#include "planvec/groundtruth.h"
#include "planvec/junctions.h"
#include "planvec/log.h"
#include "planvec/overlay.h"
#include "planvec/upscale.h"
#include "planvec/vectorize.h"

namespace planvec {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string dims_text(int width, int height) {
  return std::to_string(width) + "x" + std::to_string(height);
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits one CSV record; fields may be double-quoted.
std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  for (auto& f : fields) f = trim(f);
  return fields;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

WeightBundle resolve_weights(const PipelineConfig& config, const NetworkSpec& spec) {
  WeightBundle weights;
  if (!config.weights.empty()) {
    weights = load_weight_bundle(config.weights);
  } else if (const fs::path dir = fs::path(config.weights_dir) /
                                  (method_slug(spec.architecture) + "_x" +
                                   std::to_string(spec.scale_factor));
             !config.weights_dir.empty() && fs::exists(dir)) {
    weights = load_weight_bundle(dir);
  } else if (config.random_weights) {
    return random_weights(spec, config.seed);
  } else {
    fail(ErrorKind::kMissingWeight,
         "no weights for " + std::string(display_name(spec.architecture)) + " x" +
             std::to_string(spec.scale_factor) + "; set weights, weights_dir or random_weights");
  }
  check_weights(spec, weights);
  return weights;
}

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {
  config_.validate();
  classes_ = config_.class_map.empty() ? default_class_map() : load_class_map(config_.class_map);
  if (config_.sr_method) {
    spec_ = build_network(*config_.sr_method, config_.scale_factor, config_.sr_channels);
    weights_ = resolve_weights(config_, *spec_);
  }
}

ItemResult Pipeline::run(const RasterImage& image, const Tensor& detector,
                         const Annotation& truth, std::string image_id, int sr_threads,
                         bool keep_image) const {
  ItemResult r;
  r.image_id = std::move(image_id);
  try {
    if (truth.height != image.height || truth.width != image.width) {
      fail(ErrorKind::kDimensionMismatch, "ground truth canvas " +
                                              dims_text(truth.width, truth.height) +
                                              " differs from image " +
                                              dims_text(image.width, image.height));
    }
    r.sr_input_height = image.height;
    r.sr_input_width = image.width;

    auto start = Clock::now();
    RasterImage upscaled;
    const bool apply = spec_ && sr_gate(image.height, image.width, config_.gate_limit);
    if (apply) {
      upscaled = upscale(*spec_, weights_, image, ExecutionOptions{sr_threads});
      r.sr_applied = true;
      r.applied_factor = config_.scale_factor;
    }
    const RasterImage& work = apply ? upscaled : image;
    r.timing.seconds[0] = apply ? seconds_since(start) : 0.0;

    start = Clock::now();
    check_detector_output(detector);
    if (detector.dim(1) != static_cast<std::size_t>(work.height) ||
        detector.dim(2) != static_cast<std::size_t>(work.width)) {
      fail(ErrorKind::kDimensionMismatch,
           "detector output is " + dims_text(int(detector.dim(2)), int(detector.dim(1))) +
               " but the " + (apply ? "upscaled " : "") + "image is " +
               dims_text(work.width, work.height));
    }
    std::vector<JunctionPoint> junctions = extract_junctions(
        detector, config_.junction_channel_map, config_.threshold, config_.nms_radius);
    const LabelMap room_map = argmax_labels(detector, kRoomScoreOffset, kRoomClassCount);
    const LabelMap icon_map = argmax_labels(detector, kIconScoreOffset, kIconClassCount);
    r.timing.seconds[1] = seconds_since(start);

    start = Clock::now();
    VectorizeOptions options;
    options.align_tol = config_.align_tol * r.applied_factor;
    options.wall_thickness = config_.wall_thickness;
    options.min_area = config_.min_area;
    options.polygon_cap = config_.polygon_cap;
    try {
      r.prediction = vectorize_junctions(std::move(junctions), room_map, icon_map, options)
                         .annotation;
    } catch (const Error& e) {
      fail(e.kind(), std::string("vectorize: ") + e.detail());
    }
    r.timing.seconds[2] = seconds_since(start);

    start = Clock::now();
    r.truth = scale_annotation(truth, r.applied_factor);
    const LabelMap pred_rooms = rasterize_annotation(r.prediction, PolygonLayer::kRooms);
    const LabelMap pred_icons = rasterize_annotation(r.prediction, PolygonLayer::kIcons);
    const LabelMap true_rooms = rasterize_annotation(r.truth, PolygonLayer::kRooms);
    const LabelMap true_icons = rasterize_annotation(r.truth, PolygonLayer::kIcons);
    r.timing.seconds[3] = seconds_since(start);

    start = Clock::now();
    const std::string method = method_name(config_.sr_method);
    r.rooms = make_report(confusion(pred_rooms, true_rooms), classes_.room_names, method,
                          r.applied_factor, {r.image_id}, "per-image");
    r.icons = make_report(confusion(pred_icons, true_icons), classes_.icon_names, method,
                          r.applied_factor, {r.image_id}, "per-image");
    r.timing.seconds[4] = seconds_since(start);

    if (keep_image) r.image = apply ? std::move(upscaled) : image;
  } catch (const Error& e) {
    fail(e.kind(), r.image_id + ": " + e.detail());
  }
  return r;
}

ItemResult Pipeline::run_files(const fs::path& image, const fs::path& detector,
                               const fs::path& truth, int sr_threads, bool keep_image) const {
  const std::string id = image.stem().string();
  RasterImage img;
  std::optional<Tensor> det;
  Annotation gt;
  try {
    img = read_png(image);
    det = load_tensor(detector);
    gt = load_ground_truth(truth, classes_);
  } catch (const Error& e) {
    fail(e.kind(), id + ": " + e.detail());
  }
  return run(img, *det, gt, id, sr_threads, keep_image);
}

ItemResult run_one(const fs::path& image, const fs::path& detector, const fs::path& truth,
                   const PipelineConfig& config) {
  return Pipeline(config).run_files(image, detector, truth);
}

Annotation load_ground_truth(const fs::path& path, const ClassMapConfig& classes) {
  if (path.extension() == ".json") {
    try {
      return annotation_from_json(read_text(path));
    } catch (const Error& e) {
      fail(e.kind(), path.string() + ": " + e.detail());
    }
  }
  return load_svg(path.string(), classes);
}

std::vector<ManifestEntry> parse_manifest(const std::string& text, const fs::path& base_dir) {
  std::istringstream in(text);
  std::string line;
  std::vector<ManifestEntry> entries;
  bool header = false;
  int line_no = 0;
  auto resolve = [&](const std::string& p) {
    if (p.find("{method}") == std::string::npos && fs::path(p).is_absolute()) return p;
    return fs::path(p).is_absolute() || base_dir.empty() ? p : (base_dir / p).string();
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = csv_fields(line);
    if (!header) {
      if (fields != std::vector<std::string>{"image", "detector_output", "ground_truth"}) {
        fail(ErrorKind::kManifest,
             "manifest header must be 'image,detector_output,ground_truth'");
      }
      header = true;
      continue;
    }
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty() || fields[2].empty()) {
      fail(ErrorKind::kManifest,
           "manifest line " + std::to_string(line_no) + " needs three non-empty fields");
    }
    entries.push_back({resolve(fields[0]), resolve(fields[1]), resolve(fields[2])});
  }
  if (!header) fail(ErrorKind::kManifest, "manifest is missing its header");
  return entries;
}

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
  try {
    return parse_manifest(read_text(path), path.parent_path());
  } catch (const Error& e) {
    fail(e.kind(), path.string() + ": " + e.detail());
  }
}

std::string expand_method(std::string_view pattern, std::optional<Architecture> method) {
  static constexpr std::string_view kToken = "{method}";
  std::string out(pattern);
  const std::string slug = method_slug(method);
  for (auto pos = out.find(kToken); pos != std::string::npos;
       pos = out.find(kToken, pos + slug.size())) {
    out.replace(pos, kToken.size(), slug);
  }
  return out;
}

BatchResult run_batch(const fs::path& manifest, const PipelineConfig& config,
                      const BatchOptions& options) {
  return run_batch(read_manifest(manifest), config, options);
}

BatchResult run_batch(const std::vector<ManifestEntry>& entries, const PipelineConfig& config,
                      const BatchOptions& options) {
  config.validate();
  std::vector<std::optional<Architecture>> methods = options.methods;
  if (methods.empty()) methods.push_back(config.sr_method);
  if (!options.overlay_dir.empty()) fs::create_directories(options.overlay_dir);

  BatchResult batch;
  for (const auto& method : methods) {
    PipelineConfig cfg = config;
    cfg.sr_method = method;
    MethodResult mr;
    mr.method = method;
    mr.name = method_name(method);

    std::optional<Pipeline> pipeline;
    std::string setup_error;
    try {
      pipeline.emplace(cfg);
    } catch (const Error& e) {
      setup_error = e.what();
    }

    const std::size_t n = entries.size();
    std::vector<std::optional<ItemResult>> results(n);
    std::vector<std::string> errors(n);
    const bool overlays = !options.overlay_dir.empty();
    internal::parallel_for(n, pipeline ? cfg.workers : 1, [&](std::size_t i) {
      if (!pipeline) {
        errors[i] = setup_error;
        return;
      }
      try {
        const ManifestEntry& e = entries[i];
        ItemResult r = pipeline->run_files(e.image, expand_method(e.detector_output, method),
                                           e.ground_truth, 1, overlays);
        r.manifest_index = i;
        if (overlays) {
          const RasterImage picture = render_overlay(r.image, r.prediction, &r.truth);
          write_png(picture, options.overlay_dir / (method_slug(method) + "_" +
                                                    std::to_string(i) + "_" + r.image_id +
                                                    ".png"));
          r.image = RasterImage();
        }
        results[i] = std::move(r);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });

    ConfusionMatrix rooms(kRoomClassCount), icons(kIconClassCount);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) {
      if (!results[i]) {
        batch.failures.push_back({mr.name, i, entries[i].image, errors[i]});
        log_warning(mr.name + ": " + errors[i]);
        continue;
      }
      rooms += results[i]->rooms.matrix;
      icons += results[i]->icons.matrix;
      ids.push_back(results[i]->image_id);
      mr.items.push_back(std::move(*results[i]));
    }
    const ClassMapConfig& classes = pipeline ? pipeline->classes() : default_class_map();
    const int factor = method ? cfg.scale_factor : 1;
    mr.rooms = make_report(rooms, classes.room_names, mr.name, factor, ids, "pooled");
    mr.icons = make_report(icons, classes.icon_names, mr.name, factor, ids, "pooled");
    batch.methods.push_back(std::move(mr));
  }

  // Deltas against the no-SR baseline, pooled and per image.
  const auto base = std::find_if(batch.methods.begin(), batch.methods.end(),
                                 [](const MethodResult& m) { return !m.method; });
  if (base != batch.methods.end()) {
    for (const MethodResult& m : batch.methods) {
      if (!m.method) continue;
      for (const bool room_layer : {true, false}) {
        const char* layer = room_layer ? "rooms" : "icons";
        auto f1 = [&](const EvalReport& r) { return r.micro.f1; };
        const EvalReport& b = room_layer ? base->rooms : base->icons;
        const EvalReport& a = room_layer ? m.rooms : m.icons;
        if (f1(b) > 0.0) {
          batch.improvements.push_back(
              {m.name, layer, "pooled", improvement(f1(a), f1(b)), a.image_ids.size()});
        }
        std::map<std::size_t, double> baseline;
        for (const ItemResult& it : base->items) {
          baseline[it.manifest_index] = f1(room_layer ? it.rooms : it.icons);
        }
        std::vector<double> deltas;
        for (const ItemResult& it : m.items) {
          const auto found = baseline.find(it.manifest_index);
          if (found == baseline.end() || found->second <= 0.0) continue;
          deltas.push_back(improvement(f1(room_layer ? it.rooms : it.icons), found->second));
        }
        if (!deltas.empty()) {
          double sum = 0.0;
          for (double d : deltas) sum += d;
          batch.improvements.push_back(
              {m.name, layer, "per-image mean", sum / deltas.size(), deltas.size()});
          batch.improvements.push_back({m.name, layer, "per-image best",
                                        *std::max_element(deltas.begin(), deltas.end()),
                                        deltas.size()});
        }
      }
    }
  }

  // SR stage medians keyed by input size.
  std::map<std::pair<long, std::string>, LatencyRow> rows;
  for (const MethodResult& m : batch.methods) {
    if (!m.method) continue;
    std::map<std::string, std::pair<long, std::vector<double>>> samples;
    for (const ItemResult& it : m.items) {
      if (!it.sr_applied) continue;
      auto& slot = samples[dims_text(it.sr_input_width, it.sr_input_height)];
      slot.first = long(it.sr_input_width) * it.sr_input_height;
      slot.second.push_back(it.timing.seconds[0]);
    }
    for (auto& [size, slot] : samples) {
      LatencyRow& row = rows[{slot.first, size}];
      row.image_size = size;
      row.seconds[*m.method] = median(slot.second);
    }
  }
  for (auto& [key, row] : rows) batch.latency.push_back(std::move(row));
  return batch;
}

void write_batch_outputs(const BatchResult& result, const PipelineConfig& config,
                         const fs::path& out_dir) {
  fs::create_directories(out_dir);
  std::vector<EvalReport> rooms, icons;
  for (const MethodResult& m : result.methods) {
    rooms.push_back(m.rooms);
    icons.push_back(m.icons);
  }
  write_text(out_dir / "rooms.md", render_report(rooms, ReportFormat::kMarkdown));
  write_text(out_dir / "rooms.csv", render_report(rooms, ReportFormat::kCsv));
  write_text(out_dir / "icons.md", render_report(icons, ReportFormat::kMarkdown));
  write_text(out_dir / "icons.csv", render_report(icons, ReportFormat::kCsv));

  nlohmann::json per_image = nlohmann::json::array();
  std::string timings = "method,image";
  for (std::string_view s : kStageNames) timings += "," + std::string(s);
  timings += "\n";
  for (const MethodResult& m : result.methods) {
    for (const ItemResult& it : m.items) {
      per_image.push_back({{"method", m.name},
                           {"index", it.manifest_index},
                           {"image", it.image_id},
                           {"sr_applied", it.sr_applied},
                           {"applied_factor", it.applied_factor},
                           {"rooms", nlohmann::json::parse(report_to_json(it.rooms))},
                           {"icons", nlohmann::json::parse(report_to_json(it.icons))}});
      timings += m.name + "," + it.image_id;
      for (double s : it.timing.seconds) timings += "," + fixed6(s);
      timings += "\n";
    }
  }
  write_text(out_dir / "per_image.json", per_image.dump(1) + "\n");
  write_text(out_dir / "timings.csv", timings);
  write_text(out_dir / "latency.csv", render_latency_csv(result.latency));

  nlohmann::json summary;
  summary["scale_factor"] = config.scale_factor;
  summary["gate_limit"] = config.gate_limit;
  summary["ground_truth_scaling"] =
      "vertex coordinates multiplied by the applied factor, then rasterized on the enlarged canvas";
  summary["tables"] = "pooled confusion over all successful images, per layer";
  nlohmann::json methods = nlohmann::json::array();
  for (const MethodResult& m : result.methods) {
    methods.push_back({{"method", m.name},
                       {"images", m.items.size()},
                       {"rooms_micro_f1", m.rooms.micro.f1},
                       {"icons_micro_f1", m.icons.micro.f1}});
  }
  summary["methods"] = std::move(methods);
  nlohmann::json deltas = nlohmann::json::array();
  for (const Improvement& d : result.improvements) {
    deltas.push_back({{"method", d.method},
                      {"layer", d.layer},
                      {"aggregation", d.aggregation},
                      {"metric", "relative micro-F1 change vs Original, percent"},
                      {"percent", d.percent},
                      {"images", d.images}});
  }
  summary["improvements"] = std::move(deltas);
  nlohmann::json failures = nlohmann::json::array();
  for (const ItemFailure& f : result.failures) {
    failures.push_back(
        {{"method", f.method}, {"index", f.index}, {"image", f.image}, {"error", f.message}});
  }
  summary["failures"] = std::move(failures);
  write_text(out_dir / "summary.json", summary.dump(1) + "\n");
}

}  // namespace planvec
