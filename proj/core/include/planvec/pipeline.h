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

#ifndef PLANVEC_PIPELINE_H_
#define PLANVEC_PIPELINE_H_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "planvec/classes.h"
#include "planvec/config.h"
#include "planvec/evaluate.h"
#include "planvec/geometry.h"
#include "planvec/image.h"
#include "planvec/latency.h"
#include "planvec/network.h"
#include "planvec/tensor.h"
#include "planvec/tensorio.h"

namespace planvec {

inline constexpr std::array<std::string_view, 5> kStageNames = {"sr", "junctions", "vectorize",
                                                                 "rasterize", "evaluate"};

// Wall-clock seconds per stage, indexed like kStageNames.
struct TimingRecord {
  std::array<double, kStageNames.size()> seconds{};
};

struct ItemResult {
  std::string image_id;
  std::size_t manifest_index = 0;
  bool sr_applied = false;
  int applied_factor = 1;  // 1 when SR was gated out or disabled
  int sr_input_height = 0, sr_input_width = 0;
  Annotation prediction;
  Annotation truth;  // scaled by applied_factor
  EvalReport rooms;
  EvalReport icons;
  TimingRecord timing;
  RasterImage image;  // post-SR input; kept only when requested
};

// Resolves the SR weights for `config`: an explicit bundle, then
// <weights_dir>/<method>_x<scale>, then random weights if allowed.
WeightBundle resolve_weights(const PipelineConfig& config, const NetworkSpec& spec);

// Loads the SR network and class map once; `run` is then safe to call from
// several threads.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);

  const PipelineConfig& config() const { return config_; }
  const ClassMapConfig& classes() const { return classes_; }

  ItemResult run(const RasterImage& image, const Tensor& detector, const Annotation& truth,
                 std::string image_id, int sr_threads = 1, bool keep_image = false) const;

  ItemResult run_files(const std::filesystem::path& image, const std::filesystem::path& detector,
                       const std::filesystem::path& truth, int sr_threads = 1,
                       bool keep_image = false) const;

 private:
  PipelineConfig config_;
  ClassMapConfig classes_;
  std::optional<NetworkSpec> spec_;
  WeightBundle weights_;
};

ItemResult run_one(const std::filesystem::path& image, const std::filesystem::path& detector,
                   const std::filesystem::path& truth, const PipelineConfig& config);

// Ground truth from SVG, or from the JSON layout when the name ends in .json.
Annotation load_ground_truth(const std::filesystem::path& path, const ClassMapConfig& classes);

struct ManifestEntry {
  std::string image;
  std::string detector_output;  // may contain "{method}"
  std::string ground_truth;
};

// CSV with header `image,detector_output,ground_truth`; relative paths are
// resolved against the manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
std::vector<ManifestEntry> parse_manifest(const std::string& text,
                                          const std::filesystem::path& base_dir = {});

// Replaces every "{method}" with method_slug(method).
std::string expand_method(std::string_view pattern, std::optional<Architecture> method);

struct ItemFailure {
  std::string method;
  std::size_t index;  // manifest row, 0-based
  std::string image;
  std::string message;
};

struct MethodResult {
  std::optional<Architecture> method;
  std::string name;
  EvalReport rooms;  // pooled over the items that succeeded
  EvalReport icons;
  std::vector<ItemResult> items;  // manifest order, successes only
};

struct Improvement {
  std::string method;
  std::string layer;        // "rooms" or "icons"
  std::string aggregation;  // "pooled" or "per-image mean" or "per-image best"
  double percent = 0.0;
  std::size_t images = 0;
};

struct BatchResult {
  std::vector<MethodResult> methods;
  std::vector<ItemFailure> failures;
  std::vector<Improvement> improvements;  // only when "Original" is among the methods
  std::vector<LatencyRow> latency;        // SR stage medians by input size

  bool ok() const { return failures.empty(); }
};

struct BatchOptions {
  std::vector<std::optional<Architecture>> methods;  // empty: just config.sr_method
  std::filesystem::path overlay_dir;                 // empty: no overlays
};

BatchResult run_batch(const std::filesystem::path& manifest, const PipelineConfig& config,
                      const BatchOptions& options = {});
BatchResult run_batch(const std::vector<ManifestEntry>& entries, const PipelineConfig& config,
                      const BatchOptions& options = {});

// rooms.{md,csv}, icons.{md,csv}, per_image.json, summary.json (all
// deterministic) plus timings.csv and latency.csv.
void write_batch_outputs(const BatchResult& result, const PipelineConfig& config,
                         const std::filesystem::path& out_dir);

}  // namespace planvec

#endif  // PLANVEC_PIPELINE_H_
