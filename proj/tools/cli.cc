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

#include "cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "planvec/config.h"
#include "planvec/error.h"
#include "planvec/evaluate.h"
#include "planvec/groundtruth.h"
#include "planvec/image.h"
#include "planvec/latency.h"
#include "planvec/network.h"
#include "planvec/overlay.h"
#include "planvec/pipeline.h"
#include "planvec/tensorio.h"
#include "planvec/upscale.h"
#include "planvec/vectorize.h"

namespace planvec::cli {
namespace {

namespace fs = std::filesystem;

const std::map<std::string, std::string>& usage_lines() {
  static const std::map<std::string, std::string> lines = {
      {"sr",
       "planvec sr --method NAME --scale N (--weights DIR | --weights-dir DIR | --random-weights) "
       "--in IN.png --out OUT.png"},
      {"vectorize",
       "planvec vectorize --detector D.fpt --out PRED.svg|PRED.json [--overlay O.png --image "
       "I.png]"},
      {"eval", "planvec eval --pred P.svg|P.json --truth T.svg|T.json [--format md|csv|json]"},
      {"bench",
       "planvec bench --sizes N[,N...] --methods all|LIST (--weights-dir DIR | "
       "--random-weights) [--out B.csv]"},
      {"pipeline",
       "planvec pipeline --manifest M.csv [--config C] [--compare LIST] [--out-dir DIR]"},
  };
  return lines;
}

std::string usage_for(const std::vector<std::string>& args) {
  if (!args.empty()) {
    const auto it = usage_lines().find(args.front());
    if (it != usage_lines().end()) return "usage: " + it->second;
  }
  return "usage: planvec {sr,vectorize,eval,bench,pipeline} [options]  (see --help)";
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Architecture> parse_methods(const std::string& text) {
  std::vector<Architecture> out;
  for (const std::string& name : split_list(text)) {
    if (name == "all") {
      out.assign(std::begin(kAllArchitectures), std::end(kAllArchitectures));
      continue;
    }
    const auto arch = parse_architecture(name);
    if (!arch) fail(ErrorKind::kInvalidArgument, "unknown SR method '" + name + "'");
    if (std::find(out.begin(), out.end(), *arch) == out.end()) out.push_back(*arch);
  }
  if (out.empty()) fail(ErrorKind::kInvalidArgument, "no SR methods given");
  return out;
}

std::pair<int, int> parse_size(const std::string& text) {
  int w = 0, h = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%dx%d%c", &w, &h, &tail) == 2 && w > 0 && h > 0) return {w, h};
  if (std::sscanf(text.c_str(), "%d%c", &w, &tail) == 1 && w > 0) return {w, w};
  fail(ErrorKind::kInvalidArgument, "bad image size '" + text + "'; use N or WxH");
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Deterministic RGB noise used as benchmark input.
RasterImage noise_image(int height, int width, std::uint64_t seed) {
  RasterImage img(height, width, 3);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  for (float& v : img.samples) v = dist(rng);
  return img;
}

// Flags shared by subcommands that post-process detector output.
struct VectorizeFlags {
  float threshold = kDefaultThreshold;
  int nms_radius = kDefaultNmsRadius;
  double align_tol = 5.0;
  int min_area = 50;
  std::size_t polygon_cap = 10000;
  int wall_thickness = 3;

  void add(CLI::App* app) {
    app->add_option("--threshold", threshold, "Heatmap peak threshold in (0,1)")
        ->capture_default_str();
    app->add_option("--nms-radius", nms_radius, "Peak suppression radius in pixels")
        ->capture_default_str();
    app->add_option("--align-tol", align_tol, "Junction alignment tolerance in pixels")
        ->capture_default_str();
    app->add_option("--min-area", min_area, "Smallest room face kept, in pixels")
        ->capture_default_str();
    app->add_option("--polygon-cap", polygon_cap, "Abort above this many candidate polygons")
        ->capture_default_str();
    app->add_option("--wall-thickness", wall_thickness, "Wall rectangle thickness in pixels")
        ->capture_default_str();
  }

  VectorizeOptions options() const {
    VectorizeOptions o;
    o.align_tol = align_tol;
    o.min_area = min_area;
    o.polygon_cap = polygon_cap;
    o.wall_thickness = wall_thickness;
    return o;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Super-resolution preprocessing and floor-plan vectorization", "planvec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "planvec 0.1.0");

  // sr
  auto* sr = app.add_subcommand("sr", "Upscale a PNG with one SR network");
  std::string sr_method, sr_weights, sr_weights_dir, sr_in, sr_out, sr_channels = "auto";
  int sr_scale = 2, sr_threads = 1;
  std::uint64_t sr_seed = 0;
  bool sr_random = false;
  sr->add_option("--method", sr_method, "edsr, espcn, fsrcnn or lapsrn")->required();
  sr->add_option("--scale", sr_scale, "Upscaling factor: 2, 3 or 4")->capture_default_str();
  auto* sr_w = sr->add_option("--weights", sr_weights, "Weight bundle directory or manifest");
  auto* sr_wd = sr->add_option("--weights-dir", sr_weights_dir,
                               "Directory holding <method>_x<scale> bundles");
  auto* sr_r = sr->add_flag("--random-weights", sr_random, "Use seeded random weights");
  sr_w->excludes(sr_r);
  sr_w->excludes(sr_wd);
  sr_wd->excludes(sr_r);
  sr->add_option("--seed", sr_seed, "Seed for --random-weights")->capture_default_str();
  sr->add_option("--channels", sr_channels, "auto, luma or rgb")->capture_default_str();
  sr->add_option("--threads", sr_threads, "Worker threads for the convolutions")
      ->capture_default_str();
  sr->add_option("--in", sr_in, "Input PNG")->required();
  sr->add_option("--out", sr_out, "Output PNG")->required();

  // vectorize
  auto* vec = app.add_subcommand("vectorize", "Turn a detector tensor into labelled polygons");
  std::string vec_detector, vec_out, vec_overlay, vec_image, vec_class_map;
  VectorizeFlags vec_flags;
  vec->add_option("--detector", vec_detector, "Detector output tensor [44,H,W]")->required();
  vec->add_option("--out", vec_out, "Prediction file, .svg or .json")->required();
  auto* vec_ov = vec->add_option("--overlay", vec_overlay, "Write an overlay PNG here");
  vec->add_option("--image", vec_image, "Input PNG drawn under the overlay")->needs(vec_ov);
  vec->add_option("--class-map", vec_class_map, "Class map file for SVG output");
  vec_flags.add(vec);

  // eval
  auto* ev = app.add_subcommand("eval", "Score a prediction against ground truth");
  std::string ev_pred, ev_truth, ev_format = "md", ev_out, ev_class_map, ev_method = "Original";
  std::string ev_layer = "both";
  ev->add_option("--pred", ev_pred, "Predicted annotation, .svg or .json")->required();
  ev->add_option("--truth", ev_truth, "Ground-truth annotation, .svg or .json")->required();
  ev->add_option("--format", ev_format, "md, csv or json")
      ->check(CLI::IsMember({"md", "csv", "json"}))
      ->capture_default_str();
  ev->add_option("--layer", ev_layer, "rooms, icons or both")
      ->check(CLI::IsMember({"rooms", "icons", "both"}))
      ->capture_default_str();
  ev->add_option("--method", ev_method, "Column name for the report")->capture_default_str();
  ev->add_option("--out", ev_out, "Write the report here instead of standard output");
  ev->add_option("--class-map", ev_class_map, "Class map file");

  // bench
  auto* bench = app.add_subcommand("bench", "Time SR networks on synthetic inputs");
  std::string bench_sizes, bench_methods = "all", bench_weights_dir, bench_out;
  int bench_scale = 2, bench_repeats = 5;
  std::uint64_t bench_seed = 0;
  bool bench_random = false;
  bench->add_option("--sizes", bench_sizes, "Comma list of N or WxH input sizes")->required();
  bench->add_option("--methods", bench_methods, "all or a comma list")->capture_default_str();
  bench->add_option("--scale", bench_scale, "Upscaling factor")->capture_default_str();
  bench->add_option("--repeats", bench_repeats, "Timed runs per cell; the median is reported")
      ->capture_default_str();
  auto* bench_wd = bench->add_option("--weights-dir", bench_weights_dir,
                                     "Directory holding <method>_x<scale> bundles");
  auto* bench_r =
      bench->add_flag("--random-weights", bench_random, "Use seeded random weights throughout");
  bench_wd->excludes(bench_r);
  bench->add_option("--seed", bench_seed, "Seed for weights and input noise")
      ->capture_default_str();
  bench->add_option("--out", bench_out, "CSV path; a .meta.json sidecar is written next to it");

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "Run SR, vectorization and scoring over a manifest");
  std::string pipe_manifest, pipe_config, pipe_compare, pipe_out_dir, pipe_format = "md";
  bool pipe_overlays = false;
  pipe->add_option("--manifest", pipe_manifest, "CSV: image,detector_output,ground_truth")
      ->required();
  pipe->add_option("--config", pipe_config, "Flat key = value pipeline config");
  pipe->add_option("--compare", pipe_compare,
                   "Comma list of methods (none for the original image)");
  pipe->add_option("--out-dir", pipe_out_dir, "Directory for reports and overlays");
  pipe->add_option("--format", pipe_format, "Table format on standard output: md or csv")
      ->check(CLI::IsMember({"md", "csv"}))
      ->capture_default_str();
  pipe->add_flag("--overlays", pipe_overlays, "Write overlay PNGs under <out-dir>/overlays");
  // Flags mirroring config keys; set ones override the config file.
  std::map<std::string, std::string> overrides;
  std::vector<std::pair<std::string, std::string>> override_flags = {
      {"--method", "sr_method"},       {"--scale", "scale_factor"},
      {"--gate-limit", "gate_limit"},  {"--threshold", "threshold"},
      {"--nms-radius", "nms_radius"},  {"--align-tol", "align_tol"},
      {"--min-area", "min_area"},      {"--polygon-cap", "polygon_cap"},
      {"--wall-thickness", "wall_thickness"}, {"--class-map", "class_map"},
      {"--weights", "weights"},        {"--weights-dir", "weights_dir"},
      {"--seed", "seed"},              {"--sr-channels", "sr_channels"},
      {"--workers", "workers"}};
  std::map<std::string, CLI::Option*> pipe_opts;
  for (const auto& [flag, key] : override_flags) {
    pipe_opts[flag] = pipe->add_option(flag, overrides[key], "Overrides config key " + key);
  }
  pipe_opts["--workers"]->envname("PLANVEC_WORKERS");
  bool pipe_random = false;
  auto* pipe_r = pipe->add_flag("--random-weights", pipe_random, "Use seeded random SR weights");
  pipe_opts["--weights"]->excludes(pipe_r);

  std::vector<std::string> argv_store = {"planvec"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (pipe->parsed() && pipe_overlays && pipe_out_dir.empty()) {
      throw CLI::ValidationError("--overlays", "--overlays requires --out-dir");
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    // Name an unknown flag even when a missing required option fired first.
    std::string message = e.what();
    if (!args.empty()) {
      const CLI::App* sub = app.get_subcommand_no_throw(args.front());
      for (std::size_t i = 1; sub && i < args.size(); ++i) {
        const std::string flag = args[i].substr(0, args[i].find('='));
        if (flag.size() > 1 && flag[0] == '-' && !std::isdigit(static_cast<unsigned char>(flag[1])) &&
            sub->get_option_no_throw(flag) == nullptr) {
          message = "unknown flag " + flag;
          break;
        }
      }
    }
    err << usage_for(args) << "\nerror: " << message << "\n";
    return kExitUsage;
  }

  try {
    if (sr->parsed()) {
      const auto arch = parse_architecture(sr_method);
      if (!arch) fail(ErrorKind::kInvalidArgument, "unknown SR method '" + sr_method + "'");
      const auto mode = parse_channel_mode(sr_channels);
      if (!mode) fail(ErrorKind::kInvalidArgument, "--channels must be auto, luma or rgb");
      const NetworkSpec spec = build_network(*arch, sr_scale, *mode);
      PipelineConfig cfg;
      cfg.weights = sr_weights;
      cfg.weights_dir = sr_weights_dir;
      cfg.random_weights = sr_random;
      cfg.seed = sr_seed;
      const WeightBundle weights = resolve_weights(cfg, spec);
      const RasterImage image = read_png(sr_in);
      write_png(upscale(spec, weights, image, ExecutionOptions{sr_threads}), sr_out);
      return kExitOk;
    }

    if (vec->parsed()) {
      VectorizeOptions options = vec_flags.options();
      const Tensor detector = load_tensor(vec_detector);
      const Vectorized v = vectorize_detector_output(detector, vec_flags.threshold,
                                                     vec_flags.nms_radius, options,
                                                     identity_channel_map());
      const ClassMapConfig classes =
          vec_class_map.empty() ? default_class_map() : load_class_map(vec_class_map);
      write_file(vec_out, ends_with(vec_out, ".json") ? annotation_to_json(v.annotation)
                                                      : serialize_svg(v.annotation, classes));
      if (!vec_overlay.empty()) {
        const RasterImage base = vec_image.empty()
                                     ? RasterImage(v.annotation.height, v.annotation.width, 3, 1.0f)
                                     : read_png(vec_image);
        write_png(render_overlay(base, v.annotation), vec_overlay);
      }
      err << "vectorize: " << v.junctions.size() << " junctions, " << v.annotation.rooms.size()
          << " rooms, " << v.annotation.icons.size() << " icons\n";
      return kExitOk;
    }

    if (ev->parsed()) {
      const ClassMapConfig classes =
          ev_class_map.empty() ? default_class_map() : load_class_map(ev_class_map);
      const Annotation pred = load_ground_truth(ev_pred, classes);
      const Annotation truth = load_ground_truth(ev_truth, classes);
      std::string text;
      for (PolygonLayer layer : {PolygonLayer::kRooms, PolygonLayer::kIcons}) {
        const bool rooms = layer == PolygonLayer::kRooms;
        if (ev_layer != "both" && (ev_layer == "rooms") != rooms) continue;
        const ConfusionMatrix cm =
            confusion(rasterize_annotation(pred, layer), rasterize_annotation(truth, layer));
        const EvalReport report = make_report(cm, classes.names(layer), ev_method, 1,
                                              {fs::path(ev_truth).stem().string()}, "per-image");
        if (ev_format == "json") {
          text += report_to_json(report);
          continue;
        }
        if (ev_layer == "both") {
          text += text.empty() ? "" : "\n";
          text += ev_format == "md" ? (rooms ? "### Rooms\n\n" : "### Icons\n\n")
                                    : (rooms ? "# rooms\n" : "# icons\n");
        }
        const EvalReport one[] = {report};
        text += render_report(one, ev_format == "md" ? ReportFormat::kMarkdown : ReportFormat::kCsv);
      }
      if (ev_out.empty()) {
        out << text;
      } else {
        write_file(ev_out, text);
      }
      return kExitOk;
    }

    if (bench->parsed()) {
      const std::vector<Architecture> methods = parse_methods(bench_methods);
      if (bench_repeats < 1) fail(ErrorKind::kInvalidArgument, "--repeats must be >= 1");
      if (!bench_random && bench_weights_dir.empty()) {
        fail(ErrorKind::kInvalidArgument, "bench needs --weights-dir or --random-weights");
      }
      std::vector<LatencyRow> rows;
      nlohmann::json weight_sources = nlohmann::json::object();
      for (const std::string& size_text : split_list(bench_sizes)) {
        const auto [w, h] = parse_size(size_text);
        const RasterImage input = noise_image(h, w, bench_seed);
        LatencyRow row;
        row.image_size = std::to_string(w) + "x" + std::to_string(h);
        for (Architecture arch : methods) {
          const NetworkSpec spec = build_network(arch, bench_scale);
          PipelineConfig cfg;
          cfg.weights_dir = bench_weights_dir;
          cfg.random_weights = true;  // a missing bundle falls back to random weights
          cfg.seed = bench_seed;
          const fs::path bundle = fs::path(bench_weights_dir) /
                                  (method_slug(arch) + "_x" + std::to_string(bench_scale));
          const bool trained = !bench_random && fs::exists(bundle);
          if (bench_random) cfg.weights_dir.clear();
          weight_sources[method_slug(arch)] = trained ? bundle.string() : "random";
          const WeightBundle weights = resolve_weights(cfg, spec);
          row.seconds[arch] = benchmark_latency(spec, weights, input, bench_repeats).median_seconds;
          err << "bench: " << display_name(arch) << " " << row.image_size << " "
              << row.seconds[arch] << " s\n";
        }
        rows.push_back(std::move(row));
      }
      const std::string csv = render_latency_csv(rows);
      if (bench_out.empty()) {
        out << csv;
      } else {
        write_file(bench_out, csv);
        nlohmann::json meta = {
            {"statistic", "median wall-clock seconds per end-to-end upscale call"},
            {"repetitions", bench_repeats},
            {"threads", 1},
            {"scale_factor", bench_scale},
            {"input", "seeded uniform RGB noise"},
            {"seed", bench_seed},
            {"weights", weight_sources},
            {"sizes", split_list(bench_sizes)}};
        write_file(bench_out + ".meta.json", meta.dump(1) + "\n");
      }
      return kExitOk;
    }

    if (pipe->parsed()) {
      PipelineConfig cfg;
      if (!pipe_config.empty()) cfg = load_pipeline_config(pipe_config);
      for (const auto& [flag, key] : override_flags) {
        if (pipe_opts[flag]->count() > 0) apply_setting(cfg, key, overrides[key]);
      }
      if (pipe_random) cfg.random_weights = true;
      cfg.validate();
      BatchOptions options;
      if (!pipe_compare.empty()) {
        for (const std::string& name : split_list(pipe_compare)) {
          options.methods.push_back(parse_sr_method(name));
        }
      }
      if (pipe_overlays) options.overlay_dir = fs::path(pipe_out_dir) / "overlays";
      const BatchResult result = run_batch(pipe_manifest, cfg, options);
      if (!pipe_out_dir.empty()) write_batch_outputs(result, cfg, pipe_out_dir);
      std::vector<EvalReport> rooms, icons;
      for (const MethodResult& m : result.methods) {
        rooms.push_back(m.rooms);
        icons.push_back(m.icons);
      }
      const ReportFormat format = pipe_format == "md" ? ReportFormat::kMarkdown : ReportFormat::kCsv;
      out << (format == ReportFormat::kMarkdown ? "### Rooms\n\n" : "# rooms\n")
          << render_report(rooms, format) << "\n"
          << (format == ReportFormat::kMarkdown ? "### Icons\n\n" : "# icons\n")
          << render_report(icons, format);
      for (const ItemFailure& f : result.failures) {
        err << "pipeline: " << f.method << " item " << f.index << " failed: " << f.message << "\n";
      }
      return result.ok() ? kExitOk : kExitFailure;
    }
  } catch (const std::exception& e) {
    err << "planvec: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace planvec::cli
