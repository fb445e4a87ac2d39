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

#include "planvec/network.h"

#include <cctype>
#include <cmath>
#include <random>

#include "planvec/error.h"

namespace planvec {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class PlanBuilder {
 public:
  int add(LayerOp op, int input = kPreviousLayer) {
    layers_.push_back({std::move(op), input});
    return static_cast<int>(layers_.size()) - 1;
  }
  int conv(int in, int out, int k, int input = kPreviousLayer) {
    return add(layers::Conv{in, out, k, 1, k / 2}, input);
  }
  int last() const { return static_cast<int>(layers_.size()) - 1; }
  std::vector<Layer> take() { return std::move(layers_); }

 private:
  std::vector<Layer> layers_;
};

std::vector<Layer> espcn(int scale, int channels) {
  PlanBuilder b;
  b.conv(channels, 64, 5, kNetworkInput);
  b.add(layers::ReLU{});
  b.conv(64, 32, 3);
  b.add(layers::ReLU{});
  b.conv(32, channels * scale * scale, 3);
  b.add(layers::PixelShuffle{scale});
  return b.take();
}

std::vector<Layer> fsrcnn(int scale, int channels) {
  constexpr int d = 56, s = 12, m = 4;
  PlanBuilder b;
  b.conv(channels, d, 5, kNetworkInput);
  b.add(layers::PReLU{d});
  b.conv(d, s, 1);
  b.add(layers::PReLU{s});
  for (int i = 0; i < m; ++i) {
    b.conv(s, s, 3);
    b.add(layers::PReLU{s});
  }
  b.conv(s, d, 1);
  b.add(layers::PReLU{d});
  b.add(layers::ConvTranspose{d, channels, 9, scale, 4, scale - 1});
  return b.take();
}

std::vector<Layer> lapsrn(int scale, int channels) {
  constexpr int feats = 64, depth = 10;
  constexpr float slope = 0.2f;
  // x2 levels use 4x4 stride-2 kernels; x3 is a single 5x5 stride-3 level.
  const std::vector<int> steps = scale == 3 ? std::vector<int>{3}
                                 : scale == 2 ? std::vector<int>{2}
                                              : std::vector<int>{2, 2};
  PlanBuilder b;
  b.conv(channels, feats, 3, kNetworkInput);
  int features = b.add(layers::LeakyReLU{slope});
  int image = kNetworkInput;
  for (int step : steps) {
    const int kernel = step == 2 ? 4 : 5;
    b.conv(feats, feats, 3, features);
    b.add(layers::LeakyReLU{slope});
    for (int i = 1; i < depth; ++i) {
      b.conv(feats, feats, 3);
      b.add(layers::LeakyReLU{slope});
    }
    b.add(layers::ConvTranspose{feats, feats, kernel, step, 1, 0});
    features = b.add(layers::LeakyReLU{slope});
    const int residual = b.conv(feats, channels, 3, features);
    b.add(layers::ConvTranspose{channels, channels, kernel, step, 1, 0}, image);
    image = b.add(layers::Add{residual});
  }
  return b.take();
}

std::vector<Layer> edsr(int scale, int channels) {
  constexpr int feats = 256, blocks = 32;
  constexpr float res_scale = 0.1f;
  PlanBuilder b;
  const int head = b.conv(channels, feats, 3, kNetworkInput);
  int block_in = head;
  for (int i = 0; i < blocks; ++i) {
    b.conv(feats, feats, 3, block_in);
    b.add(layers::ReLU{});
    b.conv(feats, feats, 3);
    b.add(layers::Scale{res_scale});
    block_in = b.add(layers::Add{block_in});
  }
  b.conv(feats, feats, 3, block_in);
  b.add(layers::Add{head});
  const std::vector<int> steps = scale == 4 ? std::vector<int>{2, 2}
                                            : std::vector<int>{scale};
  for (int step : steps) {
    b.conv(feats, feats * step * step, 3);
    b.add(layers::PixelShuffle{step});
  }
  b.conv(feats, channels, 3);
  return b.take();
}

struct Signal {
  int channels;
  int magnification;
};

[[noreturn]] void invalid(std::size_t layer, const std::string& why) {
  fail(ErrorKind::kInvalidNetwork, "layer " + std::to_string(layer) + ": " + why);
}

}  // namespace

std::string_view display_name(Architecture arch) {
  switch (arch) {
    case Architecture::kEdsr: return "EDSR";
    case Architecture::kEspcn: return "ESPCN";
    case Architecture::kFsrcnn: return "FSRCNN";
    case Architecture::kLapsrn: return "LapSRN";
  }
  return "?";
}

std::optional<Architecture> parse_architecture(std::string_view name) {
  const std::string n = lower(name);
  if (n == "edsr") return Architecture::kEdsr;
  if (n == "espcn") return Architecture::kEspcn;
  if (n == "fsrcnn") return Architecture::kFsrcnn;
  if (n == "lapsrn") return Architecture::kLapsrn;
  return std::nullopt;
}

std::optional<ChannelMode> parse_channel_mode(std::string_view name) {
  const std::string n = lower(name);
  if (n == "auto") return ChannelMode::kAuto;
  if (n == "luma" || n == "y") return ChannelMode::kLuma;
  if (n == "rgb") return ChannelMode::kRgb;
  return std::nullopt;
}

int NetworkSpec::producer(std::size_t i) const {
  const int input = layers.at(i).input;
  return input == kPreviousLayer ? static_cast<int>(i) - 1 : input;
}

NetworkSpec build_network(Architecture arch, int scale, ChannelMode mode) {
  if (scale < 2 || scale > 4) {
    fail(ErrorKind::kUnsupportedScale,
         std::string(display_name(arch)) + " supports x2, x3, x4; got x" +
             std::to_string(scale));
  }
  if (mode == ChannelMode::kAuto) {
    mode = arch == Architecture::kEdsr ? ChannelMode::kRgb : ChannelMode::kLuma;
  }
  NetworkSpec spec;
  spec.architecture = arch;
  spec.scale_factor = scale;
  spec.input_channels = mode == ChannelMode::kRgb ? 3 : 1;
  switch (arch) {
    case Architecture::kEspcn: spec.layers = espcn(scale, spec.input_channels); break;
    case Architecture::kFsrcnn: spec.layers = fsrcnn(scale, spec.input_channels); break;
    case Architecture::kLapsrn: spec.layers = lapsrn(scale, spec.input_channels); break;
    case Architecture::kEdsr: spec.layers = edsr(scale, spec.input_channels); break;
  }
  validate(spec);
  return spec;
}

void validate(const NetworkSpec& spec) {
  if (spec.input_channels < 1) {
    fail(ErrorKind::kInvalidNetwork, "input_channels must be >= 1");
  }
  std::vector<Signal> out(spec.layers.size());
  const Signal input{spec.input_channels, 1};
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const int p = spec.producer(i);
    if (p < kNetworkInput || p >= static_cast<int>(i)) {
      invalid(i, "input must come from an earlier layer or the network input");
    }
    const Signal in = p == kNetworkInput ? input : out[p];
    out[i] = std::visit(
        Overloaded{
            [&](const layers::Conv& c) -> Signal {
              if (c.in_channels != in.channels) {
                invalid(i, "conv expects " + std::to_string(c.in_channels) +
                               " channels, producer gives " + std::to_string(in.channels));
              }
              if (c.out_channels < 1 || c.kernel < 1) invalid(i, "empty conv");
              if (c.stride != 1 || c.kernel != 2 * c.pad + 1) {
                invalid(i, "conv layers must preserve spatial size");
              }
              return {c.out_channels, in.magnification};
            },
            [&](const layers::ConvTranspose& c) -> Signal {
              if (c.in_channels != in.channels) {
                invalid(i, "transposed conv expects " + std::to_string(c.in_channels) +
                               " channels, producer gives " + std::to_string(in.channels));
              }
              if (c.stride < 1 || c.output_padding >= c.stride ||
                  c.kernel - 2 * c.pad + c.output_padding != c.stride) {
                invalid(i, "transposed conv must upscale by exactly its stride");
              }
              return {c.out_channels, in.magnification * c.stride};
            },
            [&](const layers::ReLU&) -> Signal { return in; },
            [&](const layers::LeakyReLU&) -> Signal { return in; },
            [&](const layers::Scale&) -> Signal { return in; },
            [&](const layers::PReLU& a) -> Signal {
              if (a.channels != in.channels) invalid(i, "PReLU channel count mismatch");
              return in;
            },
            [&](const layers::PixelShuffle& s) -> Signal {
              const int rr = s.factor * s.factor;
              if (s.factor < 1 || in.channels % rr != 0) {
                invalid(i, "pixel shuffle needs channels divisible by r^2");
              }
              return {in.channels / rr, in.magnification * s.factor};
            },
            [&](const layers::Add& a) -> Signal {
              if (a.source < kNetworkInput || a.source >= static_cast<int>(i)) {
                invalid(i, "add source must be an earlier layer");
              }
              const Signal other = a.source == kNetworkInput ? input : out[a.source];
              if (other.channels != in.channels || other.magnification != in.magnification) {
                invalid(i, "add operands disagree in shape");
              }
              return in;
            },
        },
        spec.layers[i].op);
  }
  const Signal final_signal = spec.layers.empty() ? input : out.back();
  if (final_signal.channels != spec.input_channels) {
    fail(ErrorKind::kInvalidNetwork, "output channels differ from input channels");
  }
  if (final_signal.magnification != spec.scale_factor) {
    fail(ErrorKind::kInvalidNetwork,
         "plan magnifies x" + std::to_string(final_signal.magnification) +
             ", declared scale is x" + std::to_string(spec.scale_factor));
  }
}

std::vector<std::pair<std::string, Shape>> parameter_shapes(const NetworkSpec& spec) {
  std::vector<std::pair<std::string, Shape>> shapes;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const std::string prefix = std::to_string(i) + ".";
    std::visit(Overloaded{
                   [&](const layers::Conv& c) {
                     shapes.emplace_back(prefix + "w",
                                         Shape{std::size_t(c.out_channels),
                                               std::size_t(c.in_channels),
                                               std::size_t(c.kernel), std::size_t(c.kernel)});
                     shapes.emplace_back(prefix + "b", Shape{std::size_t(c.out_channels)});
                   },
                   [&](const layers::ConvTranspose& c) {
                     shapes.emplace_back(prefix + "w",
                                         Shape{std::size_t(c.in_channels),
                                               std::size_t(c.out_channels),
                                               std::size_t(c.kernel), std::size_t(c.kernel)});
                     shapes.emplace_back(prefix + "b", Shape{std::size_t(c.out_channels)});
                   },
                   [&](const layers::PReLU& a) {
                     shapes.emplace_back(prefix + "w", Shape{std::size_t(a.channels)});
                   },
                   [](const auto&) {},
               },
               spec.layers[i].op);
  }
  return shapes;
}

std::int64_t count_params(const NetworkSpec& spec) {
  std::int64_t total = 0;
  for (const auto& [name, shape] : parameter_shapes(spec)) {
    total += static_cast<std::int64_t>(shape_numel(shape));
  }
  return total;
}

WeightBundle random_weights(const NetworkSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  WeightBundle bundle;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const std::string prefix = std::to_string(i) + ".";
    const LayerOp& op = spec.layers[i].op;
    if (const auto* a = std::get_if<layers::PReLU>(&op)) {
      bundle.insert(prefix + "w",
                    Tensor({std::size_t(a->channels)},
                           std::vector<float>(a->channels, 0.25f)));
      continue;
    }
    int fan_in = 0;
    Shape kernel_shape;
    std::size_t bias_len = 0;
    if (const auto* c = std::get_if<layers::Conv>(&op)) {
      fan_in = c->in_channels * c->kernel * c->kernel;
      kernel_shape = {std::size_t(c->out_channels), std::size_t(c->in_channels),
                      std::size_t(c->kernel), std::size_t(c->kernel)};
      bias_len = c->out_channels;
    } else if (const auto* t = std::get_if<layers::ConvTranspose>(&op)) {
      // Each output sample receives about in*k*k/(s*s) contributions.
      fan_in = std::max(1, t->in_channels * t->kernel * t->kernel / (t->stride * t->stride));
      kernel_shape = {std::size_t(t->in_channels), std::size_t(t->out_channels),
                      std::size_t(t->kernel), std::size_t(t->kernel)};
      bias_len = t->out_channels;
    } else {
      continue;
    }
    std::normal_distribution<float> normal(0.0f, std::sqrt(2.0f / fan_in));
    Tensor kernel(kernel_shape);
    for (float& v : kernel.data()) v = normal(rng);
    bundle.insert(prefix + "w", std::move(kernel));
    bundle.insert(prefix + "b", Tensor({bias_len}));
  }
  return bundle;
}

void check_weights(const NetworkSpec& spec, const WeightBundle& weights) {
  for (const auto& [name, shape] : parameter_shapes(spec)) {
    const Tensor* t = weights.find(name);
    if (t == nullptr) fail(ErrorKind::kMissingWeight, name);
    if (t->dims() != shape) fail(ErrorKind::kShapeMismatch, "weight " + name);
  }
}

}  // namespace planvec
