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

#ifndef PLANVEC_NETWORK_H_
#define PLANVEC_NETWORK_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "planvec/tensor.h"
#include "planvec/tensorio.h"

namespace planvec {

enum class Architecture { kEdsr, kEspcn, kFsrcnn, kLapsrn };

inline constexpr Architecture kAllArchitectures[] = {
    Architecture::kEdsr, Architecture::kEspcn, Architecture::kLapsrn,
    Architecture::kFsrcnn};

// "EDSR", "ESPCN", "FSRCNN", "LapSRN".
std::string_view display_name(Architecture arch);
// Case-insensitive.
std::optional<Architecture> parse_architecture(std::string_view name);

// Which planes the network sees. kAuto picks luma for ESPCN/FSRCNN/LapSRN
// and RGB for EDSR.
enum class ChannelMode { kAuto, kLuma, kRgb };
std::optional<ChannelMode> parse_channel_mode(std::string_view name);

namespace layers {

struct Conv {
  int in_channels;
  int out_channels;
  int kernel;
  int stride = 1;
  int pad = 0;
};

struct ConvTranspose {
  int in_channels;
  int out_channels;
  int kernel;
  int stride;
  int pad;
  int output_padding = 0;
};

struct ReLU {};
struct PReLU {
  int channels;
};
struct LeakyReLU {
  float slope;
};
struct PixelShuffle {
  int factor;
};
// Adds the output of layer `source` (or the network input) to this
// layer's input.
struct Add {
  int source;
};
struct Scale {
  float factor;
};

}  // namespace layers

using LayerOp = std::variant<layers::Conv, layers::ConvTranspose, layers::ReLU,
                             layers::PReLU, layers::LeakyReLU,
                             layers::PixelShuffle, layers::Add, layers::Scale>;

inline constexpr int kNetworkInput = -1;
inline constexpr int kPreviousLayer = -2;

struct Layer {
  LayerOp op;
  // Producer of this layer's input: a layer index, kNetworkInput, or
  // kPreviousLayer.
  int input = kPreviousLayer;
};

// Layers form a DAG in topological order; the last layer is the output.
struct NetworkSpec {
  Architecture architecture = Architecture::kEspcn;
  int scale_factor = 2;
  int input_channels = 1;
  std::vector<Layer> layers;

  // Resolves kPreviousLayer for layer i.
  int producer(std::size_t i) const;
};

// Canonical published configurations:
//   ESPCN  conv5x5(64) conv3x3(32) conv3x3(r^2) + pixel shuffle
//   FSRCNN d=56 s=12 m=4 hourglass with PReLU + 9x9 transposed conv
//   LapSRN one 10-conv feature level per x2 step (a single x3 level for
//          scale 3), transposed-conv upsampling, residual add per level
//   EDSR   32 residual blocks x 256 feats, residual scale 0.1, shuffle tail
// Throws kUnsupportedScale unless scale is 2, 3 or 4.
NetworkSpec build_network(Architecture arch, int scale,
                          ChannelMode mode = ChannelMode::kAuto);

// Throws kInvalidNetwork when channels do not chain, a conv changes spatial
// size, or the net magnification differs from scale_factor.
void validate(const NetworkSpec& spec);

std::int64_t count_params(const NetworkSpec& spec);

// "<layer-index>.w" / "<layer-index>.b" in layer order.
std::vector<std::pair<std::string, Shape>> parameter_shapes(const NetworkSpec& spec);

// He-normal kernels, zero biases, PReLU slopes 0.25.
WeightBundle random_weights(const NetworkSpec& spec, std::uint64_t seed);

// Throws kMissingWeight / kShapeMismatch.
void check_weights(const NetworkSpec& spec, const WeightBundle& weights);

}  // namespace planvec

#endif  // PLANVEC_NETWORK_H_
