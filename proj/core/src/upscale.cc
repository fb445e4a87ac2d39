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

#include <optional>
#include <string>
#include <variant>

#include "planvec/error.h"
#include "planvec/upscale.h"

namespace planvec {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Tensor forward(const NetworkSpec& spec, const WeightBundle& weights,
               const Tensor& input, const ExecutionOptions& options) {
  validate(spec);
  check_weights(spec, weights);
  if (input.ndim() != 3 || input.dim(0) != static_cast<std::size_t>(spec.input_channels)) {
    fail(ErrorKind::kShapeMismatch, "network expects [" +
                                        std::to_string(spec.input_channels) + ",H,W] input");
  }
  const std::size_t n = spec.layers.size();
  if (n == 0) return input;

  // Last consumer of every layer output, so buffers can be released early.
  // Index n stands for "the network result".
  std::vector<std::size_t> last_use(n, 0);
  auto note_use = [&](int producer, std::size_t consumer) {
    if (producer >= 0) last_use[producer] = std::max(last_use[producer], consumer);
  };
  for (std::size_t i = 0; i < n; ++i) {
    note_use(spec.producer(i), i);
    if (const auto* add = std::get_if<layers::Add>(&spec.layers[i].op)) note_use(add->source, i);
  }
  last_use[n - 1] = n;

  std::vector<std::optional<Tensor>> outputs(n);
  auto fetch = [&](int producer) -> const Tensor& {
    return producer == kNetworkInput ? input : *outputs[producer];
  };
  // Moves the producer's buffer when this layer is its final consumer.
  auto take = [&](int producer, std::size_t consumer) -> Tensor {
    if (producer != kNetworkInput && last_use[producer] == consumer) {
      Tensor t = std::move(*outputs[producer]);
      outputs[producer].reset();
      return t;
    }
    return fetch(producer);
  };
  auto w = [&](std::size_t i, const char* suffix) -> const Tensor& {
    return weights.at(std::to_string(i) + suffix);
  };

  for (std::size_t i = 0; i < n; ++i) {
    const int p = spec.producer(i);
    outputs[i] = std::visit(
        Overloaded{
            [&](const layers::Conv& c) -> Tensor {
              return conv2d(fetch(p), w(i, ".w"), w(i, ".b"), c.stride, c.pad, options);
            },
            [&](const layers::ConvTranspose& c) -> Tensor {
              return conv_transpose2d(fetch(p), w(i, ".w"), w(i, ".b"), c.stride, c.pad,
                                      c.output_padding, options);
            },
            [&](const layers::ReLU&) -> Tensor {
              Tensor t = take(p, i);
              relu_inplace(t);
              return t;
            },
            [&](const layers::PReLU&) -> Tensor {
              Tensor t = take(p, i);
              prelu_inplace(t, w(i, ".w"));
              return t;
            },
            [&](const layers::LeakyReLU& a) -> Tensor {
              Tensor t = take(p, i);
              leaky_relu_inplace(t, a.slope);
              return t;
            },
            [&](const layers::Scale& s) -> Tensor {
              Tensor t = take(p, i);
              for (float& v : t.data()) v *= s.factor;
              return t;
            },
            [&](const layers::PixelShuffle& s) -> Tensor {
              return pixel_shuffle(fetch(p), s.factor);
            },
            [&](const layers::Add& a) -> Tensor {
              Tensor t = a.source == p ? Tensor(fetch(p)) : take(p, i);
              const Tensor& other = fetch(a.source);
              float* dst = t.raw();
              const float* src = other.raw();
              for (std::size_t k = 0; k < t.size(); ++k) dst[k] += src[k];
              return t;
            },
        },
        spec.layers[i].op);

    // Release anything whose final consumer was this layer.
    auto release = [&](int producer) {
      if (producer >= 0 && last_use[producer] == i) outputs[producer].reset();
    };
    release(p);
    if (const auto* add = std::get_if<layers::Add>(&spec.layers[i].op)) release(add->source);
  }
  return std::move(*outputs[n - 1]);
}

RasterImage upscale(const NetworkSpec& spec, const WeightBundle& weights,
                    const RasterImage& image, const ExecutionOptions& options) {
  if (image.empty()) fail(ErrorKind::kInvalidArgument, "cannot upscale an empty image");
  check_weights(spec, weights);
  const int s = spec.scale_factor;

  RasterImage out;
  if (spec.input_channels == 1) {
    if (image.channels == 1) {
      out = from_planar(forward(spec, weights, to_planar(image), options));
    } else {
      const RasterImage ycc = rgb_to_ycbcr(image);
      RasterImage luma(image.height, image.width, 1);
      for (std::size_t i = 0; i < luma.samples.size(); ++i) luma.samples[i] = ycc.samples[3 * i];
      const RasterImage y_up = from_planar(forward(spec, weights, to_planar(luma), options));
      RasterImage chroma_up = bicubic_resize(ycc, s);
      for (std::size_t i = 0; i < y_up.samples.size(); ++i) chroma_up.samples[3 * i] = y_up.samples[i];
      out = ycbcr_to_rgb(chroma_up);
    }
  } else if (spec.input_channels == 3) {
    if (image.channels == 3) {
      out = from_planar(forward(spec, weights, to_planar(image), options));
    } else {
      RasterImage rgb(image.height, image.width, 3);
      for (std::size_t i = 0; i < image.samples.size(); ++i) {
        rgb.samples[3 * i] = rgb.samples[3 * i + 1] = rgb.samples[3 * i + 2] = image.samples[i];
      }
      out = to_luma(from_planar(forward(spec, weights, to_planar(rgb), options)));
    }
  } else {
    fail(ErrorKind::kInvalidNetwork, "networks take 1 or 3 input channels");
  }
  clamp_unit(out);
  return out;
}

}  // namespace planvec
