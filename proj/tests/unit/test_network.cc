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

#include <gtest/gtest.h>

#include <random>

#include "planvec/error.h"
#include "planvec/upscale.h"

namespace planvec {
namespace {

std::int64_t conv_params(std::int64_t in, std::int64_t out, std::int64_t k) {
  return in * out * k * k + out;
}

TEST(ParamCount, SingleConvByHand) {
  NetworkSpec spec;
  spec.input_channels = 1;
  spec.scale_factor = 1;
  spec.layers = {{layers::Conv{1, 8, 5, 1, 2}, kNetworkInput}, {layers::Conv{8, 1, 1}}};
  EXPECT_EQ(count_params(spec), 208 + 9);
}

TEST(ParamCount, EspcnByHand) {
  for (int s : {2, 3, 4}) {
    const std::int64_t want =
        conv_params(1, 64, 5) + conv_params(64, 32, 3) + conv_params(32, s * s, 3);
    EXPECT_EQ(count_params(build_network(Architecture::kEspcn, s)), want) << s;
  }
}

TEST(ParamCount, FsrcnnByHand) {
  for (int s : {2, 3, 4}) {
    const std::int64_t want = conv_params(1, 56, 5) + 56 + conv_params(56, 12, 1) + 12 +
                              4 * (conv_params(12, 12, 3) + 12) + conv_params(12, 56, 1) + 56 +
                              conv_params(56, 1, 9);
    EXPECT_EQ(count_params(build_network(Architecture::kFsrcnn, s)), want) << s;
  }
}

TEST(ParamCount, EdsrByHand) {
  const std::int64_t body = conv_params(3, 256, 3) + 64 * conv_params(256, 256, 3) +
                            conv_params(256, 256, 3) + conv_params(256, 3, 3);
  EXPECT_EQ(count_params(build_network(Architecture::kEdsr, 2)),
            body + conv_params(256, 1024, 3));
  EXPECT_EQ(count_params(build_network(Architecture::kEdsr, 3)),
            body + conv_params(256, 2304, 3));
  EXPECT_EQ(count_params(build_network(Architecture::kEdsr, 4)),
            body + 2 * conv_params(256, 1024, 3));
}

TEST(ParamCount, SizeOrderingMatchesBackboneWidth) {
  for (int s : {2, 3, 4}) {
    const auto edsr = count_params(build_network(Architecture::kEdsr, s));
    const auto lap = count_params(build_network(Architecture::kLapsrn, s));
    const auto espcn = count_params(build_network(Architecture::kEspcn, s));
    const auto fsrcnn = count_params(build_network(Architecture::kFsrcnn, s));
    EXPECT_GT(edsr, lap);
    EXPECT_GT(lap, espcn);
    EXPECT_GT(lap, fsrcnn);
  }
}

class ShapeTest : public ::testing::TestWithParam<std::tuple<Architecture, int>> {};

TEST_P(ShapeTest, OutputIsScaleTimesInput) {
  const auto [arch, scale] = GetParam();
  NetworkSpec spec = build_network(arch, scale);
  // EDSR is large; keep its input tiny.
  const std::size_t h = arch == Architecture::kEdsr ? 5 : 11;
  const std::size_t w = arch == Architecture::kEdsr ? 4 : 9;
  Tensor in({std::size_t(spec.input_channels), h, w});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  for (float& v : in.data()) v = u(rng);
  Tensor out = forward(spec, random_weights(spec, 1), in);
  EXPECT_EQ(out.dims(), (Shape{std::size_t(spec.input_channels), h * scale, w * scale}));
}

INSTANTIATE_TEST_SUITE_P(
    AllNetworks, ShapeTest,
    ::testing::Combine(::testing::Values(Architecture::kEdsr, Architecture::kEspcn,
                                         Architecture::kFsrcnn, Architecture::kLapsrn),
                       ::testing::Values(2, 3, 4)),
    [](const auto& info) {
      return std::string(display_name(std::get<0>(info.param))) + "_x" +
             std::to_string(std::get<1>(info.param));
    });

TEST(Network, UnsupportedScalesAreRejected) {
  for (int s : {0, 1, 5, 8}) {
    try {
      build_network(Architecture::kEspcn, s);
      ADD_FAILURE() << s;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kUnsupportedScale);
    }
  }
}

TEST(Network, ChannelModes) {
  EXPECT_EQ(build_network(Architecture::kEdsr, 2).input_channels, 3);
  EXPECT_EQ(build_network(Architecture::kEspcn, 2).input_channels, 1);
  EXPECT_EQ(build_network(Architecture::kEspcn, 2, ChannelMode::kRgb).input_channels, 3);
  EXPECT_EQ(build_network(Architecture::kEdsr, 2, ChannelMode::kLuma).input_channels, 1);
}

TEST(Network, NamesRoundTrip) {
  for (Architecture a : kAllArchitectures) {
    EXPECT_EQ(parse_architecture(display_name(a)), a);
  }
  EXPECT_EQ(parse_architecture("edsr"), Architecture::kEdsr);
  EXPECT_FALSE(parse_architecture("srcnn").has_value());
  EXPECT_EQ(parse_channel_mode("rgb"), ChannelMode::kRgb);
  EXPECT_FALSE(parse_channel_mode("cmyk").has_value());
}

TEST(Network, ValidateCatchesBrokenGraphs) {
  NetworkSpec spec;
  spec.input_channels = 1;
  spec.layers = {{layers::Conv{2, 1, 3, 1, 1}, kNetworkInput}};
  EXPECT_THROW(validate(spec), Error);
  spec.layers = {{layers::Conv{1, 4, 3, 1, 1}, kNetworkInput}, {layers::Add{5}}};
  EXPECT_THROW(validate(spec), Error);
}

TEST(Weights, RandomWeightsAreSeededAndComplete) {
  NetworkSpec spec = build_network(Architecture::kFsrcnn, 3);
  WeightBundle a = random_weights(spec, 9), b = random_weights(spec, 9), c = random_weights(spec, 10);
  EXPECT_NO_THROW(check_weights(spec, a));
  EXPECT_TRUE(a.at("0.w") == b.at("0.w"));
  EXPECT_FALSE(a.at("0.w") == c.at("0.w"));
  std::int64_t total = 0;
  for (const auto& [name, t] : a.entries()) total += std::int64_t(t.size());
  EXPECT_EQ(total, count_params(spec));
}

TEST(Weights, CheckReportsMissingAndMisshapen) {
  NetworkSpec spec = build_network(Architecture::kEspcn, 2);
  WeightBundle full = random_weights(spec, 1);
  WeightBundle missing, wrong;
  for (const auto& [name, t] : full.entries()) {
    if (name != "0.b") missing.insert(name, t);
    wrong.insert(name, name == "2.w" ? Tensor({32, 64, 3, 1}) : t);
  }
  try {
    check_weights(spec, missing);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingWeight);
  }
  try {
    check_weights(spec, wrong);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kShapeMismatch);
  }
}

// Every conv copies channel 0 through its centre tap, so ESPCN degenerates
// into nearest-neighbour replication.
TEST(Upscale, PassThroughEspcnIsNearestNeighbour) {
  const int s = 3;
  NetworkSpec spec = build_network(Architecture::kEspcn, s);
  WeightBundle weights;
  for (const auto& [name, shape] : parameter_shapes(spec)) {
    Tensor t(shape);
    if (shape.size() == 4) {
      const std::size_t k = shape[2];
      for (std::size_t o = 0; o < shape[0]; ++o) {
        t[((o * shape[1] + 0) * k + k / 2) * k + k / 2] = (o == 0 || shape[0] == s * s) ? 1.0f : 0.0f;
      }
    }
    weights.insert(name, std::move(t));
  }
  RasterImage img(4, 5, 1);
  for (std::size_t i = 0; i < img.samples.size(); ++i) img.samples[i] = float(i) / 20.0f;
  RasterImage up = upscale(spec, weights, img);
  ASSERT_EQ(up.height, 12);
  ASSERT_EQ(up.width, 15);
  for (int y = 0; y < up.height; ++y) {
    for (int x = 0; x < up.width; ++x) ASSERT_EQ(up.at(y, x), img.at(y / s, x / s)) << y << "," << x;
  }
}

TEST(Upscale, RgbThroughLumaNetworkKeepsChannels) {
  NetworkSpec spec = build_network(Architecture::kEspcn, 2);
  RasterImage rgb(6, 7, 3, 0.5f);
  RasterImage up = upscale(spec, random_weights(spec, 2), rgb);
  EXPECT_EQ(up.channels, 3);
  EXPECT_EQ(up.height, 12);
  EXPECT_EQ(up.width, 14);
  for (float v : up.samples) {
    EXPECT_GE(v, 0.0f);
    EXPECT_LE(v, 1.0f);
  }
}

TEST(Upscale, ThreadCountDoesNotChangeOutput) {
  NetworkSpec spec = build_network(Architecture::kLapsrn, 4);
  WeightBundle w = random_weights(spec, 4);
  RasterImage img(20, 18, 1);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  for (float& v : img.samples) v = u(rng);
  RasterImage a = upscale(spec, w, img, {1});
  RasterImage b = upscale(spec, w, img, {4});
  EXPECT_EQ(a.samples, b.samples);
}

TEST(Gate, StrictlyBelowLimitOnBothAxes) {
  EXPECT_TRUE(sr_gate(799, 799));
  EXPECT_FALSE(sr_gate(800, 800));
  EXPECT_FALSE(sr_gate(800, 10));
  EXPECT_FALSE(sr_gate(10, 800));
  EXPECT_TRUE(sr_gate(1, 1));
  EXPECT_FALSE(sr_gate(900, 900));
  EXPECT_TRUE(sr_gate(99, 99, 100));
  EXPECT_THROW(sr_gate(0, 5), Error);
}

}  // namespace
}  // namespace planvec
