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

#include "planvec/tensorio.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "planvec/error.h"
#include "temp_dir.h"

namespace planvec {
namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected planvec::Error";
  return ErrorKind::kInvalidArgument;
}

Tensor random_tensor(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ndim(1, 4);
  std::uniform_int_distribution<std::size_t> dim(1, 7);
  Shape dims(ndim(rng));
  for (auto& d : dims) d = dim(rng);
  Tensor t(dims);
  std::normal_distribution<float> value(0.0f, 10.0f);
  for (float& v : t.data()) v = value(rng);
  return t;
}

std::string encode(const Tensor& t) {
  std::ostringstream out;
  write_tensor(t, out);
  return out.str();
}

Tensor decode(const std::string& bytes) {
  std::istringstream in(bytes);
  return read_tensor(in);
}

TEST(TensorFormat, HeaderLayoutIsLittleEndian) {
  Tensor t({2, 3}, {1, 2, 3, 4, 5, 6});
  const std::string bytes = encode(t);
  ASSERT_EQ(bytes.size(), encoded_size(t.dims()));
  ASSERT_EQ(bytes.size(), 7u + 8u + 24u);
  EXPECT_EQ(bytes.substr(0, 4), "FPTN");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 0);
  EXPECT_EQ(bytes[6], 2);
  EXPECT_EQ(static_cast<unsigned char>(bytes[7]), 2);
  EXPECT_EQ(bytes[8], 0);
  EXPECT_EQ(static_cast<unsigned char>(bytes[11]), 3);
  float first;
  std::memcpy(&first, bytes.data() + 15, 4);
  EXPECT_EQ(first, 1.0f);
}

TEST(TensorFormat, RandomRoundTripIsBitExact) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    Tensor t = random_tensor(rng);
    EXPECT_EQ(decode(encode(t)), t) << "case " << i;
  }
}

TEST(TensorFormat, SpecialValuesSurvive) {
  Tensor t({4}, {-0.0f, std::numeric_limits<float>::infinity(),
                 std::numeric_limits<float>::denorm_min(),
                 std::numeric_limits<float>::quiet_NaN()});
  Tensor back = decode(encode(t));
  EXPECT_TRUE(back == t);
  EXPECT_TRUE(std::signbit(back[0]));
  EXPECT_TRUE(std::isnan(back[3]));
}

TEST(TensorFormat, WriteRejectsBadShapes) {
  std::ostringstream out;
  const std::vector<float> none;
  const std::vector<float> one{1.0f};
  EXPECT_EQ(kind_of([&] { write_tensor(Shape{}, none, out); }), ErrorKind::kEmptyDims);
  EXPECT_EQ(kind_of([&] { write_tensor(Shape{2, 0}, none, out); }), ErrorKind::kZeroDim);
  EXPECT_EQ(kind_of([&] { write_tensor(Shape{2}, one, out); }), ErrorKind::kShapeMismatch);
}

TEST(TensorFormat, ReadDetectsCorruption) {
  const std::string good = encode(Tensor({2, 2}, {1, 2, 3, 4}));

  std::string magic = good;
  magic[0] = 'X';
  EXPECT_EQ(kind_of([&] { decode(magic); }), ErrorKind::kBadMagic);

  std::string version = good;
  version[4] = 2;
  EXPECT_EQ(kind_of([&] { decode(version); }), ErrorKind::kUnsupportedVersion);

  std::string dtype = good;
  dtype[5] = 1;
  EXPECT_EQ(kind_of([&] { decode(dtype); }), ErrorKind::kUnsupportedDtype);

  std::string zero_ndim = good;
  zero_ndim[6] = 0;
  EXPECT_EQ(kind_of([&] { decode(zero_ndim); }), ErrorKind::kEmptyDims);

  std::string zero_dim = good;
  std::memset(zero_dim.data() + 7, 0, 4);
  EXPECT_EQ(kind_of([&] { decode(zero_dim); }), ErrorKind::kZeroDim);

  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, std::size_t{6}, std::size_t{10},
                          good.size() - 1}) {
    EXPECT_EQ(kind_of([&] { decode(good.substr(0, cut)); }), ErrorKind::kTruncated) << cut;
  }
}

TEST(TensorFormat, HugeClaimedPayloadFailsAsTruncated) {
  std::string bytes = encode(Tensor({1}, {1.0f}));
  const unsigned char big[4] = {0xff, 0xff, 0xff, 0x7f};
  std::memcpy(bytes.data() + 7, big, 4);
  EXPECT_EQ(kind_of([&] { decode(bytes); }), ErrorKind::kTruncated);
}

TEST(TensorFormat, ConsecutiveTensorsShareAStream) {
  std::istringstream in(encode(Tensor({1}, {5.0f})) + encode(Tensor({2}, {6.0f, 7.0f})));
  EXPECT_EQ(read_tensor(in), Tensor({1}, {5.0f}));
  EXPECT_EQ(read_tensor(in), Tensor({2}, {6.0f, 7.0f}));
}

TEST(TensorFormat, FileRoundTrip) {
  testing::TempDir dir;
  Tensor t({3, 1, 2}, {1, 2, 3, 4, 5, 6});
  save_tensor(t, dir / "t.bin");
  EXPECT_EQ(load_tensor(dir / "t.bin"), t);
  EXPECT_EQ(kind_of([&] { load_tensor(dir / "missing.bin"); }), ErrorKind::kIo);
}

TEST(WeightBundle, SaveLoadKeepsOrderAndValues) {
  testing::TempDir dir;
  WeightBundle bundle;
  bundle.insert("conv1.weight", Tensor({2, 1, 3, 3}));
  bundle.insert("conv1.bias", Tensor({2}, {0.5f, -0.5f}));
  save_weight_bundle(bundle, dir.path());
  WeightBundle back = load_weight_bundle(dir.path());
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.entries()[0].first, "conv1.weight");
  EXPECT_EQ(back.at("conv1.bias"), bundle.at("conv1.bias"));
  EXPECT_EQ(load_weight_bundle(dir / "manifest.json").size(), 2u);
}

TEST(WeightBundle, LookupAndInsertErrors) {
  WeightBundle bundle;
  bundle.insert("a", Tensor({1}));
  EXPECT_EQ(bundle.find("b"), nullptr);
  EXPECT_EQ(kind_of([&] { bundle.at("b"); }), ErrorKind::kMissingWeight);
  EXPECT_EQ(kind_of([&] { bundle.insert("a", Tensor({1})); }), ErrorKind::kDuplicateName);
  EXPECT_EQ(kind_of([&] { bundle.insert("", Tensor({1})); }), ErrorKind::kInvalidArgument);
}

TEST(WeightBundle, ManifestErrors) {
  testing::TempDir dir;
  save_tensor(Tensor({2}, {1, 2}), dir / "a.bin");

  testing::write_text_file(dir / "manifest.json", "{not json");
  EXPECT_EQ(kind_of([&] { load_weight_bundle(dir.path()); }), ErrorKind::kManifest);

  testing::write_text_file(dir / "manifest.json", R"({"name":"a"})");
  EXPECT_EQ(kind_of([&] { load_weight_bundle(dir.path()); }), ErrorKind::kManifest);

  testing::write_text_file(dir / "manifest.json",
                           R"([{"name":"a","shape":[2],"file":"nope.bin"}])");
  EXPECT_EQ(kind_of([&] { load_weight_bundle(dir.path()); }), ErrorKind::kMissingBlob);

  testing::write_text_file(dir / "manifest.json", R"([{"name":"a","shape":[3],"file":"a.bin"}])");
  EXPECT_EQ(kind_of([&] { load_weight_bundle(dir.path()); }), ErrorKind::kShapeMismatch);

  testing::write_text_file(dir / "manifest.json",
                           R"([{"name":"a","shape":[2],"file":"a.bin"},)"
                           R"({"name":"a","shape":[2],"file":"a.bin"}])");
  EXPECT_EQ(kind_of([&] { load_weight_bundle(dir.path()); }), ErrorKind::kDuplicateName);

  EXPECT_EQ(kind_of([&] { load_weight_bundle(dir / "nowhere"); }), ErrorKind::kManifest);
}

TEST(TensorShape, ReshapeKeepsData) {
  Tensor t({2, 3}, {1, 2, 3, 4, 5, 6});
  Tensor r = t.reshaped({3, 2});
  EXPECT_EQ(r.dims(), (Shape{3, 2}));
  EXPECT_EQ(r[5], 6.0f);
  EXPECT_THROW(t.reshaped({4, 2}), Error);
}

}  // namespace
}  // namespace planvec
