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

#ifndef PLANVEC_TENSORIO_H_
#define PLANVEC_TENSORIO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "planvec/tensor.h"

namespace planvec {

// ".fpt" layout, all little-endian:
//   "FPTN" | version u8 (=1) | dtype u8 (0 = f32) | ndim u8 |
//   ndim x u32 dims | f32 payload, row-major.
inline constexpr char kTensorMagic[4] = {'F', 'P', 'T', 'N'};
inline constexpr std::uint8_t kTensorVersion = 1;
inline constexpr std::uint8_t kDtypeFloat32 = 0;

// Exact encoded size: 7 + 4 * ndim + 4 * numel.
std::size_t encoded_size(std::span<const std::size_t> dims);

// Validates dims before emitting anything. Throws kEmptyDims / kZeroDim /
// kInvalidArgument on bad shapes and kWriteFailure if the sink fails.
std::size_t write_tensor(std::span<const std::size_t> dims,
                         std::span<const float> data, std::ostream& out);
std::size_t write_tensor(const Tensor& t, std::ostream& out);

// Reads exactly one tensor and leaves the stream positioned right after its
// payload, so several tensors can be read back to back.
Tensor read_tensor(std::istream& in);

void save_tensor(const Tensor& t, const std::filesystem::path& path);
Tensor load_tensor(const std::filesystem::path& path);

// Named tensors in insertion order.
class WeightBundle {
 public:
  void insert(std::string name, Tensor tensor);

  const Tensor* find(const std::string& name) const;
  const Tensor& at(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const std::vector<std::pair<std::string, Tensor>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, Tensor>> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// `path` is a bundle directory holding manifest.json, or the manifest file
// itself. Manifest: [{"name": str, "shape": [int...], "file": relpath}, ...].
WeightBundle load_weight_bundle(const std::filesystem::path& path);

// Writes manifest.json plus one "<name>.fpt" per entry into `dir`.
void save_weight_bundle(const WeightBundle& bundle,
                        const std::filesystem::path& dir);

}  // namespace planvec

#endif  // PLANVEC_TENSORIO_H_
