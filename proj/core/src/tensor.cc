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

#include "planvec/tensor.h"

#include <algorithm>
#include <cstring>
#include <limits>
#include <string>
#include <utility>

#include "planvec/error.h"

namespace planvec {
namespace {

void check_dims(const Shape& dims) {
  if (dims.empty()) fail(ErrorKind::kEmptyDims, "tensor needs at least one dim");
  for (std::size_t d : dims) {
    if (d == 0) fail(ErrorKind::kZeroDim, "tensor dims must be >= 1");
  }
}

}  // namespace

std::size_t shape_numel(std::span<const std::size_t> dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) {
    if (d != 0 && n > std::numeric_limits<std::size_t>::max() / d) {
      fail(ErrorKind::kInvalidArgument, "shape element count overflows");
    }
    n *= d;
  }
  return n;
}

Tensor::Tensor(Shape dims) : dims_(std::move(dims)) {
  check_dims(dims_);
  data_.assign(shape_numel(dims_), 0.0f);
}

Tensor::Tensor(Shape dims, std::vector<float> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  check_dims(dims_);
  if (data_.size() != shape_numel(dims_)) {
    fail(ErrorKind::kShapeMismatch,
         "data length " + std::to_string(data_.size()) +
             " does not match shape element count " +
             std::to_string(shape_numel(dims_)));
  }
}

void Tensor::fill(float value) { std::fill(data_.begin(), data_.end(), value); }

Tensor Tensor::reshaped(Shape dims) const { return Tensor(std::move(dims), data_); }

bool operator==(const Tensor& a, const Tensor& b) {
  return a.dims_ == b.dims_ &&
         (a.data_.empty() ||
          std::memcmp(a.data_.data(), b.data_.data(),
                      a.data_.size() * sizeof(float)) == 0);
}

}  // namespace planvec
