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

#ifndef PLANVEC_TENSOR_H_
#define PLANVEC_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace planvec {

using Shape = std::vector<std::size_t>;

std::size_t shape_numel(std::span<const std::size_t> dims);

// Dense row-major float32 array. Dims are non-empty and each dim is >= 1;
// the data length always equals the product of the dims.
class Tensor {
 public:
  // Zero-filled tensor of the given shape.
  explicit Tensor(Shape dims);
  Tensor(std::initializer_list<std::size_t> dims) : Tensor(Shape(dims)) {}
  Tensor(Shape dims, std::vector<float> data);

  const Shape& dims() const noexcept { return dims_; }
  std::size_t ndim() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t i) const { return dims_.at(i); }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<float> data() noexcept { return data_; }
  std::span<const float> data() const noexcept { return data_; }
  float* raw() noexcept { return data_.data(); }
  const float* raw() const noexcept { return data_.data(); }

  float& operator[](std::size_t i) { return data_[i]; }
  float operator[](std::size_t i) const { return data_[i]; }

  // 3-d accessor for [C,H,W] tensors.
  float& at(std::size_t c, std::size_t y, std::size_t x) {
    return data_[(c * dims_[1] + y) * dims_[2] + x];
  }
  float at(std::size_t c, std::size_t y, std::size_t x) const {
    return data_[(c * dims_[1] + y) * dims_[2] + x];
  }

  void fill(float value);

  // Same data, new shape with the same element count.
  Tensor reshaped(Shape dims) const;

  // Dims equal and data bit-identical.
  friend bool operator==(const Tensor& a, const Tensor& b);

 private:
  Shape dims_;
  std::vector<float> data_;
};

}  // namespace planvec

#endif  // PLANVEC_TENSOR_H_
