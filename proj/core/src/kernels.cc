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

#include "planvec/kernels.h"

#include <Eigen/Core>

#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "parallel.h"
#include "planvec/error.h"

namespace planvec {
namespace {

using MatRM = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using StridedMap = Eigen::Map<MatRM, 0, Eigen::OuterStride<>>;
using ConstStridedMap = Eigen::Map<const MatRM, 0, Eigen::OuterStride<>>;

// Target GEMM column count per band; keeps im2col buffers in the tens of MB
// even for 256-channel 3x3 layers.
constexpr std::size_t kBandColumns = 4096;

std::string shape_str(const Tensor& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.ndim(); ++i) {
    if (i) s += ",";
    s += std::to_string(t.dim(i));
  }
  return s + "]";
}

void expect_ndim(const Tensor& t, std::size_t n, const char* what) {
  if (t.ndim() != n) {
    fail(ErrorKind::kShapeMismatch, std::string(what) + " must have " +
                                        std::to_string(n) + " dims, got " +
                                        shape_str(t));
  }
}

void im2col_band(const float* in, std::size_t channels, std::size_t height,
                 std::size_t width, std::size_t kh, std::size_t kw, int stride,
                 int pad, std::size_t y0, std::size_t y1, std::size_t out_width,
                 float* cols) {
  const std::size_t nb = (y1 - y0) * out_width;
  const long h = static_cast<long>(height), w = static_cast<long>(width);
  for (std::size_t c = 0; c < channels; ++c) {
    const float* plane = in + c * height * width;
    for (std::size_t ky = 0; ky < kh; ++ky) {
      for (std::size_t kx = 0; kx < kw; ++kx) {
        float* row = cols + ((c * kh + ky) * kw + kx) * nb;
        for (std::size_t y = y0; y < y1; ++y) {
          float* dst = row + (y - y0) * out_width;
          const long iy = static_cast<long>(y) * stride - pad + static_cast<long>(ky);
          if (iy < 0 || iy >= h) {
            std::fill(dst, dst + out_width, 0.0f);
            continue;
          }
          const float* src = plane + iy * w;
          if (stride == 1) {
            // ix = x - pad + kx is in range for x in [lo, hi).
            const long shift = static_cast<long>(kx) - pad;
            const long lo = std::clamp(-shift, 0L, static_cast<long>(out_width));
            const long hi = std::clamp(w - shift, lo, static_cast<long>(out_width));
            std::fill(dst, dst + lo, 0.0f);
            std::memcpy(dst + lo, src + lo + shift, (hi - lo) * sizeof(float));
            std::fill(dst + hi, dst + out_width, 0.0f);
          } else {
            for (std::size_t x = 0; x < out_width; ++x) {
              const long ix = static_cast<long>(x) * stride - pad + static_cast<long>(kx);
              dst[x] = (ix >= 0 && ix < w) ? src[ix] : 0.0f;
            }
          }
        }
      }
    }
  }
}

}  // namespace

Tensor conv2d(const Tensor& input, const Tensor& kernel, const Tensor& bias,
              int stride, int pad, const ExecutionOptions& options) {
  expect_ndim(input, 3, "conv2d input");
  expect_ndim(kernel, 4, "conv2d kernel");
  expect_ndim(bias, 1, "conv2d bias");
  const std::size_t cin = input.dim(0), h = input.dim(1), w = input.dim(2);
  const std::size_t cout = kernel.dim(0), kh = kernel.dim(2), kw = kernel.dim(3);
  if (kernel.dim(1) != cin) {
    fail(ErrorKind::kShapeMismatch, "conv2d kernel " + shape_str(kernel) +
                                        " does not match input " + shape_str(input));
  }
  if (bias.dim(0) != cout) {
    fail(ErrorKind::kShapeMismatch, "conv2d bias " + shape_str(bias) +
                                        " does not match kernel " + shape_str(kernel));
  }
  if (stride < 1 || pad < 0) {
    fail(ErrorKind::kInvalidArgument, "conv2d needs stride >= 1 and pad >= 0");
  }
  const long padded_h = static_cast<long>(h) + 2L * pad;
  const long padded_w = static_cast<long>(w) + 2L * pad;
  if (padded_h < static_cast<long>(kh) || padded_w < static_cast<long>(kw)) {
    fail(ErrorKind::kShapeMismatch, "conv2d output size would be non-positive");
  }
  const std::size_t ho = (padded_h - kh) / stride + 1;
  const std::size_t wo = (padded_w - kw) / stride + 1;

  Tensor out({cout, ho, wo});
  const std::size_t k = cin * kh * kw;
  Eigen::Map<const MatRM> weights(kernel.raw(), cout, k);
  const bool pointwise = kh == 1 && kw == 1 && stride == 1 && pad == 0;

  const std::size_t rows_per_band = std::max<std::size_t>(1, kBandColumns / wo);
  const std::size_t bands = (ho + rows_per_band - 1) / rows_per_band;
  const float* b = bias.raw();

  internal::parallel_for(bands, options.threads, [&](std::size_t band) {
    const std::size_t y0 = band * rows_per_band;
    const std::size_t y1 = std::min(ho, y0 + rows_per_band);
    const std::size_t nb = (y1 - y0) * wo;
    StridedMap dst(out.raw() + y0 * wo, cout, nb, Eigen::OuterStride<>(ho * wo));
    if (pointwise) {
      ConstStridedMap src(input.raw() + y0 * w, cin, nb, Eigen::OuterStride<>(h * w));
      dst.noalias() = weights * src;
    } else {
      thread_local std::vector<float> cols;
      cols.resize(k * nb);
      im2col_band(input.raw(), cin, h, w, kh, kw, stride, pad, y0, y1, wo, cols.data());
      dst.noalias() = weights * Eigen::Map<const MatRM>(cols.data(), k, nb);
    }
    for (std::size_t c = 0; c < cout; ++c) dst.row(c).array() += b[c];
  });
  return out;
}

Tensor conv_transpose2d(const Tensor& input, const Tensor& kernel,
                        const Tensor& bias, int stride, int pad,
                        int output_padding, const ExecutionOptions& options) {
  expect_ndim(input, 3, "conv_transpose2d input");
  expect_ndim(kernel, 4, "conv_transpose2d kernel");
  expect_ndim(bias, 1, "conv_transpose2d bias");
  const std::size_t cin = input.dim(0), h = input.dim(1), w = input.dim(2);
  const std::size_t cout = kernel.dim(1), kh = kernel.dim(2), kw = kernel.dim(3);
  if (kernel.dim(0) != cin) {
    fail(ErrorKind::kShapeMismatch, "conv_transpose2d kernel " + shape_str(kernel) +
                                        " does not match input " + shape_str(input));
  }
  if (bias.dim(0) != cout) {
    fail(ErrorKind::kShapeMismatch, "conv_transpose2d bias " + shape_str(bias) +
                                        " does not match kernel " + shape_str(kernel));
  }
  if (stride < 1 || pad < 0 || output_padding < 0 || output_padding >= stride) {
    fail(ErrorKind::kInvalidArgument,
         "conv_transpose2d needs stride >= 1, pad >= 0, 0 <= output_padding < stride");
  }
  const long ho_l = (static_cast<long>(h) - 1) * stride - 2L * pad +
                    static_cast<long>(kh) + output_padding;
  const long wo_l = (static_cast<long>(w) - 1) * stride - 2L * pad +
                    static_cast<long>(kw) + output_padding;
  if (ho_l < 1 || wo_l < 1) {
    fail(ErrorKind::kShapeMismatch, "conv_transpose2d output size would be non-positive");
  }
  const std::size_t ho = ho_l, wo = wo_l;

  Tensor out({cout, ho, wo});
  for (std::size_t c = 0; c < cout; ++c) {
    std::fill(out.raw() + c * ho * wo, out.raw() + (c + 1) * ho * wo, bias[c]);
  }

  const std::size_t taps = cout * kh * kw;
  Eigen::Map<const MatRM> weights(kernel.raw(), cin, taps);
  const std::size_t rows_per_band = std::max<std::size_t>(1, kBandColumns / w);
  const std::size_t bands = (h + rows_per_band - 1) / rows_per_band;

  auto compute = [&](std::size_t band, std::vector<float>& cols) {
    const std::size_t y0 = band * rows_per_band;
    const std::size_t y1 = std::min(h, y0 + rows_per_band);
    const std::size_t nb = (y1 - y0) * w;
    cols.resize(taps * nb);
    ConstStridedMap src(input.raw() + y0 * w, cin, nb, Eigen::OuterStride<>(h * w));
    Eigen::Map<MatRM>(cols.data(), taps, nb).noalias() = weights.transpose() * src;
  };
  auto scatter = [&](std::size_t band, const std::vector<float>& cols) {
    const std::size_t y0 = band * rows_per_band;
    const std::size_t y1 = std::min(h, y0 + rows_per_band);
    const std::size_t nb = (y1 - y0) * w;
    for (std::size_t co = 0; co < cout; ++co) {
      float* plane = out.raw() + co * ho * wo;
      for (std::size_t ky = 0; ky < kh; ++ky) {
        for (std::size_t kx = 0; kx < kw; ++kx) {
          const float* row = cols.data() + ((co * kh + ky) * kw + kx) * nb;
          for (std::size_t iy = y0; iy < y1; ++iy) {
            const long oy = static_cast<long>(iy) * stride - pad + static_cast<long>(ky);
            if (oy < 0 || oy >= ho_l) continue;
            float* dst = plane + oy * wo;
            const float* src = row + (iy - y0) * w;
            for (std::size_t ix = 0; ix < w; ++ix) {
              const long ox = static_cast<long>(ix) * stride - pad + static_cast<long>(kx);
              if (ox >= 0 && ox < wo_l) dst[ox] += src[ix];
            }
          }
        }
      }
    }
  };

  // GEMMs may run concurrently; scatter always proceeds in band order so the
  // accumulation sequence is independent of the thread count.
  const std::size_t group = static_cast<std::size_t>(std::max(options.threads, 1));
  std::vector<std::vector<float>> buffers(std::min(group, bands));
  for (std::size_t first = 0; first < bands; first += group) {
    const std::size_t n = std::min(group, bands - first);
    internal::parallel_for(n, options.threads,
                           [&](std::size_t i) { compute(first + i, buffers[i]); });
    for (std::size_t i = 0; i < n; ++i) scatter(first + i, buffers[i]);
  }
  return out;
}

Tensor pixel_shuffle(const Tensor& input, int r) {
  expect_ndim(input, 3, "pixel_shuffle input");
  if (r < 1) fail(ErrorKind::kInvalidArgument, "pixel_shuffle factor must be >= 1");
  const std::size_t rr = static_cast<std::size_t>(r) * r;
  if (input.dim(0) % rr != 0) {
    fail(ErrorKind::kShapeMismatch, "pixel_shuffle: " + std::to_string(input.dim(0)) +
                                        " channels not divisible by r^2 = " +
                                        std::to_string(rr));
  }
  const std::size_t c = input.dim(0) / rr, h = input.dim(1), w = input.dim(2);
  const std::size_t ur = r;
  Tensor out({c, h * ur, w * ur});
  float* dst = out.raw();
  for (std::size_t oc = 0; oc < c; ++oc) {
    for (std::size_t y = 0; y < h * ur; ++y) {
      for (std::size_t x = 0; x < w * ur; ++x) {
        *dst++ = input.at(oc * rr + ur * (y % ur) + x % ur, y / ur, x / ur);
      }
    }
  }
  return out;
}

Tensor pixel_unshuffle(const Tensor& input, int r) {
  expect_ndim(input, 3, "pixel_unshuffle input");
  if (r < 1) fail(ErrorKind::kInvalidArgument, "pixel_unshuffle factor must be >= 1");
  const std::size_t ur = r;
  if (input.dim(1) % ur != 0 || input.dim(2) % ur != 0) {
    fail(ErrorKind::kShapeMismatch, "pixel_unshuffle: spatial dims not divisible by r");
  }
  const std::size_t c = input.dim(0), h = input.dim(1) / ur, w = input.dim(2) / ur;
  Tensor out({c * ur * ur, h, w});
  for (std::size_t oc = 0; oc < c; ++oc)
    for (std::size_t y = 0; y < h * ur; ++y)
      for (std::size_t x = 0; x < w * ur; ++x)
        out.at(oc * ur * ur + ur * (y % ur) + x % ur, y / ur, x / ur) = input.at(oc, y, x);
  return out;
}

void relu_inplace(Tensor& t) {
  for (float& v : t.data()) v = v > 0.0f ? v : 0.0f;
}

void leaky_relu_inplace(Tensor& t, float slope) {
  for (float& v : t.data()) v = v > 0.0f ? v : v * slope;
}

void prelu_inplace(Tensor& t, const Tensor& slopes) {
  expect_ndim(t, 3, "prelu input");
  if (slopes.size() != t.dim(0)) {
    fail(ErrorKind::kShapeMismatch, "prelu slopes " + shape_str(slopes) +
                                        " do not match channels of " + shape_str(t));
  }
  const std::size_t plane = t.dim(1) * t.dim(2);
  for (std::size_t c = 0; c < t.dim(0); ++c) {
    const float a = slopes[c];
    float* p = t.raw() + c * plane;
    for (std::size_t i = 0; i < plane; ++i) p[i] = p[i] > 0.0f ? p[i] : p[i] * a;
  }
}

}  // namespace planvec
