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

#ifndef PLANVEC_KERNELS_H_
#define PLANVEC_KERNELS_H_

#include "planvec/tensor.h"

namespace planvec {

// threads > 1 splits work over fixed row bands. The band layout does not
// depend on the thread count, so results are bit-identical to threads == 1.
struct ExecutionOptions {
  int threads = 1;
};

// input [C_in,H,W], kernel [C_out,C_in,kh,kw], bias [C_out]. Zero padding,
// cross-correlation. Output [C_out,(H+2p-kh)/s+1,(W+2p-kw)/s+1].
Tensor conv2d(const Tensor& input, const Tensor& kernel, const Tensor& bias,
              int stride, int pad, const ExecutionOptions& options = {});

// input [C_in,H,W], kernel [C_in,C_out,kh,kw], bias [C_out].
// Output size (H-1)*s - 2p + kh + output_padding; output_padding < stride.
Tensor conv_transpose2d(const Tensor& input, const Tensor& kernel,
                        const Tensor& bias, int stride, int pad,
                        int output_padding = 0,
                        const ExecutionOptions& options = {});

// [C*r*r,H,W] -> [C,rH,rW] with
//   out[c,y,x] = in[c*r*r + r*(y%r) + x%r, y/r, x/r].
Tensor pixel_shuffle(const Tensor& input, int r);
// Exact inverse of pixel_shuffle.
Tensor pixel_unshuffle(const Tensor& input, int r);

void relu_inplace(Tensor& t);
void leaky_relu_inplace(Tensor& t, float slope);
// slopes [C] applied per channel of a [C,H,W] tensor.
void prelu_inplace(Tensor& t, const Tensor& slopes);

}  // namespace planvec

#endif  // PLANVEC_KERNELS_H_
