// Copyright 2026 The wavefprint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WAVEFPRINT_NN_OPS_H_
#define WAVEFPRINT_NN_OPS_H_

#include <span>
#include <vector>

#include "wavefprint/nn/tensor.h"
#include "wavefprint/rng.h"

namespace wavefprint::nn {

struct Conv2dOptions {
  int stride = 1;
  int padding = 0;
  int dilation = 1;
};

// Output extent of a convolution along one axis; may be <= 0.
long conv_out_size(long in, int kernel, const Conv2dOptions& o);

// Cross-correlation over [B, Cin, H, W] with weight [Cout, Cin, kh, kw] and
// bias [Cout], zero padding. Each output accumulates bias first, then the
// taps in (cin, row, col) order.
Tensor conv2d(const Tensor& x, const Tensor& weight, const Tensor& bias, const Conv2dOptions& o);

// Per-channel normalization over (batch, H, W). Training uses biased batch
// variance and updates the running statistics with the unbiased one.
Tensor batch_norm2d(const Tensor& x, const Tensor& gamma, const Tensor& beta,
                    std::vector<double>& running_mean, std::vector<double>& running_var,
                    bool training, double momentum = 0.1, double eps = 1e-5);

// x if x > 0 else a * x, with a single slope a of shape [1].
Tensor prelu(const Tensor& x, const Tensor& a);

// Window k, stride s, no padding; output sizes floor.
Tensor max_pool2d(const Tensor& x, int kernel = 2, int stride = 2);

// Inverted dropout; identity when !training or p == 0.
Tensor dropout(const Tensor& x, double p, bool training, Rng& rng);

// x [B, in] times weight [out, in] transposed plus bias [out].
Tensor linear(const Tensor& x, const Tensor& weight, const Tensor& bias);

// [B, C, F, T] -> [B, F, C, T].
Tensor permute_1_2(const Tensor& x);

// [B, ...] -> [B, rest].
Tensor flatten(const Tensor& x);

// Mean over the batch of -log softmax(logits)[label]. logits [B, K].
Tensor softmax_cross_entropy(const Tensor& logits, std::span<const int> labels);

// Sum over the batch of logits[b, column].
Tensor select_sum(const Tensor& logits, std::size_t column);

// Sum of x * w elementwise with constant w.
Tensor weighted_sum(const Tensor& x, std::span<const double> w);

// Row-wise softmax of a [B, K] tensor, no graph.
std::vector<double> softmax_rows(const Tensor& logits);

}  // namespace wavefprint::nn

#endif  // WAVEFPRINT_NN_OPS_H_
