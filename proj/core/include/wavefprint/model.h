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

#ifndef WAVEFPRINT_MODEL_H_
#define WAVEFPRINT_MODEL_H_

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "wavefprint/nn/layers.h"
#include "wavefprint/preprocess.h"

namespace wavefprint {

struct ConvBlock {
  int out_channels = 0;
  int kernel = 3;
  int padding = 1;
  int dilation = 1;
  bool pool_after = false;
};

struct DcnnConfig {
  int in_channels = 1;
  std::size_t bins = 256;
  std::size_t frames = 0;
  std::vector<ConvBlock> blocks;
  // Index of the block after which [B, C, F, T] becomes [B, F, C, T].
  int permute_after = -1;
  bool use_maxpool = true;
  bool use_dropout = true;
  bool use_dilation = true;
  double dropout_p = 0.5;

  // BN -> Conv -> PReLU blocks (8,3,1,1) pool (16,3,2,2) pool (32,3,4,4)
  // (72,3,8,8), permute after the last block, dropout, flatten, linear.
  static DcnnConfig reference(std::size_t frames, int in_channels = 1);

  nlohmann::json to_json() const;
  static DcnnConfig from_json(const nlohmann::json& j);
};

// Validates the config and returns the layer stack. Parameters are
// initialized from seed.
nn::Sequential build_dcnn(const DcnnConfig& cfg, std::uint64_t seed);

// The network with its config; the unit that is trained, checkpointed and
// evaluated.
struct Model {
  DcnnConfig config;
  nn::Sequential net;

  static Model create(const DcnnConfig& cfg, std::uint64_t seed);

  nn::Tensor forward(const nn::Tensor& x, nn::ForwardContext& ctx) const {
    return net.forward(x, ctx);
  }
  // Eval-mode logits [B, 2] without recording a graph.
  nn::Tensor logits(const FeatureTensor& features) const;
};

// Learnable scalar count.
std::size_t count_params(const Model& model);

// Eval-mode class probabilities, row-major [B, 2]. Rows sum to 1.
std::vector<double> predict(const Model& model, const FeatureTensor& features);

nn::Tensor to_tensor(const FeatureTensor& features, bool requires_grad = false);

}  // namespace wavefprint

#endif  // WAVEFPRINT_MODEL_H_
