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

#ifndef WAVEFPRINT_NN_CHECKPOINT_H_
#define WAVEFPRINT_NN_CHECKPOINT_H_

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wavefprint/nn/layers.h"

namespace wavefprint::nn {

struct StoredTensor {
  std::string name;
  Shape shape;
  std::vector<double> values;
};

struct Checkpoint {
  std::vector<StoredTensor> tensors;
  nlohmann::json meta;  // sidecar contents
};

// Binary layout, little-endian: "WFP1", u32 count, then per tensor
// u32 name length, name bytes, u32 rank, u64 dims[rank], f64 values.
// meta goes to "<path>.json".
void save_checkpoint(const std::filesystem::path& path, const std::vector<NamedTensor>& state,
                     const nlohmann::json& meta);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// Copies stored values into matching named tensors; throws on any missing
// name or shape mismatch.
void apply_checkpoint(const Checkpoint& ckpt, const std::vector<NamedTensor>& state);

std::vector<StoredTensor> snapshot(const std::vector<NamedTensor>& state);

}  // namespace wavefprint::nn

#endif  // WAVEFPRINT_NN_CHECKPOINT_H_
