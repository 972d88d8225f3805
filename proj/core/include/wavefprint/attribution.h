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

#ifndef WAVEFPRINT_ATTRIBUTION_H_
#define WAVEFPRINT_ATTRIBUTION_H_

#include <functional>
#include <string>
#include <vector>

#include "wavefprint/evaluate.h"
#include "wavefprint/model.h"
#include "wavefprint/preprocess.h"

namespace wavefprint {

struct AttributionMap {
  std::size_t channels = 0, bins = 0, frames = 0;
  std::vector<double> values;  // [channels, bins, frames]
  std::string baseline_tag;
  int steps = 0;
  int target = 1;  // class index, 1 = fake
  double completeness_residual = 0;  // |sum IG - (F(x) - F(x'))|
  double output_delta = 0;           // F(x) - F(x')
  std::size_t n_samples = 1;

  double relative_residual() const;
  double row_mass(std::size_t bin) const;  // sum of |values| over channels and frames
};

// Maps a [B, ...] input to [B, K] logits, recording the graph; called in
// eval mode.
using LogitFn = std::function<nn::Tensor(const nn::Tensor&)>;

// Midpoint rule: IG = (x - x') * mean_k dF/dx at x' + (k - 0.5)/steps (x - x').
// Path points are evaluated in chunks of up to chunk samples.
AttributionMap integrated_gradients(const LogitFn& f, const FeatureTensor& input,
                                    const FeatureTensor& baseline, int steps, int target,
                                    std::string baseline_tag = "custom", std::size_t chunk = 16);
AttributionMap integrated_gradients(const Model& model, const FeatureTensor& input,
                                    const FeatureTensor& baseline, int steps, int target,
                                    std::string baseline_tag = "silence");

enum class ClassFilter { real, fake, both };

// Mean IG map over up to n samples of the selected class against baseline;
// both = average of the real mean and the fake mean.
AttributionMap mean_attribution(const Model& model, const Dataset& ds, ClassFilter filter,
                                std::size_t n, int steps, const FeatureTensor& baseline,
                                int target = 1, std::string baseline_tag = "silence");

// Elementwise mean of maps of equal shape.
AttributionMap average_maps(const std::vector<AttributionMap>& maps);

}  // namespace wavefprint

#endif  // WAVEFPRINT_ATTRIBUTION_H_
