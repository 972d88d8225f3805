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

#ifndef WAVEFPRINT_PREPROCESS_H_
#define WAVEFPRINT_PREPROCESS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wavefprint/transforms.h"

namespace wavefprint {

enum class FeatureTransform { wpt, stft };

struct FeatureConfig {
  FeatureTransform transform = FeatureTransform::wpt;
  std::string wavelet = "sym5";
  int level = 8;
  bool power = true;    // ln(|c|^2 + eps) when set, ln(|c| + eps) otherwise
  bool signed_channel = false;
  double epsilon = 1e-12;
  std::size_t fft_size = 512;
  std::size_t hop = 220;
  Window window = Window::hann;
  std::size_t clip_length = 22050;
  double sample_rate = 22050.0;

  // "wpt-sym5-l8", "stft-512-220"; recorded with every run.
  std::string tag() const;
};

// Batched network input, row-major [batch, channels, bins, frames].
struct FeatureTensor {
  std::size_t batch = 0;
  std::size_t channels = 0;
  std::size_t bins = 0;
  std::size_t frames = 0;
  std::vector<double> data;
  std::string transform_tag;
  bool power_applied = true;
  double epsilon = 1e-12;

  std::size_t sample_size() const { return channels * bins * frames; }
  std::span<const double> sample(std::size_t b) const {
    return std::span<const double>(data).subspan(b * sample_size(), sample_size());
  }
  std::vector<std::size_t> shape() const { return {batch, channels, bins, frames}; }
};

// Rejects combinations the pipeline cannot honor.
void validate(const FeatureConfig& cfg);

// Bins and frames the transform produces for a clip of cfg.clip_length.
std::size_t feature_bins(const FeatureConfig& cfg);
std::size_t feature_frames(const FeatureConfig& cfg);

FeatureTensor featurize(std::span<const std::vector<double>> clips, const FeatureConfig& cfg);

// Writes one clip's features into out (sample_size() doubles).
void featurize_into(std::span<const double> clip, const FeatureConfig& cfg, std::span<double> out);

// The featurized silent clip: every channel-0 value ln(eps), sign channel +1.
FeatureTensor silent_features(const FeatureConfig& cfg, std::size_t batch = 1);

// Copies the selected samples into a new tensor.
FeatureTensor gather(const FeatureTensor& src, std::span<const std::size_t> indices);

}  // namespace wavefprint

#endif  // WAVEFPRINT_PREPROCESS_H_
