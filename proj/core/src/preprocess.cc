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

#include "wavefprint/preprocess.h"

#include <cmath>
#include <string>

#include "wavefprint/errors.h"
#include "wavefprint/wavelets.h"

namespace wavefprint {

std::string FeatureConfig::tag() const {
  if (transform == FeatureTransform::stft) {
    return "stft-" + std::to_string(fft_size) + "-" + std::to_string(hop);
  }
  return "wpt-" + wavelet + "-l" + std::to_string(level);
}

void validate(const FeatureConfig& cfg) {
  if (cfg.transform == FeatureTransform::stft && cfg.signed_channel) {
    throw Error(Errc::unsupported_combination,
                "the sign channel is only defined for wavelet packet features");
  }
  if (!(cfg.epsilon > 0) || !std::isfinite(cfg.epsilon)) {
    throw Error(Errc::invalid_config, "epsilon must be positive");
  }
  if (cfg.clip_length == 0) throw Error(Errc::invalid_config, "clip_length must be positive");
  if (cfg.transform == FeatureTransform::wpt) {
    get_filter_bank(cfg.wavelet);
    if (cfg.level < 1 || cfg.level > 16) {
      throw Error(Errc::invalid_level, "feature level must be in [1, 16]");
    }
  }
}

std::size_t feature_bins(const FeatureConfig& cfg) {
  if (cfg.transform == FeatureTransform::stft) return cfg.fft_size / 2;
  return std::size_t{1} << cfg.level;
}

std::size_t feature_frames(const FeatureConfig& cfg) {
  if (cfg.transform == FeatureTransform::stft) {
    return (cfg.clip_length + cfg.hop - 1) / cfg.hop;
  }
  const FilterBank fb = get_filter_bank(cfg.wavelet);
  return plan_decomposition(cfg.clip_length, fb.length(), cfg.level).level_lengths.back();
}

void featurize_into(std::span<const double> clip, const FeatureConfig& cfg, std::span<double> out) {
  if (clip.size() != cfg.clip_length) {
    throw Error(Errc::shape, "clip has " + std::to_string(clip.size()) + " samples, expected " +
                                 std::to_string(cfg.clip_length));
  }
  const double eps = cfg.epsilon;
  auto scale = [&](double mag) {
    return cfg.power ? std::log(mag * mag + eps) : std::log(mag + eps);
  };
  if (cfg.transform == FeatureTransform::stft) {
    const PacketGrid g = stft(clip, cfg.window, cfg.fft_size, cfg.hop, cfg.sample_rate);
    for (std::size_t i = 0; i < g.cdata.size(); ++i) out[i] = scale(std::abs(g.cdata[i]));
    return;
  }
  const FilterBank fb = get_filter_bank(cfg.wavelet);
  const PacketGrid g = wpt(clip, fb, cfg.level, Ordering::frequency, BoundaryMode::reflect,
                           cfg.sample_rate);
  const std::size_t n = g.data.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = scale(std::abs(g.data[i]));
  if (cfg.signed_channel) {
    for (std::size_t i = 0; i < n; ++i) out[n + i] = g.data[i] < 0 ? -1.0 : 1.0;
  }
}

FeatureTensor featurize(std::span<const std::vector<double>> clips, const FeatureConfig& cfg) {
  validate(cfg);
  FeatureTensor t;
  t.batch = clips.size();
  t.channels = cfg.signed_channel ? 2 : 1;
  t.bins = feature_bins(cfg);
  t.frames = feature_frames(cfg);
  t.transform_tag = cfg.tag();
  t.power_applied = cfg.power;
  t.epsilon = cfg.epsilon;
  t.data.resize(t.batch * t.sample_size());
  for (std::size_t b = 0; b < clips.size(); ++b) {
    featurize_into(clips[b], cfg,
                   std::span<double>(t.data).subspan(b * t.sample_size(), t.sample_size()));
  }
  return t;
}

FeatureTensor silent_features(const FeatureConfig& cfg, std::size_t batch) {
  validate(cfg);
  FeatureTensor t;
  t.batch = batch;
  t.channels = cfg.signed_channel ? 2 : 1;
  t.bins = feature_bins(cfg);
  t.frames = feature_frames(cfg);
  t.transform_tag = cfg.tag();
  t.power_applied = cfg.power;
  t.epsilon = cfg.epsilon;
  t.data.resize(batch * t.sample_size());
  const std::size_t plane = t.bins * t.frames;
  for (std::size_t b = 0; b < batch; ++b) {
    double* s = t.data.data() + b * t.sample_size();
    std::fill(s, s + plane, std::log(cfg.epsilon));
    if (t.channels == 2) std::fill(s + plane, s + 2 * plane, 1.0);
  }
  return t;
}

FeatureTensor gather(const FeatureTensor& src, std::span<const std::size_t> indices) {
  FeatureTensor t;
  t.batch = indices.size();
  t.channels = src.channels;
  t.bins = src.bins;
  t.frames = src.frames;
  t.transform_tag = src.transform_tag;
  t.power_applied = src.power_applied;
  t.epsilon = src.epsilon;
  t.data.resize(t.batch * t.sample_size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= src.batch) throw Error(Errc::shape, "gather index out of range");
    auto s = src.sample(indices[i]);
    std::copy(s.begin(), s.end(), t.data.begin() + static_cast<std::ptrdiff_t>(i * t.sample_size()));
  }
  return t;
}

}  // namespace wavefprint
