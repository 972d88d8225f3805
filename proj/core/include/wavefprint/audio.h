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

#ifndef WAVEFPRINT_AUDIO_H_
#define WAVEFPRINT_AUDIO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wavefprint {

inline constexpr double kSampleRate = 22050.0;
inline constexpr std::size_t kClipLength = 22050;

enum class Label { real = 0, fake = 1 };

std::string_view to_string(Label label);
Label parse_label(std::string_view text);

struct AudioClip {
  std::vector<double> samples;
  double sample_rate = kSampleRate;
  std::string source_path;
  Label label = Label::real;
  std::optional<std::string> generator;
};

// Windowed-sinc rational resampler (Kaiser, beta 14, 64 zero crossings).
// Output length is floor(len * target / source). Equal rates pass through
// unchanged. Rates must be positive integers in Hz.
AudioClip resample(const AudioClip& clip, double target_rate);

// Non-overlapping windows of round(seconds * rate) samples; the remainder is
// dropped.
std::vector<AudioClip> segment(const AudioClip& clip, double seconds = 1.0);

// Length after resampling, without doing the work.
std::size_t resampled_length(std::size_t length, double source_rate, double target_rate);

}  // namespace wavefprint

#endif  // WAVEFPRINT_AUDIO_H_
