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

#ifndef WAVEFPRINT_WAV_H_
#define WAVEFPRINT_WAV_H_

#include <cstdint>
#include <filesystem>
#include <span>

#include "wavefprint/audio.h"

namespace wavefprint {

enum class SampleFormat { pcm16, float32 };

struct WavInfo {
  int channels = 0;
  int sample_rate = 0;
  int bits_per_sample = 0;
  SampleFormat format = SampleFormat::pcm16;
  std::size_t frames = 0;
};

// Parses the RIFF/WAVE header only. Accepts 16-bit PCM and 32-bit IEEE float,
// plain or WAVE_FORMAT_EXTENSIBLE. Errors: malformed_header, unsupported_codec,
// empty_data, io.
WavInfo read_wav_info(const std::filesystem::path& path);

// Decodes to mono doubles in [-1, 1]. PCM16 is scaled by 1/32768; channels are
// averaged.
AudioClip read_wav(const std::filesystem::path& path);

// Writes 16-bit PCM mono. Samples are clipped to [-1, 1] and rounded.
void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               int sample_rate);

}  // namespace wavefprint

#endif  // WAVEFPRINT_WAV_H_
