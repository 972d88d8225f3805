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

#ifndef WAVEFPRINT_SYNTH_H_
#define WAVEFPRINT_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wavefprint/audio.h"

namespace wavefprint {

// Harmonic "real" clips and "fake" copies carrying added spectral spikes.
struct SynthConfig {
  std::size_t clips = 1000;          // real clips; each gets one fake per generator
  std::uint64_t seed = 0;
  double noise_db = -40;             // white noise floor, relative to the harmonic RMS
  double artifact_db = -30;          // per-tone RMS, relative to the harmonic RMS
  double f0_min = 100, f0_max = 300;
  double harmonic_ceiling_hz = 4000;
  double sample_rate = kSampleRate;
  std::size_t length = kClipLength;
};

// Artifact tone frequencies per generator name.
using GeneratorSpikes = std::map<std::string, std::vector<double>>;

// One generator, spikes at 2756.25, 5512.5 and 8268.75 Hz.
GeneratorSpikes default_spikes();

// Three generators with disjoint spike sets, for multi-generator protocols.
GeneratorSpikes multi_generator_spikes();

AudioClip synth_real(std::size_t index, const SynthConfig& cfg);
AudioClip synth_fake(const AudioClip& real, std::size_t index, const std::vector<double>& spikes_hz,
                     const std::string& generator, const SynthConfig& cfg);

struct SynthCorpus {
  std::vector<AudioClip> real;
  std::map<std::string, std::vector<AudioClip>> fake;
};

SynthCorpus make_corpus(const SynthConfig& cfg, const GeneratorSpikes& generators);

// Writes real/clip_NNNN.wav and fake/<generator>/clip_NNNN_gen.wav under dir.
void write_corpus(const std::filesystem::path& dir, const SynthCorpus& corpus);

}  // namespace wavefprint

#endif  // WAVEFPRINT_SYNTH_H_
