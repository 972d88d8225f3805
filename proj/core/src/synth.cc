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

#include "wavefprint/synth.h"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "wavefprint/errors.h"
#include "wavefprint/rng.h"
#include "wavefprint/wav.h"

namespace wavefprint {

namespace {

double db_to_amp(double db) { return std::pow(10.0, db / 20.0); }

double rms(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s / static_cast<double>(x.size()));
}

std::string clip_name(std::size_t index, bool fake) {
  char buf[32];
  std::snprintf(buf, sizeof buf, fake ? "clip_%04zu_gen.wav" : "clip_%04zu.wav", index);
  return buf;
}

}  // namespace

// Multiples of sr/8, sr/16 and sr/32, where stride-8/16/32 upsampling stacks
// place their periodic artifacts.
GeneratorSpikes default_spikes() { return {{"spikegan", {2756.25, 5512.5, 8268.75}}}; }

GeneratorSpikes multi_generator_spikes() {
  return {{"spikegan", {2756.25, 5512.5, 8268.75}},
          {"hummgan", {4134.375, 6890.625, 9646.875}},
          {"buzzgan", {3445.3125, 7579.6875}}};
}

AudioClip synth_real(std::size_t index, const SynthConfig& cfg) {
  Rng rng(mix_seed(cfg.seed, index));
  const double sr = cfg.sample_rate;
  const double f0 = rng.uniform(cfg.f0_min, cfg.f0_max);
  const double vibrato_hz = rng.uniform(3.0, 6.0);
  const double vibrato_depth = rng.uniform(0.0, 0.02);
  AudioClip clip;
  clip.sample_rate = sr;
  clip.samples.assign(cfg.length, 0.0);
  clip.source_path = "synth:" + clip_name(index, false);
  const int harmonics = static_cast<int>(cfg.harmonic_ceiling_hz / (f0 * (1 + vibrato_depth)));
  for (int h = 1; h <= harmonics; ++h) {
    const double amp = rng.uniform(0.3, 1.0) / h;
    const double phase = rng.uniform(0.0, 2 * std::numbers::pi);
    for (std::size_t n = 0; n < cfg.length; ++n) {
      const double t = static_cast<double>(n) / sr;
      // Instantaneous phase of a sinusoidally modulated fundamental.
      const double inst = f0 * t - f0 * vibrato_depth * std::cos(2 * std::numbers::pi * vibrato_hz * t) /
                                       (2 * std::numbers::pi * vibrato_hz);
      clip.samples[n] += amp * std::sin(2 * std::numbers::pi * h * inst + phase);
    }
  }
  // Syllable-like amplitude envelope.
  const double env_hz = rng.uniform(1.5, 4.0);
  const double env_phase = rng.uniform(0.0, 2 * std::numbers::pi);
  for (std::size_t n = 0; n < cfg.length; ++n) {
    const double t = static_cast<double>(n) / sr;
    clip.samples[n] *= 0.6 + 0.4 * std::sin(2 * std::numbers::pi * env_hz * t + env_phase);
  }
  const double r = rms(clip.samples);
  const double noise = r * db_to_amp(cfg.noise_db);
  for (double& v : clip.samples) v += noise * rng.normal();
  // Leave headroom for the artifact tones.
  double peak = 0;
  for (double v : clip.samples) peak = std::max(peak, std::abs(v));
  for (double& v : clip.samples) v *= 0.5 / peak;
  return clip;
}

AudioClip synth_fake(const AudioClip& real, std::size_t index, const std::vector<double>& spikes_hz,
                     const std::string& generator, const SynthConfig& cfg) {
  Rng rng(mix_seed(cfg.seed ^ stable_hash(generator, 7), index));
  AudioClip fake = real;
  fake.label = Label::fake;
  fake.generator = generator;
  fake.source_path = "synth:" + generator + "/" + clip_name(index, true);
  const double amp = rms(real.samples) * db_to_amp(cfg.artifact_db) * std::sqrt(2.0);
  for (double f : spikes_hz) {
    if (!(f > 0 && f < real.sample_rate / 2)) throw Error(Errc::invalid_config, "spike frequency out of band");
    const double phase = rng.uniform(0.0, 2 * std::numbers::pi);
    for (std::size_t n = 0; n < fake.samples.size(); ++n) {
      fake.samples[n] += amp * std::sin(2 * std::numbers::pi * f * static_cast<double>(n) / real.sample_rate + phase);
    }
  }
  return fake;
}

SynthCorpus make_corpus(const SynthConfig& cfg, const GeneratorSpikes& generators) {
  SynthCorpus corpus;
  for (std::size_t i = 0; i < cfg.clips; ++i) {
    corpus.real.push_back(synth_real(i, cfg));
    for (const auto& [name, spikes] : generators) {
      corpus.fake[name].push_back(synth_fake(corpus.real.back(), i, spikes, name, cfg));
    }
  }
  return corpus;
}

void write_corpus(const std::filesystem::path& dir, const SynthCorpus& corpus) {
  std::filesystem::create_directories(dir / "real");
  for (std::size_t i = 0; i < corpus.real.size(); ++i) {
    const auto& c = corpus.real[i];
    write_wav(dir / "real" / clip_name(i, false), c.samples, static_cast<int>(c.sample_rate));
  }
  for (const auto& [name, clips] : corpus.fake) {
    std::filesystem::create_directories(dir / "fake" / name);
    for (std::size_t i = 0; i < clips.size(); ++i) {
      write_wav(dir / "fake" / name / clip_name(i, true), clips[i].samples,
                static_cast<int>(clips[i].sample_rate));
    }
  }
}

}  // namespace wavefprint
