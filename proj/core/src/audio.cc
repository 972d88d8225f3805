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

#include "wavefprint/audio.h"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>

#include "wavefprint/errors.h"

namespace wavefprint {

namespace {

constexpr double kKaiserBeta = 14.0;
constexpr double kZeroCrossings = 64.0;

std::int64_t integral_rate(double rate) {
  if (!(rate > 0) || !std::isfinite(rate) || rate != std::floor(rate)) {
    throw Error(Errc::invalid_config, "sample rate must be a positive integer, got " +
                                          std::to_string(rate));
  }
  return static_cast<std::int64_t>(rate);
}

double sinc(double x) {
  if (x == 0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

std::string_view to_string(Label label) { return label == Label::real ? "real" : "fake"; }

Label parse_label(std::string_view text) {
  if (text == "real") return Label::real;
  if (text == "fake") return Label::fake;
  throw Error(Errc::invalid_config, "unknown label '" + std::string(text) + "'");
}

std::size_t resampled_length(std::size_t length, double source_rate, double target_rate) {
  const std::int64_t src = integral_rate(source_rate);
  const std::int64_t dst = integral_rate(target_rate);
  const std::int64_t g = std::gcd(src, dst);
  const auto up = static_cast<unsigned __int128>(dst / g);
  const auto down = static_cast<unsigned __int128>(src / g);
  return static_cast<std::size_t>(static_cast<unsigned __int128>(length) * up / down);
}

AudioClip resample(const AudioClip& clip, double target_rate) {
  const std::int64_t src = integral_rate(clip.sample_rate);
  const std::int64_t dst = integral_rate(target_rate);
  if (src == dst) return clip;

  const std::int64_t g = std::gcd(src, dst);
  const std::int64_t up = dst / g;
  const std::int64_t down = src / g;
  // Cutoff relative to the input Nyquist frequency.
  const double cutoff = std::min(1.0, static_cast<double>(up) / static_cast<double>(down));
  const double half_width = kZeroCrossings / cutoff;  // in input samples
  const auto reach = static_cast<std::int64_t>(std::ceil(half_width));
  const std::size_t taps = static_cast<std::size_t>(2 * reach + 1);
  const double i0_beta = std::cyl_bessel_i(0.0, kKaiserBeta);

  // Phase p places the output sample p/up input samples past the integer
  // position; tap j sits at input offset (j - reach).
  std::vector<double> table(static_cast<std::size_t>(up) * taps);
  for (std::int64_t p = 0; p < up; ++p) {
    const double frac = static_cast<double>(p) / static_cast<double>(up);
    double* h = table.data() + static_cast<std::size_t>(p) * taps;
    double sum = 0;
    for (std::size_t j = 0; j < taps; ++j) {
      const double tau = frac - (static_cast<double>(j) - static_cast<double>(reach));
      const double r = tau / half_width;
      double w = 0;
      if (std::abs(r) <= 1.0) {
        w = std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - r * r)) / i0_beta;
      }
      h[j] = cutoff * sinc(cutoff * tau) * w;
      sum += h[j];
    }
    for (std::size_t j = 0; j < taps; ++j) h[j] /= sum;
  }

  const std::size_t n_in = clip.samples.size();
  const std::size_t n_out = resampled_length(n_in, clip.sample_rate, target_rate);
  AudioClip out;
  out.sample_rate = target_rate;
  out.source_path = clip.source_path;
  out.label = clip.label;
  out.generator = clip.generator;
  out.samples.resize(n_out);
  for (std::size_t n = 0; n < n_out; ++n) {
    const std::int64_t t = static_cast<std::int64_t>(n) * down;
    const std::int64_t base = t / up;
    const std::int64_t phase = t % up;
    const double* h = table.data() + static_cast<std::size_t>(phase) * taps;
    double acc = 0;
    for (std::size_t j = 0; j < taps; ++j) {
      const std::int64_t i = base + static_cast<std::int64_t>(j) - reach;
      if (i >= 0 && i < static_cast<std::int64_t>(n_in)) acc += h[j] * clip.samples[static_cast<std::size_t>(i)];
    }
    out.samples[n] = acc;
  }
  return out;
}

std::vector<AudioClip> segment(const AudioClip& clip, double seconds) {
  if (!(seconds > 0)) throw Error(Errc::invalid_config, "segment length must be positive");
  const auto window = static_cast<std::size_t>(std::llround(seconds * clip.sample_rate));
  std::vector<AudioClip> out;
  if (window == 0) return out;
  for (std::size_t start = 0; start + window <= clip.samples.size(); start += window) {
    AudioClip s;
    s.samples.assign(clip.samples.begin() + static_cast<std::ptrdiff_t>(start),
                     clip.samples.begin() + static_cast<std::ptrdiff_t>(start + window));
    s.sample_rate = clip.sample_rate;
    s.source_path = clip.source_path;
    s.label = clip.label;
    s.generator = clip.generator;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace wavefprint
