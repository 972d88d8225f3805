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

#include "wavefprint/fingerprint.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>

#include "wavefprint/errors.h"
#include "wavefprint/parallel.h"
#include "wavefprint/transforms.h"
#include "wavefprint/wavelets.h"

namespace wavefprint {

std::string Spectrum::tag() const {
  if (kind == SpectrumKind::rfft) return "rfft";
  return "wpt" + std::to_string(level) + "-" + wavelet;
}

SpectrumAccumulator::SpectrumAccumulator(FingerprintConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.kind == SpectrumKind::wpt) {
    get_filter_bank(cfg_.wavelet);
    if (cfg_.level < 1) throw Error(Errc::invalid_level, "spectrum level must be >= 1");
  }
  if (cfg_.max_clips < 1) throw Error(Errc::invalid_config, "clip count must be >= 1");
}

std::vector<double> SpectrumAccumulator::clip_spectrum(std::span<const double> samples) const {
  if (cfg_.kind == SpectrumKind::rfft) return rfft_mag(samples);
  const PacketGrid g = wpt(samples, get_filter_bank(cfg_.wavelet), cfg_.level, Ordering::frequency);
  std::vector<double> out(g.bins);
  for (std::size_t b = 0; b < g.bins; ++b) {
    double s = 0;
    for (double v : g.row(b)) s += std::abs(v);
    out[b] = s / static_cast<double>(g.frames);
  }
  return out;
}

void SpectrumAccumulator::add(std::span<const double> samples, double sample_rate) {
  if (count_ > 0 && (samples.size() != clip_length_ || sample_rate != sample_rate_)) {
    throw Error(Errc::shape, "clips in one spectrum must share length and rate");
  }
  clip_length_ = samples.size();
  sample_rate_ = sample_rate;
  add_spectrum(clip_spectrum(samples));
}

void SpectrumAccumulator::set_clip_format(std::size_t length, double sample_rate) {
  clip_length_ = length;
  sample_rate_ = sample_rate;
}

void SpectrumAccumulator::add_spectrum(std::span<const double> linear) {
  if (count_ == 0) {
    mean_.assign(linear.size(), 0.0);
  } else if (linear.size() != mean_.size()) {
    throw Error(Errc::shape, "spectrum length changed between clips");
  }
  ++count_;
  const double inv = 1.0 / static_cast<double>(count_);
  for (std::size_t i = 0; i < linear.size(); ++i) mean_[i] += (linear[i] - mean_[i]) * inv;
}

Spectrum SpectrumAccumulator::finish() const {
  if (count_ == 0) throw Error(Errc::empty_data, "no clips were accumulated");
  Spectrum s;
  s.kind = cfg_.kind;
  s.n_clips = count_;
  s.sample_rate = sample_rate_;
  s.epsilon = cfg_.epsilon;
  s.values.resize(mean_.size());
  for (std::size_t i = 0; i < mean_.size(); ++i) s.values[i] = std::log(mean_[i] + cfg_.epsilon);
  s.bin_freqs.resize(mean_.size());
  if (cfg_.kind == SpectrumKind::wpt) {
    s.wavelet = cfg_.wavelet;
    s.level = cfg_.level;
    const double width = sample_rate_ / 2.0 / static_cast<double>(mean_.size());
    for (std::size_t i = 0; i < mean_.size(); ++i) s.bin_freqs[i] = static_cast<double>(i) * width;
  } else {
    const std::size_t length = clip_length_ ? clip_length_ : 2 * (mean_.size() - 1);
    for (std::size_t i = 0; i < mean_.size(); ++i) {
      s.bin_freqs[i] = static_cast<double>(i) * sample_rate_ / static_cast<double>(length);
    }
  }
  return s;
}

Spectrum mean_spectrum(std::size_t n, const std::function<AudioClip(std::size_t)>& clip_at,
                       const FingerprintConfig& cfg) {
  SpectrumAccumulator acc(cfg);
  n = std::min(n, cfg.max_clips);
  constexpr std::size_t kChunk = 64;
  std::size_t length = 0;
  double rate = 0;
  for (std::size_t start = 0; start < n; start += kChunk) {
    const std::size_t len = std::min(kChunk, n - start);
    std::vector<AudioClip> clips;
    clips.reserve(len);
    for (std::size_t i = start; i < start + len; ++i) {
      clips.push_back(clip_at(i));
      if (i == 0) length = clips.back().samples.size(), rate = clips.back().sample_rate;
      if (clips.back().samples.size() != length || clips.back().sample_rate != rate) {
        throw Error(Errc::shape, "clips in one spectrum must share length and rate");
      }
    }
    std::vector<std::vector<double>> spectra(len);
    parallel_for(len, [&](std::size_t i) { spectra[i] = acc.clip_spectrum(clips[i].samples); });
    for (const auto& sp : spectra) acc.add_spectrum(sp);
  }
  if (n > 0) acc.set_clip_format(length, rate);
  return acc.finish();
}

Spectrum mean_wpt_spectrum(std::span<const AudioClip> clips, const std::string& wavelet, int level,
                           std::size_t n, double epsilon) {
  return mean_spectrum(
      clips.size(), [&](std::size_t i) { return clips[i]; }, {SpectrumKind::wpt, wavelet, level, n, epsilon});
}

Spectrum mean_fft_spectrum(std::span<const AudioClip> clips, std::size_t n, double epsilon) {
  return mean_spectrum(
      clips.size(), [&](std::size_t i) { return clips[i]; }, {SpectrumKind::rfft, "", 0, n, epsilon});
}

Spectrum diff_spectrum(const Spectrum& a, const Spectrum& b) {
  if (a.tag() != b.tag() || a.values.size() != b.values.size()) {
    throw Error(Errc::shape, "cannot subtract spectrum " + b.tag() + "[" + std::to_string(b.values.size()) +
                                 "] from " + a.tag() + "[" + std::to_string(a.values.size()) + "]");
  }
  Spectrum d = a;
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] = a.values[i] - b.values[i];
  d.n_clips = std::min(a.n_clips, b.n_clips);
  return d;
}

AudioClip sonify(const Spectrum& diff, double gain, double duration_s) {
  if (diff.kind != SpectrumKind::wpt) throw Error(Errc::unsupported_combination, "sonify needs a wpt spectrum");
  if (!(gain > 0) || !(duration_s > 0)) throw Error(Errc::invalid_config, "gain and duration must be positive");
  const FilterBank fb = get_filter_bank(diff.wavelet);
  const auto length = static_cast<std::size_t>(std::llround(duration_s * diff.sample_rate));
  const PadMeta meta = plan_decomposition(length, fb.length(), diff.level);
  const std::size_t bins = std::size_t{1} << diff.level;
  if (diff.values.size() != bins) throw Error(Errc::shape, "spectrum does not have 2^level bins");

  PacketGrid grid;
  grid.bins = bins;
  grid.frames = meta.level_lengths.back();
  grid.level = diff.level;
  grid.ordering = Ordering::frequency;
  grid.sample_rate = diff.sample_rate;
  grid.origin = GridOrigin::wpt;
  grid.pad_meta = meta;
  grid.data.resize(bins * grid.frames);
  for (std::size_t b = 0; b < bins; ++b) {
    const double v = gain * std::abs(std::expm1(diff.values[b]));
    std::fill_n(grid.data.begin() + static_cast<std::ptrdiff_t>(b * grid.frames), grid.frames, v);
  }
  AudioClip out;
  out.samples = iwpt(grid, fb);
  out.sample_rate = diff.sample_rate;
  out.source_path = "sonify:" + diff.tag();
  double peak = 0;
  for (double s : out.samples) peak = std::max(peak, std::abs(s));
  if (peak >= 1e-6) {
    for (double& s : out.samples) s *= kSonifyPeak / peak;
  }
  return out;
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out << "freq_hz,value\n";
  char buf[80];
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.bin_freqs[i], s.values[i]);
    out << buf;
  }
}

Spectrum read_spectrum_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "freq_hz,value") {
    throw Error(Errc::malformed_header, path.string() + ": expected header freq_hz,value");
  }
  Spectrum s;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    char* end = nullptr;
    const double f = std::strtod(line.c_str(), &end);
    const bool ok_f = comma != std::string::npos && end == line.c_str() + comma;
    const double v = ok_f ? std::strtod(line.c_str() + comma + 1, &end) : 0.0;
    if (!ok_f || end != line.c_str() + line.size()) {
      throw Error(Errc::malformed_header, path.string() + ":" + std::to_string(row) + ": bad row");
    }
    s.bin_freqs.push_back(f);
    s.values.push_back(v);
  }
  if (s.values.empty()) throw Error(Errc::empty_data, path.string() + " has no rows");
  return s;
}

std::vector<std::size_t> top_bins(const Spectrum& s, std::size_t k) {
  std::vector<std::size_t> idx(s.values.size());
  std::iota(idx.begin(), idx.end(), 0);
  k = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double va = std::abs(s.values[a]), vb = std::abs(s.values[b]);
                      return va != vb ? va > vb : a < b;
                    });
  idx.resize(k);
  return idx;
}

}  // namespace wavefprint
