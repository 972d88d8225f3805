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

#ifndef WAVEFPRINT_FINGERPRINT_H_
#define WAVEFPRINT_FINGERPRINT_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavefprint/audio.h"

namespace wavefprint {

enum class SpectrumKind { wpt, rfft };

// Log-scaled mean magnitude per frequency bin, ascending frequency.
struct Spectrum {
  std::vector<double> values;
  std::vector<double> bin_freqs;  // Hz; left band edge for wpt, DFT bin for rfft
  SpectrumKind kind = SpectrumKind::wpt;
  std::string wavelet;            // wpt only
  int level = 0;                  // wpt only
  std::size_t n_clips = 0;
  double sample_rate = kSampleRate;
  double epsilon = 1e-12;

  std::string tag() const;  // "wpt14-haar", "rfft"
};

struct FingerprintConfig {
  SpectrumKind kind = SpectrumKind::wpt;
  std::string wavelet = "haar";
  int level = 14;
  std::size_t max_clips = 2500;
  double epsilon = 1e-12;
};

// Streaming mean of per-clip spectra. For wpt, a clip's spectrum is the mean
// |coefficient| over the time frames of each frequency-ordered packet; for
// rfft it is |DFT|. The pre-log running mean is exposed for inspection.
class SpectrumAccumulator {
 public:
  explicit SpectrumAccumulator(FingerprintConfig cfg);

  // Per-clip linear spectrum, without accumulating.
  std::vector<double> clip_spectrum(std::span<const double> samples) const;
  void add(std::span<const double> samples, double sample_rate = kSampleRate);
  void add_spectrum(std::span<const double> linear);
  // Clip length and rate used for the rfft frequency axis when spectra are
  // added directly.
  void set_clip_format(std::size_t length, double sample_rate);

  std::size_t count() const { return count_; }
  const std::vector<double>& mean() const { return mean_; }
  bool full() const { return count_ >= cfg_.max_clips; }
  Spectrum finish() const;

 private:
  FingerprintConfig cfg_;
  std::size_t count_ = 0;
  std::size_t clip_length_ = 0;
  double sample_rate_ = kSampleRate;
  std::vector<double> mean_;
};

// Streams clip_at(0), clip_at(1), ... up to min(n, cfg.max_clips) clips.
// clip_at is called from the calling thread only; per-clip spectra are
// computed in parallel and folded in clip order.
Spectrum mean_spectrum(std::size_t n, const std::function<AudioClip(std::size_t)>& clip_at,
                       const FingerprintConfig& cfg);

// Uses at most n clips; fewer are accepted and reflected in n_clips.
Spectrum mean_wpt_spectrum(std::span<const AudioClip> clips, const std::string& wavelet = "haar",
                           int level = 14, std::size_t n = 2500, double epsilon = 1e-12);
Spectrum mean_fft_spectrum(std::span<const AudioClip> clips, std::size_t n = 2500,
                           double epsilon = 1e-12);

// Elementwise a - b of the log values.
Spectrum diff_spectrum(const Spectrum& a, const Spectrum& b);

// Audible rendering of a wpt difference spectrum: each packet row holds
// gain * |exp(diff) - 1| at every frame, the grid is inverted, and the result
// is peak-normalized to 0.89. Output shorter than 1e-6 peak stays silent.
AudioClip sonify(const Spectrum& diff, double gain, double duration_s);

inline constexpr double kSonifyPeak = 0.89;

// "freq_hz,value" rows at 17 significant digits.
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s);
// Reads values and bin_freqs back; the remaining fields keep their defaults.
Spectrum read_spectrum_csv(const std::filesystem::path& path);

// Indices of the k bins with the largest |value|, largest first.
std::vector<std::size_t> top_bins(const Spectrum& s, std::size_t k);

}  // namespace wavefprint

#endif  // WAVEFPRINT_FINGERPRINT_H_
