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

#include "wavefprint/transforms.h"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "wavefprint/errors.h"

namespace wavefprint {

namespace {

// Mirror an index into [0, n) without repeating the edge sample; repeats the
// reflection as often as needed so pads longer than the signal still work.
std::size_t reflect_index(std::ptrdiff_t j, std::size_t n) {
  if (n == 1) return 0;
  const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
  j %= period;
  if (j < 0) j += period;
  if (j >= static_cast<std::ptrdiff_t>(n)) j = period - j;
  return static_cast<std::size_t>(j);
}

std::size_t periodic_index(std::ptrdiff_t j, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  j %= m;
  if (j < 0) j += m;
  return static_cast<std::size_t>(j);
}

std::size_t next_length(std::size_t n, std::size_t taps, BoundaryMode mode) {
  if (mode == BoundaryMode::periodic) return n / 2;
  return (n + taps - 2 + 1) / 2;
}

// Reusable scratch and reversed analysis filters for one filter bank.
class Splitter {
 public:
  Splitter(const FilterBank& fb, BoundaryMode mode)
      : taps_(fb.length()), mode_(mode), lo_(taps_), hi_(taps_) {
    for (std::size_t j = 0; j < taps_; ++j) {
      lo_[j] = fb.dec_lo[taps_ - 1 - j];
      hi_[j] = fb.dec_hi[taps_ - 1 - j];
    }
  }

  // out_lo[n] = sum_k dec_lo[k] p[2n + taps - 1 - k] over the padded input.
  void analyze(std::span<const double> x, std::span<double> out_lo,
               std::span<double> out_hi) {
    const std::size_t n = x.size();
    const std::size_t m = out_lo.size();
    const std::size_t padded = 2 * (m - 1) + taps_;
    pad_.resize(padded);
    const auto shift = static_cast<std::ptrdiff_t>(taps_ - 2);
    for (std::size_t i = 0; i < padded; ++i) {
      const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) - shift;
      if (j >= 0 && j < static_cast<std::ptrdiff_t>(n)) {
        pad_[i] = x[static_cast<std::size_t>(j)];
      } else {
        pad_[i] = x[mode_ == BoundaryMode::reflect ? reflect_index(j, n)
                                                   : periodic_index(j, n)];
      }
    }
    const double* p = pad_.data();
    const double* fl = lo_.data();
    const double* fh = hi_.data();
    for (std::size_t k = 0; k < m; ++k) {
      const double* w = p + 2 * k;
      double a = 0, d = 0;
      for (std::size_t j = 0; j < taps_; ++j) {
        a += fl[j] * w[j];
        d += fh[j] * w[j];
      }
      out_lo[k] = a;
      out_hi[k] = d;
    }
  }

  // Transposed analysis with the synthesis pair, cropped to out.size().
  void synthesize(std::span<const double> lo, std::span<const double> hi,
                  const FilterBank& fb, std::span<double> out) {
    const std::size_t m = lo.size();
    const std::size_t n = out.size();
    const std::size_t padded = 2 * (m - 1) + taps_;
    pad_.assign(padded, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      double* w = pad_.data() + 2 * k;
      const double a = lo[k], d = hi[k];
      for (std::size_t j = 0; j < taps_; ++j) {
        w[j] += fb.rec_lo[j] * a + fb.rec_hi[j] * d;
      }
    }
    const std::size_t shift = taps_ - 2;
    if (mode_ == BoundaryMode::reflect) {
      for (std::size_t i = 0; i < n; ++i) out[i] = pad_[i + shift];
    } else {
      std::fill(out.begin(), out.end(), 0.0);
      for (std::size_t i = 0; i < padded; ++i) {
        out[periodic_index(static_cast<std::ptrdiff_t>(i) -
                               static_cast<std::ptrdiff_t>(shift),
                           n)] += pad_[i];
      }
    }
  }

 private:
  std::size_t taps_;
  BoundaryMode mode_;
  std::vector<double> lo_, hi_;
  std::vector<double> pad_;
};

void check_meta(const PadMeta& meta, const FilterBank& fb, int level) {
  if (meta.taps != fb.length()) {
    throw Error(Errc::inversion_mismatch,
                "filter bank '" + fb.name + "' has " +
                    std::to_string(fb.length()) + " taps, coefficients were made with " +
                    std::to_string(meta.taps));
  }
  if (level < 1 || meta.level_lengths.size() != static_cast<std::size_t>(level) + 1) {
    throw Error(Errc::inversion_mismatch, "padding record does not match level");
  }
}

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// One-dimensional real-to-complex FFT of fixed size. FFTW's planner is not
// reentrant, so plan creation and destruction are serialized; execution with
// the new-array interface is thread safe.
class RealFft {
 public:
  explicit RealFft(std::size_t n) : n_(n) {
    in_ = fftw_alloc_real(n);
    out_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  double* input() { return in_; }
  std::complex<double> bin(std::size_t k) const {
    return {out_[k][0], out_[k][1]};
  }
  void execute() { fftw_execute(plan_); }

 private:
  std::size_t n_;
  double* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

}  // namespace

PadMeta plan_decomposition(std::size_t length, std::size_t taps, int level,
                           BoundaryMode mode) {
  if (level < 1) {
    throw Error(Errc::invalid_level, "level must be >= 1, got " + std::to_string(level));
  }
  if (taps < 2 || taps % 2 != 0) {
    throw Error(Errc::invalid_config, "filter length must be even and >= 2");
  }
  PadMeta meta;
  meta.original_length = length;
  meta.taps = taps;
  meta.mode = mode;
  meta.level_lengths.push_back(length);
  std::size_t n = length;
  for (int l = 0; l < level; ++l) {
    if (n < 2) {
      throw Error(Errc::invalid_level,
                  "level " + std::to_string(level) + " too deep for a signal of " +
                      std::to_string(length) + " samples");
    }
    if (mode == BoundaryMode::periodic && n % 2 != 0) {
      throw Error(Errc::invalid_level,
                  "periodic mode needs even lengths, level " + std::to_string(l + 1) +
                      " sees " + std::to_string(n));
    }
    n = next_length(n, taps, mode);
    meta.level_lengths.push_back(n);
  }
  return meta;
}

FwtCoeffs fwt(std::span<const double> signal, const FilterBank& fb, int level,
              BoundaryMode mode) {
  FwtCoeffs out;
  out.pad_meta = plan_decomposition(signal.size(), fb.length(), level, mode);
  out.level = level;
  Splitter splitter(fb, mode);
  std::vector<double> current(signal.begin(), signal.end());
  for (int l = 1; l <= level; ++l) {
    const std::size_t m = out.pad_meta.level_lengths[l];
    std::vector<double> lo(m), hi(m);
    splitter.analyze(current, lo, hi);
    out.details.push_back(std::move(hi));
    current = std::move(lo);
  }
  out.approx = std::move(current);
  return out;
}

std::vector<double> ifwt(const FwtCoeffs& coeffs, const FilterBank& fb) {
  const PadMeta& meta = coeffs.pad_meta;
  check_meta(meta, fb, coeffs.level);
  if (coeffs.details.size() != static_cast<std::size_t>(coeffs.level) ||
      coeffs.approx.size() != meta.level_lengths.back()) {
    throw Error(Errc::inversion_mismatch, "coefficient lengths do not match padding record");
  }
  Splitter splitter(fb, meta.mode);
  std::vector<double> current = coeffs.approx;
  for (int l = coeffs.level; l >= 1; --l) {
    const auto& detail = coeffs.details[l - 1];
    if (detail.size() != current.size()) {
      throw Error(Errc::inversion_mismatch, "detail length mismatch at level " + std::to_string(l));
    }
    std::vector<double> up(meta.level_lengths[l - 1]);
    splitter.synthesize(current, detail, fb, up);
    current = std::move(up);
  }
  return current;
}

std::size_t frequency_to_natural(std::size_t rank) { return rank ^ (rank >> 1); }

std::size_t natural_to_frequency(std::size_t node) {
  std::size_t rank = node;
  for (std::size_t shift = node >> 1; shift != 0; shift >>= 1) rank ^= shift;
  return rank;
}

PacketGrid reorder(const PacketGrid& grid, Ordering target) {
  if (grid.origin != GridOrigin::wpt || grid.ordering == target) return grid;
  PacketGrid out = grid;
  out.ordering = target;
  for (std::size_t row = 0; row < grid.bins; ++row) {
    // Frequency row r holds natural node gray(r).
    const std::size_t src = target == Ordering::frequency ? frequency_to_natural(row)
                                                          : natural_to_frequency(row);
    std::copy_n(grid.data.begin() + static_cast<std::ptrdiff_t>(src * grid.frames),
                grid.frames,
                out.data.begin() + static_cast<std::ptrdiff_t>(row * grid.frames));
  }
  return out;
}

PacketGrid wpt(std::span<const double> signal, const FilterBank& fb, int level,
               Ordering ordering, BoundaryMode mode, double sample_rate) {
  PadMeta meta = plan_decomposition(signal.size(), fb.length(), level, mode);
  Splitter splitter(fb, mode);

  std::vector<double> current(signal.begin(), signal.end());
  std::size_t nodes = 1;
  for (int l = 1; l <= level; ++l) {
    const std::size_t in_len = meta.level_lengths[l - 1];
    const std::size_t out_len = meta.level_lengths[l];
    std::vector<double> next(2 * nodes * out_len);
    for (std::size_t node = 0; node < nodes; ++node) {
      std::span<const double> x(current.data() + node * in_len, in_len);
      std::span<double> lo(next.data() + (2 * node) * out_len, out_len);
      std::span<double> hi(next.data() + (2 * node + 1) * out_len, out_len);
      splitter.analyze(x, lo, hi);
    }
    current = std::move(next);
    nodes *= 2;
  }

  PacketGrid grid;
  grid.bins = nodes;
  grid.frames = meta.level_lengths.back();
  grid.data = std::move(current);
  grid.level = level;
  grid.ordering = Ordering::natural;
  grid.sample_rate = sample_rate;
  grid.origin = GridOrigin::wpt;
  grid.pad_meta = std::move(meta);
  return ordering == Ordering::frequency ? reorder(grid, Ordering::frequency) : grid;
}

std::vector<double> iwpt(const PacketGrid& grid, const FilterBank& fb) {
  if (grid.origin != GridOrigin::wpt || !grid.pad_meta) {
    throw Error(Errc::inversion_mismatch, "grid carries no wavelet packet padding record");
  }
  const PadMeta& meta = *grid.pad_meta;
  check_meta(meta, fb, grid.level);
  if (grid.bins != (std::size_t{1} << grid.level) || grid.frames != meta.level_lengths.back() ||
      grid.data.size() != grid.bins * grid.frames) {
    throw Error(Errc::inversion_mismatch, "grid shape does not match padding record");
  }
  const PacketGrid natural =
      grid.ordering == Ordering::natural ? grid : reorder(grid, Ordering::natural);

  Splitter splitter(fb, meta.mode);
  std::vector<double> current = natural.data;
  std::size_t nodes = grid.bins;
  for (int l = grid.level; l >= 1; --l) {
    const std::size_t child_len = meta.level_lengths[l];
    const std::size_t parent_len = meta.level_lengths[l - 1];
    std::vector<double> parents((nodes / 2) * parent_len);
    for (std::size_t p = 0; p < nodes / 2; ++p) {
      std::span<const double> lo(current.data() + (2 * p) * child_len, child_len);
      std::span<const double> hi(current.data() + (2 * p + 1) * child_len, child_len);
      splitter.synthesize(lo, hi, fb, std::span<double>(parents.data() + p * parent_len, parent_len));
    }
    current = std::move(parents);
    nodes /= 2;
  }
  return current;
}

PacketGrid stft(std::span<const double> signal, Window window, std::size_t fft_size,
                std::size_t hop, double sample_rate) {
  if (fft_size < 2 || !std::has_single_bit(fft_size)) {
    throw Error(Errc::invalid_config, "fft_size must be a power of two, got " + std::to_string(fft_size));
  }
  if (hop < 1 || hop > fft_size) {
    throw Error(Errc::invalid_config, "hop must be in [1, fft_size], got " + std::to_string(hop));
  }
  if (signal.empty()) throw Error(Errc::empty_data, "stft of an empty signal");

  const std::size_t n = signal.size();
  const std::size_t frames = (n + hop - 1) / hop;
  const std::size_t bins = fft_size / 2;
  const auto half = static_cast<std::ptrdiff_t>(fft_size / 2);

  std::vector<double> win(fft_size, 1.0);
  if (window == Window::hann) {
    for (std::size_t i = 0; i < fft_size; ++i) {
      win[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                    static_cast<double>(fft_size));
    }
  }

  PacketGrid grid;
  grid.bins = bins;
  grid.frames = frames;
  grid.cdata.resize(bins * frames);
  grid.sample_rate = sample_rate;
  grid.origin = GridOrigin::stft;
  grid.ordering = Ordering::frequency;

  RealFft fft(fft_size);
  for (std::size_t f = 0; f < frames; ++f) {
    const std::ptrdiff_t start = static_cast<std::ptrdiff_t>(f * hop) - half;
    double* in = fft.input();
    for (std::size_t i = 0; i < fft_size; ++i) {
      in[i] = signal[reflect_index(start + static_cast<std::ptrdiff_t>(i), n)] * win[i];
    }
    fft.execute();
    for (std::size_t k = 0; k < bins; ++k) grid.cdata[k * frames + f] = fft.bin(k);
  }
  return grid;
}

std::vector<double> rfft_mag(std::span<const double> signal) {
  if (signal.empty()) throw Error(Errc::empty_data, "rfft of an empty signal");
  RealFft fft(signal.size());
  std::copy(signal.begin(), signal.end(), fft.input());
  fft.execute();
  std::vector<double> mag(signal.size() / 2 + 1);
  for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(fft.bin(k));
  return mag;
}

}  // namespace wavefprint
