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
#ifndef WAVEFPRINT_TRANSFORMS_H_
#define WAVEFPRINT_TRANSFORMS_H_

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wavefprint/wavelets.h"

namespace wavefprint {

// reflect: mirror padding of (taps - 2) samples per side, plus one extra
// sample on the right for odd lengths. The transform is expansive and exact
// to invert. periodic: circular extension, N/2 coefficients per branch;
// orthogonal, used for energy checks. Requires even lengths at every level.
enum class BoundaryMode { reflect, periodic };

// natural: tree order (a=0, d=1, root bit first). frequency: rows ascend in
// physical frequency (Gray-code permutation of natural).
enum class Ordering { natural, frequency };

enum class GridOrigin { wpt, stft, rfft };

enum class Window { hann, rect };

// Lengths needed to undo a decomposition. level_lengths[l] is the length of
// every node at tree depth l, so level_lengths[0] is the signal length and
// level_lengths.back() the coefficient length of the leaves.
struct PadMeta {
  std::size_t original_length = 0;
  std::size_t taps = 0;
  BoundaryMode mode = BoundaryMode::reflect;
  std::vector<std::size_t> level_lengths;
};

// Validates (length, taps, level, mode) and returns the per-level lengths.
// Throws Errc::invalid_level when a level would have to split fewer than two
// samples, or an odd length in periodic mode.
PadMeta plan_decomposition(std::size_t length, std::size_t taps, int level,
                           BoundaryMode mode = BoundaryMode::reflect);

struct FwtCoeffs {
  std::vector<double> approx;
  std::vector<std::vector<double>> details;  // details[0] = y_d, [1] = y_ad, ...
  int level = 0;
  PadMeta pad_meta;
};

FwtCoeffs fwt(std::span<const double> signal, const FilterBank& fb, int level,
              BoundaryMode mode = BoundaryMode::reflect);
std::vector<double> ifwt(const FwtCoeffs& coeffs, const FilterBank& fb);

struct PacketGrid {
  std::size_t bins = 0;
  std::size_t frames = 0;
  std::vector<double> data;                 // wpt and rfft, row-major bins x frames
  std::vector<std::complex<double>> cdata;  // stft, row-major bins x frames
  int level = 0;
  Ordering ordering = Ordering::natural;
  double sample_rate = 22050.0;
  GridOrigin origin = GridOrigin::wpt;
  std::optional<PadMeta> pad_meta;

  bool is_complex() const { return !cdata.empty(); }
  double at(std::size_t bin, std::size_t frame) const {
    return data[bin * frames + frame];
  }
  std::span<const double> row(std::size_t bin) const {
    return std::span<const double>(data).subspan(bin * frames, frames);
  }
};

// Full-tree wavelet packet transform to depth level.
PacketGrid wpt(std::span<const double> signal, const FilterBank& fb, int level,
               Ordering ordering = Ordering::frequency,
               BoundaryMode mode = BoundaryMode::reflect,
               double sample_rate = 22050.0);
std::vector<double> iwpt(const PacketGrid& grid, const FilterBank& fb);

// Row permutation helpers between frequency rank and tree position.
std::size_t frequency_to_natural(std::size_t rank);
std::size_t natural_to_frequency(std::size_t node);
PacketGrid reorder(const PacketGrid& grid, Ordering target);

// Centered frames (reflect-padded by fft_size/2), ceil(len/hop) of them.
// Keeps the lowest fft_size/2 one-sided bins, dropping the Nyquist bin.
PacketGrid stft(std::span<const double> signal, Window window,
                std::size_t fft_size, std::size_t hop,
                double sample_rate = 22050.0);

// |DFT| for bins 0..n/2.
std::vector<double> rfft_mag(std::span<const double> signal);

}  // namespace wavefprint

#endif  // WAVEFPRINT_TRANSFORMS_H_
