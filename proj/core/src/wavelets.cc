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

#include "wavefprint/wavelets.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "filter_taps.h"
#include "wavefprint/errors.h"

namespace wavefprint {

namespace {

std::string_view canonical_name(std::string_view name) {
  if (name == "sym2") return "db2";
  if (name == "sym3") return "db3";
  return name;
}

}  // namespace

FilterBank get_filter_bank(std::string_view name) {
  const std::string_view lookup = canonical_name(name);
  const auto it = std::find_if(
      detail::kTapTables.begin(), detail::kTapTables.end(),
      [&](const detail::TapTable& t) { return t.name == lookup; });
  if (it == detail::kTapTables.end()) {
    throw Error(Errc::unknown_wavelet, "'" + std::string(name) + "'");
  }

  FilterBank fb;
  fb.name = std::string(name);
  fb.dec_lo.assign(it->taps.begin(), it->taps.end());
  const std::size_t n = fb.dec_lo.size();
  fb.dec_hi.resize(n);
  fb.rec_lo.resize(n);
  fb.rec_hi.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    fb.dec_hi[k] = sign * fb.dec_lo[n - 1 - k];
  }
  for (std::size_t k = 0; k < n; ++k) {
    fb.rec_lo[k] = fb.dec_lo[n - 1 - k];
    fb.rec_hi[k] = fb.dec_hi[n - 1 - k];
  }
  return fb;
}

std::vector<std::string> supported_wavelets() {
  std::vector<std::string> names;
  names.reserve(detail::kTapTables.size());
  for (const auto& t : detail::kTapTables) names.emplace_back(t.name);
  return names;
}

double AdmissibilityReport::worst() const {
  return std::max({normalization, orthonormality, shift_orthogonality, qmf});
}

AdmissibilityReport verify_admissibility(const FilterBank& fb) {
  AdmissibilityReport r;
  const std::size_t n = fb.dec_lo.size();
  if (n < 2 || n % 2 != 0 || fb.dec_hi.size() != n || fb.rec_lo.size() != n ||
      fb.rec_hi.size() != n) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    r.structural = false;
    r.normalization = r.orthonormality = r.shift_orthogonality = r.qmf = inf;
    return r;
  }

  double lo_sum = 0, hi_sum = 0, energy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    lo_sum += fb.dec_lo[k];
    hi_sum += fb.dec_hi[k];
    energy += fb.dec_lo[k] * fb.dec_lo[k];
  }
  r.normalization = std::max(std::abs(lo_sum - std::numbers::sqrt2),
                             std::abs(hi_sum));
  r.orthonormality = std::abs(energy - 1.0);

  for (std::size_t m = 1; 2 * m < n; ++m) {
    double acc = 0;
    for (std::size_t k = 0; k + 2 * m < n; ++k) {
      acc += fb.dec_lo[k] * fb.dec_lo[k + 2 * m];
    }
    r.shift_orthogonality = std::max(r.shift_orthogonality, std::abs(acc));
  }

  for (std::size_t k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    r.qmf = std::max(r.qmf, std::abs(fb.dec_hi[k] - sign * fb.dec_lo[n - 1 - k]));
    r.qmf = std::max(r.qmf, std::abs(fb.rec_lo[k] - fb.dec_lo[n - 1 - k]));
    r.qmf = std::max(r.qmf, std::abs(fb.rec_hi[k] - fb.dec_hi[n - 1 - k]));
  }

  r.passed = r.worst() < AdmissibilityReport::kTolerance;
  return r;
}

}  // namespace wavefprint
