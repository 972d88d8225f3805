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

#ifndef WAVEFPRINT_WAVELETS_H_
#define WAVEFPRINT_WAVELETS_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wavefprint {

// Orthogonal two-channel filter bank. dec_* are the analysis filters, rec_*
// the synthesis filters. All four have the same even length.
struct FilterBank {
  std::string name;
  std::vector<double> dec_lo;
  std::vector<double> dec_hi;
  std::vector<double> rec_lo;
  std::vector<double> rec_hi;

  std::size_t length() const { return dec_lo.size(); }
};

// haar, db2..db10, sym2..sym10, coif2..coif10. sym2/sym3 share the db2/db3
// taps. Throws Error(Errc::unknown_wavelet) for anything else.
FilterBank get_filter_bank(std::string_view name);

// The 28 supported identifiers, in table order.
std::vector<std::string> supported_wavelets();

struct AdmissibilityReport {
  static constexpr double kTolerance = 1e-8;

  double normalization = 0;        // |sum dec_lo - sqrt2| and |sum dec_hi|
  double orthonormality = 0;       // |sum dec_lo^2 - 1|
  double shift_orthogonality = 0;  // max_{m != 0} |sum_k dec_lo[k] dec_lo[k+2m]|
  double qmf = 0;                  // highpass flip and synthesis reversal
  bool structural = true;          // equal, even lengths >= 2
  bool passed = false;

  double worst() const;
};

AdmissibilityReport verify_admissibility(const FilterBank& fb);

}  // namespace wavefprint

#endif  // WAVEFPRINT_WAVELETS_H_
