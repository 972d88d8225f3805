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

#ifndef WAVEFPRINT_SRC_FILTER_TAPS_H_
#define WAVEFPRINT_SRC_FILTER_TAPS_H_

#include <array>
#include <span>
#include <string_view>

namespace wavefprint::detail {

// Analysis lowpass taps in scaling-filter order (sum = sqrt(2)).
struct TapTable {
  std::string_view name;
  std::span<const double> taps;
};

extern const std::array<TapTable, 28> kTapTables;

}  // namespace wavefprint::detail

#endif  // WAVEFPRINT_SRC_FILTER_TAPS_H_
