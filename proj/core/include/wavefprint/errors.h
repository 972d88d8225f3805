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

#ifndef WAVEFPRINT_ERRORS_H_
#define WAVEFPRINT_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace wavefprint {

enum class Errc {
  unknown_wavelet,
  invalid_level,
  inversion_mismatch,
  invalid_config,
  shape,
  unsupported_combination,
  malformed_header,
  unsupported_codec,
  empty_data,
  io,
  empty_class,
  degenerate_batch,
  undefined_metric,
  numeric,
};

std::string_view to_string(Errc code);

// All library failures are reported through this type. The code is stable
// and is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace wavefprint

#endif  // WAVEFPRINT_ERRORS_H_
