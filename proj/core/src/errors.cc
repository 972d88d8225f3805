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

#include "wavefprint/errors.h"

namespace wavefprint {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::unknown_wavelet: return "unknown wavelet";
    case Errc::invalid_level: return "invalid level";
    case Errc::inversion_mismatch: return "inversion mismatch";
    case Errc::invalid_config: return "invalid config";
    case Errc::shape: return "shape error";
    case Errc::unsupported_combination: return "unsupported combination";
    case Errc::malformed_header: return "malformed header";
    case Errc::unsupported_codec: return "unsupported codec";
    case Errc::empty_data: return "empty data";
    case Errc::io: return "i/o error";
    case Errc::empty_class: return "empty class";
    case Errc::degenerate_batch: return "degenerate batch";
    case Errc::undefined_metric: return "undefined metric";
    case Errc::numeric: return "numeric failure";
  }
  return "error";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace wavefprint
