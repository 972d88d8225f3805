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

#ifndef WAVEFPRINT_PARALLEL_H_
#define WAVEFPRINT_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace wavefprint {

// Process-wide worker cap; 1 (the default) runs everything inline.
void set_max_threads(unsigned n);
unsigned max_threads();

// Calls fn(i) for i in [0, n) across up to max_threads() workers. Results
// must be written to per-index slots so the outcome does not depend on
// scheduling. The first exception thrown by any call is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace wavefprint

#endif  // WAVEFPRINT_PARALLEL_H_
