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

#ifndef WAVEFPRINT_CLI_COMMON_H_
#define WAVEFPRINT_CLI_COMMON_H_

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wavefprint/model.h"
#include "wavefprint/preprocess.h"

namespace wavefprint::cli {

namespace fs = std::filesystem;

struct Context {
  std::ostream& out;
  std::ostream& err;
  const CLI::App& cmd;
};

using Runner = std::function<void(Context&)>;

struct Subcommand {
  CLI::App* app = nullptr;
  Runner run;
};

Subcommand add_synth(CLI::App& root);
Subcommand add_prepare(CLI::App& root);
Subcommand add_fingerprint(CLI::App& root);
Subcommand add_sonify(CLI::App& root);
Subcommand add_train(CLI::App& root);
Subcommand add_eval(CLI::App& root);
Subcommand add_attribute(CLI::App& root);
Subcommand add_report(CLI::App& root);
Subcommand add_selftest(CLI::App& root);

// Writes provenance.json and config.resolved into dir.
void record_run(const Context& ctx, const fs::path& dir, const std::vector<fs::path>& inputs,
                const std::vector<fs::path>& outputs);

// Feature and architecture flags shared by train-like commands.
struct FeatureFlags {
  std::string transform = "wpt";
  std::string wavelet = "sym5";
  int level = 8;
  bool signed_channel = false;
  std::size_t fft_size = 512;
  std::size_t hop = 220;

  void add_to(CLI::App* app);
  FeatureConfig resolve() const;
};

struct ModelFlags {
  bool no_maxpool = false;
  bool no_dropout = false;
  bool no_dilation = false;
  double dropout = 0.5;

  void add_to(CLI::App* app);
  DcnnConfig resolve(const FeatureConfig& features) const;
};

std::string format_fixed(double v, int digits);

}  // namespace wavefprint::cli

#endif  // WAVEFPRINT_CLI_COMMON_H_
