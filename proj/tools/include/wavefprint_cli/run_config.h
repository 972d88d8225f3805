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

#ifndef WAVEFPRINT_CLI_RUN_CONFIG_H_
#define WAVEFPRINT_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace CLI {
class App;
}

namespace wavefprint::cli {

// Thrown for anything the user typed wrong; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Plain-text "key = value" file. Blank lines and lines starting with '#'
// are ignored; repeated keys are an error.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);
std::map<std::string, std::string> parse_config(std::string_view text, std::string_view origin);

// Fills every option of `cmd` that was not given on the command line from
// `values`. Keys that name no option of `cmd` are rejected.
void apply_config(CLI::App& cmd, const std::map<std::string, std::string>& values);

// Fully resolved settings of `cmd`, one entry per option, defaults included.
std::map<std::string, std::string> resolved_config(const CLI::App& cmd);
nlohmann::json to_json(const std::map<std::string, std::string>& config);
// Written so it can be passed back through --config.
void write_config_file(const std::filesystem::path& path, const std::map<std::string, std::string>& config);

// "3", "0..4" (inclusive), "1,5,7" or a mix such as "0..2,9".
std::vector<std::uint64_t> parse_seeds(std::string_view text);

}  // namespace wavefprint::cli

#endif  // WAVEFPRINT_CLI_RUN_CONFIG_H_
