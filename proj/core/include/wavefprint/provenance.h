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

#ifndef WAVEFPRINT_PROVENANCE_H_
#define WAVEFPRINT_PROVENANCE_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace wavefprint {

std::string_view version();

std::string sha1_hex(std::string_view bytes);

// Git-compatible blob id: sha1("blob <size>\0" + contents).
std::string blob_hash(std::string_view contents);
std::string file_blob_hash(const std::filesystem::path& path);

// {"tool", "version", "command", "config", "inputs": [{"path", "blob"}],
//  "outputs": [...]}. Contains no timestamps, so reruns compare equal.
nlohmann::json provenance_record(std::string_view command, const nlohmann::json& config,
                                 const std::vector<std::filesystem::path>& inputs,
                                 const std::vector<std::filesystem::path>& outputs);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace wavefprint

#endif  // WAVEFPRINT_PROVENANCE_H_
