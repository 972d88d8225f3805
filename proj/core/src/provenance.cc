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

#include "wavefprint/provenance.h"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <memory>

#include "wavefprint/errors.h"

#ifndef WAVEFPRINT_VERSION
#define WAVEFPRINT_VERSION "0.0.0"
#endif

namespace wavefprint {

std::string_view version() { return WAVEFPRINT_VERSION; }

std::string sha1_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha1(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error(Errc::io, "SHA-1 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string blob_hash(std::string_view contents) {
  std::string data = "blob " + std::to_string(contents.size());
  data.push_back('\0');
  data.append(contents);
  return sha1_hex(data);
}

std::string file_blob_hash(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  const std::string contents((std::istreambuf_iterator<char>(in)), {});
  return blob_hash(contents);
}

nlohmann::json provenance_record(std::string_view command, const nlohmann::json& config,
                                 const std::vector<std::filesystem::path>& inputs,
                                 const std::vector<std::filesystem::path>& outputs) {
  nlohmann::json in = nlohmann::json::array();
  for (const auto& p : inputs) in.push_back({{"path", p.string()}, {"blob", file_blob_hash(p)}});
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : outputs) {
    nlohmann::json entry{{"path", p.string()}};
    if (std::filesystem::is_regular_file(p)) entry["blob"] = file_blob_hash(p);
    out.push_back(entry);
  }
  return {{"tool", "wavefprint"}, {"version", std::string(version())}, {"command", std::string(command)},
          {"config", config},     {"inputs", in},                      {"outputs", out}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_header, path.string() + ": " + e.what());
  }
}

}  // namespace wavefprint
