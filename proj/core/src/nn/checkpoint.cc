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

#include "wavefprint/nn/checkpoint.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>

#include "wavefprint/errors.h"

namespace wavefprint::nn {

namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes little-endian");

constexpr char kMagic[4] = {'W', 'F', 'P', '1'};

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::ifstream& in, const std::string& where) {
  T v;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    throw Error(Errc::malformed_header, "truncated checkpoint " + where);
  }
  return v;
}

std::filesystem::path sidecar(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".json");
}

}  // namespace

std::vector<StoredTensor> snapshot(const std::vector<NamedTensor>& state) {
  std::vector<StoredTensor> out;
  for (const auto& t : state) {
    out.push_back({t.name, t.tensor.shape(), {t.tensor.data().begin(), t.tensor.data().end()}});
  }
  return out;
}

void save_checkpoint(const std::filesystem::path& path, const std::vector<NamedTensor>& state,
                     const nlohmann::json& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out.write(kMagic, 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(state.size()));
  for (const auto& t : state) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.name.size()));
    out.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.tensor.rank()));
    for (std::size_t d : t.tensor.shape()) put<std::uint64_t>(out, d);
    out.write(reinterpret_cast<const char*>(t.tensor.data().data()),
              static_cast<std::streamsize>(t.tensor.numel() * sizeof(double)));
  }
  if (!out) throw Error(Errc::io, "short write to " + path.string());
  std::ofstream js(sidecar(path));
  if (!js) throw Error(Errc::io, "cannot write " + sidecar(path).string());
  js << meta.dump(2) << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  const std::string where = path.string();
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw Error(Errc::malformed_header, where + " is not a WFP1 checkpoint");
  }
  Checkpoint ckpt;
  const auto count = get<std::uint32_t>(in, where);
  for (std::uint32_t i = 0; i < count; ++i) {
    StoredTensor t;
    const auto len = get<std::uint32_t>(in, where);
    if (len > 4096) throw Error(Errc::malformed_header, where + ": tensor name too long");
    t.name.resize(len);
    if (!in.read(t.name.data(), len)) throw Error(Errc::malformed_header, "truncated checkpoint " + where);
    const auto rank = get<std::uint32_t>(in, where);
    if (rank > 8) throw Error(Errc::malformed_header, where + ": tensor rank too large");
    for (std::uint32_t r = 0; r < rank; ++r) t.shape.push_back(get<std::uint64_t>(in, where));
    const std::size_t n = numel(t.shape);
    if (n > (std::size_t{1} << 32)) throw Error(Errc::malformed_header, where + ": tensor too large");
    t.values.resize(n);
    if (!in.read(reinterpret_cast<char*>(t.values.data()), static_cast<std::streamsize>(n * sizeof(double)))) {
      throw Error(Errc::malformed_header, "truncated checkpoint " + where);
    }
    ckpt.tensors.push_back(std::move(t));
  }
  std::ifstream js(sidecar(path));
  if (js) {
    try {
      ckpt.meta = nlohmann::json::parse(js);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::malformed_header, sidecar(path).string() + ": " + e.what());
    }
  }
  return ckpt;
}

void apply_checkpoint(const Checkpoint& ckpt, const std::vector<NamedTensor>& state) {
  std::map<std::string, const StoredTensor*> by_name;
  for (const auto& t : ckpt.tensors) by_name[t.name] = &t;
  for (const auto& t : state) {
    auto it = by_name.find(t.name);
    if (it == by_name.end()) throw Error(Errc::shape, "checkpoint lacks tensor " + t.name);
    if (it->second->shape != t.tensor.shape()) {
      throw Error(Errc::shape, "checkpoint tensor " + t.name + " has shape " + to_string(it->second->shape) +
                                   ", model expects " + to_string(t.tensor.shape()));
    }
    Tensor dst = t.tensor;
    dst.values() = it->second->values;
  }
}

}  // namespace wavefprint::nn
