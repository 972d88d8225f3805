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

#include "wavefprint/manifest.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "wavefprint/errors.h"
#include "wavefprint/rng.h"
#include "wavefprint/wav.h"

namespace wavefprint {

namespace {

std::string entry_key(const ManifestEntry& e) {
  return e.path + "#" + std::to_string(e.segment_index);
}

std::vector<std::filesystem::path> wav_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(Errc::io, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> out;
  for (const auto& it : std::filesystem::recursive_directory_iterator(dir)) {
    if (!it.is_regular_file()) continue;
    std::string ext = it.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".wav") out.push_back(it.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<std::string> csv_row(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

std::string_view to_string(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
  }
  return "?";
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::train;
  if (text == "val") return Split::val;
  if (text == "test") return Split::test;
  throw Error(Errc::invalid_config, "unknown split '" + std::string(text) + "'");
}

std::size_t Manifest::count(Label label, Split split) const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [&](const auto& e) {
    return e.label == label && e.split == split;
  }));
}

std::vector<std::size_t> Manifest::indices(Split split) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].split == split) out.push_back(i);
  }
  return out;
}

std::vector<std::string> Manifest::generators() const {
  std::set<std::string> names;
  for (const auto& e : entries) {
    if (e.label == Label::fake) names.insert(e.generator);
  }
  return {names.begin(), names.end()};
}

std::string recording_key(std::string_view path) {
  std::string stem = std::filesystem::path(path).stem().string();
  constexpr std::string_view kSuffix = "_gen";
  if (stem.size() > kSuffix.size() && stem.ends_with(kSuffix)) {
    stem.resize(stem.size() - kSuffix.size());
  }
  return stem;
}

Manifest build_manifest(std::vector<SourceFile> files, const ManifestOptions& options) {
  const SplitRatios& r = options.ratios;
  if (r.train < 0 || r.val < 0 || r.test < 0 || std::abs(r.train + r.val + r.test - 1.0) > 1e-9) {
    throw Error(Errc::invalid_config, "split ratios must be nonnegative and sum to 1");
  }
  const std::uint64_t seed = options.seed;

  // Rank recordings within each (label, generator) group by a seeded hash of
  // the recording key. Paired real/fake groups share keys and therefore cuts.
  std::map<std::pair<Label, std::string>, std::vector<std::string>> group_keys;
  for (const auto& f : files) {
    group_keys[{f.label, f.generator}].push_back(recording_key(f.path));
  }
  std::map<std::pair<Label, std::string>, std::unordered_map<std::string, Split>> assignment;
  for (auto& [group, keys] : group_keys) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<std::pair<std::uint64_t, std::string>> ranked;
    ranked.reserve(keys.size());
    for (const auto& k : keys) ranked.emplace_back(stable_hash(k, seed), k);
    std::sort(ranked.begin(), ranked.end());
    const std::size_t n = ranked.size();
    const auto n_train = std::min(n, static_cast<std::size_t>(std::llround(r.train * n)));
    const auto n_val = std::min(n - n_train, static_cast<std::size_t>(std::llround(r.val * n)));
    auto& map = assignment[group];
    for (std::size_t i = 0; i < n; ++i) {
      map[ranked[i].second] = i < n_train ? Split::train
                              : i < n_train + n_val ? Split::val
                                                    : Split::test;
    }
  }

  if (options.train_generator) {
    const bool present = std::any_of(files.begin(), files.end(), [&](const SourceFile& f) {
      return f.label == Label::fake && f.generator == *options.train_generator;
    });
    if (!present) {
      throw Error(Errc::empty_class, "no files for training generator '" +
                                         *options.train_generator + "'");
    }
  }

  std::sort(files.begin(), files.end(), [](const SourceFile& a, const SourceFile& b) {
    return std::tie(a.path, a.generator) < std::tie(b.path, b.generator);
  });
  Manifest m;
  m.seed = seed;
  for (const auto& f : files) {
    const Split split = assignment[{f.label, f.generator}].at(recording_key(f.path));
    if (split == Split::train && f.label == Label::fake && options.train_generator &&
        f.generator != *options.train_generator) {
      continue;
    }
    for (std::size_t s = 0; s < f.segments; ++s) {
      m.entries.push_back({f.path, f.label, f.generator, split, s});
    }
  }

  // Balance every split by dropping the highest-hash entries of the larger
  // class.
  std::set<std::string> dropped;
  for (Split split : {Split::train, Split::val, Split::test}) {
    const std::size_t n_real = m.count(Label::real, split);
    const std::size_t n_fake = m.count(Label::fake, split);
    if (n_real == n_fake) continue;
    const Label larger = n_real > n_fake ? Label::real : Label::fake;
    std::vector<std::pair<std::uint64_t, std::string>> ranked;
    for (const auto& e : m.entries) {
      if (e.split == split && e.label == larger) {
        const std::string key = entry_key(e);
        ranked.emplace_back(stable_hash(key, seed ^ 0xB0A1ULL), key);
      }
    }
    std::sort(ranked.begin(), ranked.end());
    const std::size_t keep = std::min(n_real, n_fake);
    for (std::size_t i = keep; i < ranked.size(); ++i) dropped.insert(ranked[i].second);
  }
  std::erase_if(m.entries, [&](const ManifestEntry& e) { return dropped.count(entry_key(e)) > 0; });

  if (m.count(Label::real, Split::train) == 0 || m.count(Label::fake, Split::train) == 0) {
    throw Error(Errc::empty_class, "train split has an empty class after filtering");
  }
  return m;
}

Manifest build_manifest(const ManifestOptions& options) {
  const auto window = static_cast<std::size_t>(
      std::llround(options.segment_seconds * options.sample_rate));
  std::vector<SourceFile> files;
  auto add_dir = [&](const std::filesystem::path& dir, Label label, const std::string& gen) {
    const auto paths = wav_files(dir);
    if (paths.empty()) {
      throw Error(Errc::empty_class, "no .wav files under " + dir.string());
    }
    for (const auto& p : paths) {
      const WavInfo info = read_wav_info(p);
      const std::size_t len = resampled_length(info.frames, info.sample_rate, options.sample_rate);
      files.push_back({p.string(), label, gen, len / window});
    }
  };
  add_dir(options.real_dir, Label::real, "");
  if (options.fake_dirs.empty()) throw Error(Errc::empty_class, "no fake directories given");
  for (const auto& [gen, dir] : options.fake_dirs) add_dir(dir, Label::fake, gen);
  return build_manifest(std::move(files), options);
}

void write_manifest_csv(std::ostream& out, const Manifest& manifest) {
  out << "path,label,generator,split,segment_index\n";
  for (const auto& e : manifest.entries) {
    out << csv_field(e.path) << ',' << to_string(e.label) << ',' << csv_field(e.generator) << ','
        << to_string(e.split) << ',' << e.segment_index << '\n';
  }
}

void write_manifest_csv(const std::filesystem::path& path, const Manifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  write_manifest_csv(out, manifest);
}

Manifest read_manifest_csv(std::istream& in) {
  Manifest m;
  std::string line;
  if (!std::getline(in, line) || line != "path,label,generator,split,segment_index") {
    throw Error(Errc::malformed_header, "manifest must start with path,label,generator,split,segment_index");
  }
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto f = csv_row(line);
    if (f.size() != 5) {
      throw Error(Errc::malformed_header, "manifest row " + std::to_string(row) + " has " +
                                              std::to_string(f.size()) + " fields");
    }
    ManifestEntry e;
    e.path = f[0];
    e.label = parse_label(f[1]);
    e.generator = f[2];
    e.split = parse_split(f[3]);
    try {
      e.segment_index = std::stoull(f[4]);
    } catch (const std::exception&) {
      throw Error(Errc::malformed_header, "bad segment index on manifest row " + std::to_string(row));
    }
    m.entries.push_back(std::move(e));
  }
  return m;
}

Manifest read_manifest_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  return read_manifest_csv(in);
}

ManifestCheck check_manifest(const Manifest& manifest) {
  ManifestCheck check;
  std::map<std::string, Split> seen;
  for (const auto& e : manifest.entries) {
    auto [it, inserted] = seen.emplace(e.path, e.split);
    if (!inserted && it->second != e.split) {
      check.leakage_free = false;
      check.problems.push_back(e.path + " appears in " + std::string(to_string(it->second)) +
                               " and " + std::string(to_string(e.split)));
    }
  }
  for (Split split : {Split::train, Split::val, Split::test}) {
    const std::size_t nr = manifest.count(Label::real, split);
    const std::size_t nf = manifest.count(Label::fake, split);
    if (nr != nf) {
      check.balanced = false;
      check.problems.push_back(std::string(to_string(split)) + " has " + std::to_string(nr) +
                               " real and " + std::to_string(nf) + " fake clips");
    }
  }
  return check;
}

std::vector<std::vector<std::size_t>> batch_indices(std::size_t n, std::size_t batch_size,
                                                    std::uint64_t seed, std::uint64_t epoch) {
  if (batch_size == 0) throw Error(Errc::invalid_config, "batch size must be positive");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(mix_seed(seed, epoch));
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < n; start += batch_size) {
    const std::size_t end = std::min(n, start + batch_size);
    out.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return out;
}

std::vector<std::vector<std::size_t>> batches(const Manifest& manifest, Split split,
                                              std::size_t batch_size, std::uint64_t seed,
                                              std::uint64_t epoch) {
  const std::vector<std::size_t> idx = manifest.indices(split);
  auto out = batch_indices(idx.size(), batch_size, seed, epoch);
  for (auto& b : out) {
    for (auto& i : b) i = idx[i];
  }
  return out;
}

AudioClip ClipLoader::load(const ManifestEntry& entry) {
  if (entry.path != cached_path_) {
    AudioClip clip = read_wav(entry.path);
    cached_ = resample(clip, sample_rate_);
    cached_path_ = entry.path;
  }
  const auto window = static_cast<std::size_t>(std::llround(segment_seconds_ * sample_rate_));
  const std::size_t start = entry.segment_index * window;
  if (start + window > cached_.samples.size()) {
    throw Error(Errc::shape, entry.path + " has no segment " + std::to_string(entry.segment_index));
  }
  AudioClip out;
  out.samples.assign(cached_.samples.begin() + static_cast<std::ptrdiff_t>(start),
                     cached_.samples.begin() + static_cast<std::ptrdiff_t>(start + window));
  out.sample_rate = sample_rate_;
  out.source_path = entry.path;
  out.label = entry.label;
  if (entry.label == Label::fake) out.generator = entry.generator;
  return out;
}

}  // namespace wavefprint
