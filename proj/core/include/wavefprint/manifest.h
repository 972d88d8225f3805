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

#ifndef WAVEFPRINT_MANIFEST_H_
#define WAVEFPRINT_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavefprint/audio.h"

namespace wavefprint {

enum class Split { train, val, test };

std::string_view to_string(Split split);
Split parse_split(std::string_view text);

struct ManifestEntry {
  std::string path;
  Label label = Label::real;
  std::string generator;  // empty for real clips
  Split split = Split::train;
  std::size_t segment_index = 0;
};

struct SplitRatios {
  double train = 0.7;
  double val = 0.1;
  double test = 0.2;
};

struct ManifestOptions {
  std::filesystem::path real_dir;
  std::map<std::string, std::filesystem::path> fake_dirs;  // generator -> dir
  SplitRatios ratios;
  std::uint64_t seed = 0;
  // When set, the train split keeps only real clips and this generator.
  std::optional<std::string> train_generator;
  double sample_rate = kSampleRate;
  double segment_seconds = 1.0;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::uint64_t seed = 0;

  std::size_t count(Label label, Split split) const;
  std::vector<std::size_t> indices(Split split) const;
  std::vector<std::string> generators() const;  // sorted, fake only
};

// Recording identity shared by a real file and fakes synthesized from it:
// the file stem with a trailing "_gen" removed.
std::string recording_key(std::string_view path);

// A row describing one decodable file, for building manifests without disk
// access.
struct SourceFile {
  std::string path;
  Label label = Label::real;
  std::string generator;
  std::size_t segments = 0;
};

// Scans real_dir and each fake dir recursively for .wav files, counts the
// one-second segments each yields after resampling, and assigns splits.
Manifest build_manifest(const ManifestOptions& options);

// Split assignment and balancing over an explicit file list.
Manifest build_manifest(std::vector<SourceFile> files, const ManifestOptions& options);

// CSV with header path,label,generator,split,segment_index.
void write_manifest_csv(std::ostream& out, const Manifest& manifest);
void write_manifest_csv(const std::filesystem::path& path, const Manifest& manifest);
Manifest read_manifest_csv(std::istream& in);
Manifest read_manifest_csv(const std::filesystem::path& path);

struct ManifestCheck {
  bool leakage_free = true;     // no source path in two splits
  bool balanced = true;         // real == fake count in every split
  std::vector<std::string> problems;
  bool ok() const { return leakage_free && balanced; }
};

ManifestCheck check_manifest(const Manifest& manifest);

// Entry indices of one split, shuffled deterministically by (seed, epoch) and
// cut into batches; the last batch may be short.
std::vector<std::vector<std::size_t>> batches(const Manifest& manifest, Split split,
                                              std::size_t batch_size, std::uint64_t seed,
                                              std::uint64_t epoch);

// Same, over an arbitrary index range [0, n).
std::vector<std::vector<std::size_t>> batch_indices(std::size_t n, std::size_t batch_size,
                                                    std::uint64_t seed, std::uint64_t epoch);

// Decodes manifest entries to one-second 22050 Hz clips. Keeps the most
// recently decoded file so consecutive segments of one file decode once.
class ClipLoader {
 public:
  explicit ClipLoader(double sample_rate = kSampleRate, double segment_seconds = 1.0)
      : sample_rate_(sample_rate), segment_seconds_(segment_seconds) {}

  AudioClip load(const ManifestEntry& entry);

 private:
  double sample_rate_;
  double segment_seconds_;
  std::string cached_path_;
  AudioClip cached_;
};

}  // namespace wavefprint

#endif  // WAVEFPRINT_MANIFEST_H_
