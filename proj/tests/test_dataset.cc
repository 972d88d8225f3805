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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "wavefprint/audio.h"
#include "wavefprint/errors.h"
#include "wavefprint/manifest.h"
#include "wavefprint/rng.h"
#include "wavefprint/transforms.h"
#include "wavefprint/wav.h"

namespace wavefprint {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("wavefprint_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// Little-endian RIFF/WAVE writer independent of the library's encoder.
struct WavBytes {
  std::string bytes;
  void u16(std::uint16_t v) { bytes.append({static_cast<char>(v & 0xFF), static_cast<char>(v >> 8)}); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void tag(const char* t) { bytes.append(t, 4); }
};

std::string wav_file(std::uint16_t format, std::uint16_t channels, std::uint32_t rate, std::uint16_t bits,
                     const std::string& payload) {
  WavBytes w;
  w.tag("RIFF");
  w.u32(static_cast<std::uint32_t>(36 + payload.size()));
  w.tag("WAVE");
  w.tag("fmt ");
  w.u32(16);
  w.u16(format);
  w.u16(channels);
  w.u32(rate);
  w.u32(rate * channels * bits / 8);
  w.u16(static_cast<std::uint16_t>(channels * bits / 8));
  w.u16(bits);
  w.tag("data");
  w.u32(static_cast<std::uint32_t>(payload.size()));
  w.bytes += payload;
  return w.bytes;
}

std::string pcm16(const std::vector<std::int16_t>& v) {
  WavBytes w;
  for (auto s : v) w.u16(static_cast<std::uint16_t>(s));
  return w.bytes;
}

void write_bytes(const fs::path& p, const std::string& bytes) {
  std::ofstream(p, std::ios::binary) << bytes;
}

TEST(Wav, Pcm16ScalingConvention) {
  TempDir dir;
  const auto p = dir.path() / "a.wav";
  write_bytes(p, wav_file(1, 1, 22050, 16, pcm16({0, 32767, -32768})));
  const AudioClip c = read_wav(p);
  ASSERT_EQ(c.samples.size(), 3u);
  EXPECT_EQ(c.samples[0], 0.0);
  EXPECT_EQ(c.samples[1], 32767.0 / 32768.0);
  EXPECT_EQ(c.samples[2], -1.0);
  EXPECT_EQ(c.sample_rate, 22050.0);
}

TEST(Wav, StereoAveragedToMono) {
  TempDir dir;
  const auto p = dir.path() / "s.wav";
  write_bytes(p, wav_file(1, 2, 22050, 16, pcm16({1000, -1000, -7, 7, 32000, -32000})));
  const AudioClip c = read_wav(p);
  ASSERT_EQ(c.samples.size(), 3u);
  for (double v : c.samples) EXPECT_EQ(v, 0.0);
}

TEST(Wav, Float32Decoded) {
  TempDir dir;
  const auto p = dir.path() / "f.wav";
  const float vals[3] = {0.25f, -0.5f, 1.0f};
  std::string payload(reinterpret_cast<const char*>(vals), sizeof vals);
  write_bytes(p, wav_file(3, 1, 24000, 32, payload));
  const AudioClip c = read_wav(p);
  ASSERT_EQ(c.samples.size(), 3u);
  EXPECT_EQ(c.samples[0], 0.25);
  EXPECT_EQ(c.samples[1], -0.5);
  EXPECT_EQ(c.samples[2], 1.0);
  EXPECT_EQ(c.sample_rate, 24000.0);
  const WavInfo info = read_wav_info(p);
  EXPECT_EQ(info.format, SampleFormat::float32);
  EXPECT_EQ(info.frames, 3u);
}

Errc read_error(const fs::path& p) {
  try {
    read_wav(p);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::numeric;  // sentinel: no error
}

TEST(Wav, DistinctErrors) {
  TempDir dir;
  const std::string good = wav_file(1, 1, 22050, 16, pcm16({1, 2, 3, 4}));
  write_bytes(dir.path() / "trunc.wav", good.substr(0, 20));
  EXPECT_EQ(read_error(dir.path() / "trunc.wav"), Errc::malformed_header);
  std::string bad_magic = good;
  bad_magic[0] = 'X';
  write_bytes(dir.path() / "magic.wav", bad_magic);
  EXPECT_EQ(read_error(dir.path() / "magic.wav"), Errc::malformed_header);
  write_bytes(dir.path() / "adpcm.wav", wav_file(2, 1, 22050, 4, std::string(8, '\0')));
  EXPECT_EQ(read_error(dir.path() / "adpcm.wav"), Errc::unsupported_codec);
  write_bytes(dir.path() / "pcm24.wav", wav_file(1, 1, 22050, 24, std::string(9, '\0')));
  EXPECT_EQ(read_error(dir.path() / "pcm24.wav"), Errc::unsupported_codec);
  write_bytes(dir.path() / "empty.wav", wav_file(1, 1, 22050, 16, ""));
  EXPECT_EQ(read_error(dir.path() / "empty.wav"), Errc::empty_data);
  EXPECT_EQ(read_error(dir.path() / "missing.wav"), Errc::io);
}

TEST(Wav, WriteReadRoundTrip) {
  TempDir dir;
  Rng rng(1);
  const auto x = oracle::random_vector(rng, 1000, -0.9, 0.9);
  write_wav(dir.path() / "r.wav", x, 22050);
  const AudioClip c = read_wav(dir.path() / "r.wav");
  ASSERT_EQ(c.samples.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(c.samples[i], x[i], 0.5 / 32768.0 + 1e-15);
}

TEST(Resample, IdentityIsBitExact) {
  Rng rng(2);
  AudioClip c;
  c.samples = oracle::random_vector(rng, 777);
  c.sample_rate = 22050;
  const AudioClip r = resample(c, 22050);
  EXPECT_EQ(r.samples, c.samples);
}

TEST(Resample, LengthRatio) {
  AudioClip c;
  c.samples.assign(24000, 0.0);
  c.sample_rate = 24000;
  EXPECT_EQ(resample(c, 22050).samples.size(), 22050u);
  EXPECT_EQ(resampled_length(1000, 24000, 22050), 918u);  // floor(1000 * 147 / 160)
  EXPECT_THROW(resample(c, 0), Error);
  EXPECT_THROW(resample(c, -5), Error);
}

// Least-squares amplitude of a sinusoid at a known frequency.
double fitted_amplitude(const std::vector<double>& x, double freq, double rate, std::size_t from, std::size_t to) {
  double cc = 0, ss = 0, cs = 0, xc = 0, xs = 0;
  for (std::size_t t = from; t < to; ++t) {
    const double w = 2 * std::numbers::pi * freq * static_cast<double>(t) / rate;
    const double c = std::cos(w), s = std::sin(w);
    cc += c * c, ss += s * s, cs += c * s, xc += x[t] * c, xs += x[t] * s;
  }
  const double det = cc * ss - cs * cs;
  const double a = (xc * ss - xs * cs) / det, b = (xs * cc - xc * cs) / det;
  return std::hypot(a, b);
}

std::vector<double> tone(double freq, double rate, std::size_t n, double amp = 0.5) {
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) x[t] = amp * std::sin(2 * std::numbers::pi * freq * static_cast<double>(t) / rate);
  return x;
}

TEST(Resample, KiloHertzSinePeakAndPassbandRipple) {
  AudioClip c;
  c.sample_rate = 24000;
  c.samples = tone(1000, 24000, 24000);
  const AudioClip r = resample(c, 22050);
  const auto mag = rfft_mag(r.samples);  // 22050 samples: 1 Hz bins
  const auto peak = std::max_element(mag.begin(), mag.end()) - mag.begin();
  EXPECT_NEAR(static_cast<double>(peak), 1000.0, 1.0);

  double worst_db = 0;
  for (double f : {50.0, 1000.0, 3000.0, 6000.0, 9000.0, 10000.0}) {
    c.samples = tone(f, 24000, 24000);
    const AudioClip out = resample(c, 22050);
    const double amp = fitted_amplitude(out.samples, f, 22050, 2000, 20000);
    worst_db = std::max(worst_db, std::abs(20 * std::log10(amp / 0.5)));
  }
  EXPECT_LT(worst_db, 0.1);
}

TEST(Segment, Counts) {
  AudioClip c;
  c.samples.assign(66150, 0.1);
  EXPECT_EQ(segment(c).size(), 3u);
  c.samples.assign(22049, 0.1);
  EXPECT_EQ(segment(c).size(), 0u);
  c.samples.resize(50000);
  for (std::size_t i = 0; i < c.samples.size(); ++i) c.samples[i] = static_cast<double>(i);
  const auto segs = segment(c);
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[0].samples.front(), 0.0);
  EXPECT_EQ(segs[0].samples.size(), 22050u);
  EXPECT_EQ(segs[1].samples.front(), 22050.0);
  EXPECT_EQ(segs[1].samples.back(), 44099.0);
}

std::vector<SourceFile> paired_sources(std::size_t n, const std::vector<std::string>& gens, std::size_t segs = 1) {
  std::vector<SourceFile> files;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "clip_" + std::to_string(1000 + i);
    files.push_back({"real/" + id + ".wav", Label::real, "", segs});
    for (const auto& g : gens) files.push_back({"fake/" + g + "/" + id + "_gen.wav", Label::fake, g, segs});
  }
  return files;
}

TEST(Manifest, RatioArithmetic) {
  const Manifest m = build_manifest(paired_sources(100, {"melgan"}), ManifestOptions{});
  for (Label l : {Label::real, Label::fake}) {
    EXPECT_EQ(m.count(l, Split::train), 70u);
    EXPECT_EQ(m.count(l, Split::val), 10u);
    EXPECT_EQ(m.count(l, Split::test), 20u);
  }
  EXPECT_TRUE(check_manifest(m).ok());
}

TEST(Manifest, DeterministicBytes) {
  ManifestOptions opt;
  opt.seed = 3;
  std::ostringstream a, b;
  write_manifest_csv(a, build_manifest(paired_sources(100, {"melgan", "wavegrad"}), opt));
  write_manifest_csv(b, build_manifest(paired_sources(100, {"melgan", "wavegrad"}), opt));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "path,label,generator,split,segment_index");
}

TEST(Manifest, CsvRoundTrip) {
  const Manifest m = build_manifest(paired_sources(30, {"a", "b"}, 2), ManifestOptions{});
  std::stringstream s;
  write_manifest_csv(s, m);
  const Manifest r = read_manifest_csv(s);
  ASSERT_EQ(r.entries.size(), m.entries.size());
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    EXPECT_EQ(r.entries[i].path, m.entries[i].path);
    EXPECT_EQ(r.entries[i].label, m.entries[i].label);
    EXPECT_EQ(r.entries[i].generator, m.entries[i].generator);
    EXPECT_EQ(r.entries[i].split, m.entries[i].split);
    EXPECT_EQ(r.entries[i].segment_index, m.entries[i].segment_index);
  }
  std::istringstream bad("path,label\nx,real\n");
  EXPECT_THROW(read_manifest_csv(bad), Error);
}

TEST(Manifest, TrainGeneratorFilter) {
  ManifestOptions opt;
  opt.train_generator = "fbmelgan";
  const std::vector<std::string> gens{"fbmelgan", "hifigan", "melgan", "waveglow"};
  const Manifest m = build_manifest(paired_sources(200, gens), opt);
  std::set<std::string> train_gens, test_gens;
  for (const auto& e : m.entries) {
    if (e.label != Label::fake) continue;
    (e.split == Split::train ? train_gens : test_gens).insert(e.generator);
  }
  EXPECT_EQ(train_gens, std::set<std::string>{"fbmelgan"});
  for (const auto& g : gens) EXPECT_TRUE(test_gens.count(g)) << g;
  std::set<std::string> test_only;
  for (const auto& e : m.entries)
    if (e.label == Label::fake && e.split == Split::test) test_only.insert(e.generator);
  EXPECT_EQ(test_only.size(), gens.size());
  EXPECT_TRUE(check_manifest(m).ok());

  opt.train_generator = "nonexistent";
  try {
    build_manifest(paired_sources(10, gens), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_class);
  }
}

TEST(Manifest, EmptyClassThrows) {
  std::vector<SourceFile> only_real;
  for (int i = 0; i < 10; ++i) only_real.push_back({"real/r" + std::to_string(i) + ".wav", Label::real, "", 1});
  EXPECT_THROW(build_manifest(only_real, ManifestOptions{}), Error);
}

TEST(Manifest, RecordingKey) {
  EXPECT_EQ(recording_key("fake/melgan/LJ001-0001_gen.wav"), "LJ001-0001");
  EXPECT_EQ(recording_key("real/LJ001-0001.wav"), "LJ001-0001");
  EXPECT_EQ(recording_key("x/_gen.wav"), "_gen");
}

TEST(Manifest, BuildFromDirectories) {
  TempDir dir;
  fs::create_directories(dir.path() / "real");
  fs::create_directories(dir.path() / "fake" / "g1");
  for (int i = 0; i < 10; ++i) {
    const std::string id = "c" + std::to_string(i);
    write_wav(dir.path() / "real" / (id + ".wav"), std::vector<double>(22050 * 2 + 10, 0.01), 22050);
    write_wav(dir.path() / "fake" / "g1" / (id + "_gen.wav"), std::vector<double>(22050 * 2 + 10, 0.02), 22050);
  }
  ManifestOptions opt;
  opt.real_dir = dir.path() / "real";
  opt.fake_dirs["g1"] = dir.path() / "fake" / "g1";
  const Manifest m = build_manifest(opt);
  EXPECT_EQ(m.entries.size(), 40u);  // two segments per file
  EXPECT_TRUE(check_manifest(m).ok());
  ClipLoader loader;
  for (const auto& e : m.entries) {
    const AudioClip c = loader.load(e);
    ASSERT_EQ(c.samples.size(), 22050u);
    EXPECT_EQ(c.sample_rate, 22050.0);
    EXPECT_EQ(c.label, e.label);
  }
}

TEST(Properties, ManifestsLeakageFreeAndBalanced) {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<SourceFile> files;
    const std::size_t n_gens = 1 + rng.below(4);
    const std::size_t n_real = 5 + rng.below(60);
    for (std::size_t i = 0; i < n_real; ++i)
      files.push_back({"real/r" + std::to_string(i) + ".wav", Label::real, "", 1 + rng.below(4)});
    for (std::size_t g = 0; g < n_gens; ++g) {
      const std::size_t n_fake = 5 + rng.below(60);
      for (std::size_t i = 0; i < n_fake; ++i)
        files.push_back({"fake/g" + std::to_string(g) + "/r" + std::to_string(i) + "_gen.wav", Label::fake,
                         "g" + std::to_string(g), 1 + rng.below(4)});
    }
    ManifestOptions opt;
    opt.seed = rng.next();
    if (trial % 3 == 0) opt.train_generator = "g0";
    const Manifest m = build_manifest(files, opt);
    const ManifestCheck check = check_manifest(m);
    EXPECT_TRUE(check.ok()) << trial;
    // Independent leakage check: each source path maps to one split.
    std::map<std::string, Split> seen;
    for (const auto& e : m.entries) {
      auto [it, fresh] = seen.emplace(e.path, e.split);
      ASSERT_TRUE(fresh || it->second == e.split) << e.path;
    }
    for (Split s : {Split::train, Split::val, Split::test})
      EXPECT_EQ(m.count(Label::real, s), m.count(Label::fake, s)) << trial;
  }
}

TEST(Properties, CheckManifestFlagsProblems) {
  Manifest m = build_manifest(paired_sources(20, {"g"}, 2), ManifestOptions{});
  Manifest leaky = m;
  for (auto& e : leaky.entries) {
    if (e.segment_index == 1 && e.label == Label::real) {
      e.split = e.split == Split::train ? Split::test : Split::train;
      break;
    }
  }
  EXPECT_FALSE(check_manifest(leaky).leakage_free);
  Manifest unbalanced = m;
  unbalanced.entries.pop_back();
  EXPECT_FALSE(check_manifest(unbalanced).balanced);
}

TEST(Batches, SizesAndDeterminism) {
  const auto b = batch_indices(300, 128, 0, 0);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0].size(), 128u);
  EXPECT_EQ(b[1].size(), 128u);
  EXPECT_EQ(b[2].size(), 44u);
  std::set<std::size_t> all;
  for (const auto& v : b) all.insert(v.begin(), v.end());
  EXPECT_EQ(all.size(), 300u);
  EXPECT_EQ(batch_indices(300, 128, 0, 0), b);
  EXPECT_NE(batch_indices(300, 128, 0, 1), b);
  EXPECT_NE(batch_indices(300, 128, 1, 0), b);
}

TEST(Batches, ManifestSplitIndices) {
  const Manifest m = build_manifest(paired_sources(150, {"g"}), ManifestOptions{});
  const auto b = batches(m, Split::train, 128, 5, 2);
  std::size_t total = 0;
  for (const auto& v : b)
    for (std::size_t i : v) {
      EXPECT_EQ(m.entries[i].split, Split::train);
      ++total;
    }
  EXPECT_EQ(total, m.indices(Split::train).size());
  EXPECT_EQ(batches(m, Split::train, 128, 5, 2), b);
}

}  // namespace
}  // namespace wavefprint
