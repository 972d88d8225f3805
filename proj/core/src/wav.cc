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

#include "wavefprint/wav.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "wavefprint/errors.h"

namespace wavefprint {

namespace {

static_assert(std::endian::native == std::endian::little,
              "WAV decoding assumes a little-endian host");

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t u16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }
std::uint32_t u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

struct Parsed {
  WavInfo info;
  std::size_t data_offset = 0;
};

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

// bytes may be a prefix of a file of total_size bytes; chunk bodies other
// than fmt are never touched, so a prefix covering the header suffices.
// Returns nullopt when the prefix ends before the header does.
std::optional<Parsed> parse(const std::vector<unsigned char>& bytes, std::size_t total_size,
                            const std::string& where) {
  auto malformed = [&](const std::string& what) {
    return Error(Errc::malformed_header, where + ": " + what);
  };
  if (bytes.size() < 12 && bytes.size() < total_size) return std::nullopt;
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw malformed("not a RIFF/WAVE file");
  }
  const std::size_t riff_end = std::min<std::size_t>(total_size, 8 + std::size_t{u32(&bytes[4])});
  if (riff_end < 12) throw malformed("RIFF size too small");

  Parsed out;
  bool have_fmt = false;
  bool have_data = false;
  std::size_t data_bytes = 0;
  std::size_t pos = 12;
  while (pos + 8 <= riff_end) {
    if (pos + 8 > bytes.size()) return std::nullopt;
    const unsigned char* chunk = &bytes[pos];
    const std::size_t size = u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > total_size) {
      if (std::memcmp(chunk, "data", 4) == 0 || std::memcmp(chunk, "fmt ", 4) == 0) {
        throw malformed("truncated '" + std::string(reinterpret_cast<const char*>(chunk), 4) +
                        "' chunk");
      }
      break;
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw malformed("fmt chunk shorter than 16 bytes");
      if (body + size > bytes.size()) return std::nullopt;
      const unsigned char* f = &bytes[body];
      std::uint16_t tag = u16(f);
      out.info.channels = u16(f + 2);
      out.info.sample_rate = static_cast<int>(u32(f + 4));
      const std::uint16_t block_align = u16(f + 12);
      out.info.bits_per_sample = u16(f + 14);
      if (tag == kFormatExtensible) {
        if (size < 40) throw malformed("extensible fmt chunk shorter than 40 bytes");
        tag = u16(f + 24);
      }
      if (out.info.channels < 1 || out.info.sample_rate < 1) {
        throw malformed("channel count and sample rate must be positive");
      }
      if (tag == kFormatPcm && out.info.bits_per_sample == 16) {
        out.info.format = SampleFormat::pcm16;
      } else if (tag == kFormatFloat && out.info.bits_per_sample == 32) {
        out.info.format = SampleFormat::float32;
      } else {
        throw Error(Errc::unsupported_codec,
                    where + ": format tag " + std::to_string(tag) + " with " +
                        std::to_string(out.info.bits_per_sample) + " bits per sample");
      }
      if (block_align != out.info.channels * out.info.bits_per_sample / 8) {
        throw malformed("block alignment does not match channels and sample width");
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw malformed("data chunk precedes fmt chunk");
      out.data_offset = body;
      data_bytes = size;
      have_data = true;
      break;
    }
    pos = body + size + (size & 1);
  }
  if (!have_fmt) throw malformed("missing fmt chunk");
  if (!have_data) throw malformed("missing data chunk");
  const std::size_t frame_bytes =
      static_cast<std::size_t>(out.info.channels) * out.info.bits_per_sample / 8;
  out.info.frames = data_bytes / frame_bytes;
  if (out.info.frames == 0) throw Error(Errc::empty_data, where + ": no audio frames");
  return out;
}

}  // namespace

WavInfo read_wav_info(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto total = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  std::vector<unsigned char> head(std::min<std::size_t>(total, 4096));
  in.read(reinterpret_cast<char*>(head.data()), static_cast<std::streamsize>(head.size()));
  if (auto p = parse(head, total, path.string())) return p->info;
  return parse(slurp(path), total, path.string())->info;
}

AudioClip read_wav(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = slurp(path);
  const Parsed p = *parse(bytes, bytes.size(), path.string());
  const WavInfo& info = p.info;
  AudioClip clip;
  clip.sample_rate = info.sample_rate;
  clip.source_path = path.string();
  clip.samples.resize(info.frames);
  const unsigned char* d = bytes.data() + p.data_offset;
  const int ch = info.channels;
  for (std::size_t i = 0; i < info.frames; ++i) {
    double acc = 0;
    for (int c = 0; c < ch; ++c) {
      const std::size_t k = i * static_cast<std::size_t>(ch) + static_cast<std::size_t>(c);
      if (info.format == SampleFormat::pcm16) {
        acc += static_cast<std::int16_t>(u16(d + 2 * k)) / 32768.0;
      } else {
        acc += std::bit_cast<float>(u32(d + 4 * k));
      }
    }
    clip.samples[i] = std::clamp(acc / ch, -1.0, 1.0);
  }
  return clip;
}

void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               int sample_rate) {
  if (sample_rate < 1) throw Error(Errc::invalid_config, "sample rate must be positive");
  std::vector<unsigned char> out;
  auto put16 = [&](std::uint16_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xFF));
    out.push_back(static_cast<unsigned char>(v >> 8));
  };
  auto put32 = [&](std::uint32_t v) {
    for (int s = 0; s < 32; s += 8) out.push_back(static_cast<unsigned char>((v >> s) & 0xFF));
  };
  auto tag = [&](const char* t) { out.insert(out.end(), t, t + 4); };
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  tag("RIFF");
  put32(36 + data_bytes);
  tag("WAVE");
  tag("fmt ");
  put32(16);
  put16(kFormatPcm);
  put16(1);
  put32(static_cast<std::uint32_t>(sample_rate));
  put32(static_cast<std::uint32_t>(sample_rate) * 2);
  put16(2);
  put16(16);
  tag("data");
  put32(data_bytes);
  for (double s : samples) {
    const double v = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
    put16(static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io, "cannot write " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) throw Error(Errc::io, "short write to " + path.string());
}

}  // namespace wavefprint
