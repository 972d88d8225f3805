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

#include <bit>
#include <cmath>
#include <memory>
#include <ostream>

#include "common.h"
#include "wavefprint/errors.h"
#include "wavefprint/fingerprint.h"
#include "wavefprint/manifest.h"
#include "wavefprint/plot.h"
#include "wavefprint/provenance.h"
#include "wavefprint/wav.h"
#include "wavefprint_cli/run_config.h"

namespace wavefprint::cli {

namespace {

std::vector<std::size_t> group_entries(const Manifest& m, const std::string& split, const std::string& generator) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    const auto& e = m.entries[i];
    if (split != "all" && to_string(e.split) != split) continue;
    if (generator.empty() ? e.label == Label::real : (e.label == Label::fake && e.generator == generator)) {
      out.push_back(i);
    }
  }
  return out;
}

Series as_series(const std::string& name, const Spectrum& s) { return {name, s.bin_freqs, s.values}; }

nlohmann::json spectrum_meta(const Spectrum& s) {
  nlohmann::json j{{"tag", s.tag()}, {"n_clips", s.n_clips}, {"bins", s.values.size()},
                   {"sample_rate", s.sample_rate}, {"epsilon", s.epsilon}};
  if (s.kind == SpectrumKind::wpt) {
    j["wavelet"] = s.wavelet;
    j["level"] = s.level;
    j["averaging"] = "mean |coefficient| over frames per clip, then mean over clips, then ln";
  } else {
    j["averaging"] = "mean |DFT| over clips, then ln";
  }
  return j;
}

}  // namespace

Subcommand add_fingerprint(CLI::App& root) {
  struct Settings {
    std::string manifest;
    std::string split = "all";
    std::string transform = "both";
    std::string wavelet = "haar";
    int level = 14;
    std::size_t n = 2500;
    std::size_t top = 3;
    std::string out;
  };
  auto s = std::make_shared<Settings>();
  CLI::App* app = root.add_subcommand("fingerprint", "Mean spectra of real and generated audio and their differences");
  app->add_option("--manifest", s->manifest, "Manifest CSV from prepare")->required();
  app->add_option("--split", s->split, "all, train, val or test")->check(CLI::IsMember({"all", "train", "val", "test"}));
  app->add_option("--transform", s->transform, "wpt, rfft or both")->check(CLI::IsMember({"wpt", "rfft", "both"}));
  app->add_option("--wavelet", s->wavelet, "Wavelet for the packet spectrum");
  app->add_option("--level", s->level, "Packet level (2^level bins)");
  app->add_option("--n", s->n, "Clips averaged per class");
  app->add_option("--top", s->top, "Largest difference bins to report");
  app->add_option("--out", s->out, "Output directory")->required();
  return {app, [s](Context& ctx) {
            const Manifest m = read_manifest_csv(fs::path(s->manifest));
            const fs::path dir = s->out;
            fs::create_directories(dir);
            std::vector<FingerprintConfig> configs;
            if (s->transform != "rfft") configs.push_back({SpectrumKind::wpt, s->wavelet, s->level, s->n, 1e-12});
            if (s->transform != "wpt") configs.push_back({SpectrumKind::rfft, "", 0, s->n, 1e-12});
            nlohmann::json summary{{"spectra", nlohmann::json::object()}, {"differences", nlohmann::json::object()}};
            std::vector<fs::path> outputs;
            std::vector<std::string> groups{""};
            for (const auto& g : m.generators()) groups.push_back(g);
            for (const auto& cfg : configs) {
              std::map<std::string, Spectrum> spectra;
              for (const auto& g : groups) {
                const auto idx = group_entries(m, s->split, g);
                if (idx.empty()) throw Error(Errc::empty_class, "no clips for " + (g.empty() ? "real" : g));
                ClipLoader loader;
                spectra[g] = mean_spectrum(
                    idx.size(), [&](std::size_t i) { return loader.load(m.entries[idx[i]]); }, cfg);
                const std::string name = g.empty() ? "real" : g;
                const Spectrum& sp = spectra[g];
                const fs::path csv = dir / ("spectrum_" + name + "_" + sp.tag() + ".csv");
                write_spectrum_csv(csv, sp);
                outputs.push_back(csv);
                summary["spectra"][csv.filename().string()] = spectrum_meta(sp);
                if (sp.n_clips < s->n) {
                  ctx.err << "note: " << name << " " << sp.tag() << " averaged over " << sp.n_clips << " clips\n";
                }
              }
              const Spectrum& real = spectra[""];
              for (std::size_t gi = 1; gi < groups.size(); ++gi) {
                const std::string& g = groups[gi];
                const Spectrum d = diff_spectrum(real, spectra[g]);
                const std::string stem = g + "_" + d.tag();
                const fs::path csv = dir / ("diff_" + stem + ".csv");
                write_spectrum_csv(csv, d);
                LinePlotOptions mean_plot{"mean spectra " + d.tag() + ": real vs " + g, "frequency (Hz)",
                                          "ln mean |coefficient|"};
                write_line_plot(dir / ("fingerprint_" + stem + ".png"),
                                {as_series("real", real), as_series(g, spectra[g])}, mean_plot);
                LinePlotOptions diff_plot{"difference real - " + g + " " + d.tag(), "frequency (Hz)", "ln ratio"};
                write_line_plot(dir / ("diff_" + stem + ".png"), {as_series("real - " + g, d)}, diff_plot);
                outputs.insert(outputs.end(), {csv, dir / ("fingerprint_" + stem + ".png"), dir / ("diff_" + stem + ".png")});
                nlohmann::json peaks = nlohmann::json::array();
                ctx.out << g << " " << d.tag() << " top bins:";
                for (std::size_t b : top_bins(d, s->top)) {
                  peaks.push_back({{"bin", b}, {"freq_hz", d.bin_freqs[b]}, {"value", d.values[b]}});
                  ctx.out << " " << format_fixed(d.bin_freqs[b], 2) << " Hz (" << format_fixed(d.values[b], 3) << ")";
                }
                ctx.out << "\n";
                summary["differences"][csv.filename().string()] = {{"generator", g}, {"tag", d.tag()}, {"top", peaks}};
              }
            }
            write_json(dir / "fingerprint.json", summary);
            outputs.push_back(dir / "fingerprint.json");
            record_run(ctx, dir, {fs::path(s->manifest)}, outputs);
          }};
}

Subcommand add_sonify(CLI::App& root) {
  struct Settings {
    std::string spectrum;
    std::string wavelet = "haar";
    double gain = 1.0;
    double duration = 1.0;
    std::string out;
  };
  auto s = std::make_shared<Settings>();
  CLI::App* app = root.add_subcommand("sonify", "Render a packet difference spectrum as audio");
  app->add_option("--spectrum", s->spectrum, "Difference spectrum CSV written by fingerprint")->required();
  app->add_option("--wavelet", s->wavelet, "Wavelet the spectrum was computed with");
  app->add_option("--gain", s->gain, "Coefficient gain before normalization");
  app->add_option("--duration", s->duration, "Output length in seconds");
  app->add_option("--out", s->out, "Output directory")->required();
  return {app, [s](Context& ctx) {
            Spectrum sp = read_spectrum_csv(fs::path(s->spectrum));
            const std::size_t bins = sp.values.size();
            if (bins < 2 || !std::has_single_bit(bins)) {
              throw Error(Errc::shape, "a packet spectrum needs 2^level rows, got " + std::to_string(bins));
            }
            sp.kind = SpectrumKind::wpt;
            sp.wavelet = s->wavelet;
            sp.level = std::countr_zero(bins);
            sp.sample_rate = std::round(2.0 * (sp.bin_freqs[1] - sp.bin_freqs[0]) * static_cast<double>(bins));
            const AudioClip clip = sonify(sp, s->gain, s->duration);
            const fs::path dir = s->out;
            fs::create_directories(dir);
            const fs::path wav = dir / (fs::path(s->spectrum).stem().string() + ".wav");
            write_wav(wav, clip.samples, static_cast<int>(sp.sample_rate));
            record_run(ctx, dir, {fs::path(s->spectrum)}, {wav});
            ctx.out << "wrote " << wav.string() << "\n";
          }};
}

}  // namespace wavefprint::cli
