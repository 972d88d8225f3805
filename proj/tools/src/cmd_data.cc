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

#include <algorithm>
#include <map>
#include <memory>
#include <ostream>

#include "common.h"
#include "wavefprint/errors.h"
#include "wavefprint/manifest.h"
#include "wavefprint/synth.h"
#include "wavefprint_cli/run_config.h"

namespace wavefprint::cli {

namespace {

std::vector<fs::path> wav_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".wav") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Subcommand add_synth(CLI::App& root) {
  struct Settings {
    std::string out;
    std::size_t clips = 1000;
    std::uint64_t seed = 0;
    std::string generators = "single";
    double artifact_db = -30;
    double noise_db = -40;
  };
  auto s = std::make_shared<Settings>();
  CLI::App* app = root.add_subcommand("synth", "Write a synthetic real/fake corpus with spectral-spike artifacts");
  app->add_option("--out", s->out, "Output directory")->required();
  app->add_option("--clips", s->clips, "Number of real clips; each gets one fake per generator");
  app->add_option("--seed", s->seed, "Corpus seed");
  app->add_option("--generators", s->generators, "single or multi")->check(CLI::IsMember({"single", "multi"}));
  app->add_option("--artifact-db", s->artifact_db, "Artifact tone level relative to the clip RMS");
  app->add_option("--noise-db", s->noise_db, "Noise floor relative to the clip RMS");
  return {app, [s](Context& ctx) {
            SynthConfig cfg;
            cfg.clips = s->clips;
            cfg.seed = s->seed;
            cfg.artifact_db = s->artifact_db;
            cfg.noise_db = s->noise_db;
            const GeneratorSpikes spikes = s->generators == "multi" ? multi_generator_spikes() : default_spikes();
            const fs::path dir = s->out;
            write_corpus(dir, make_corpus(cfg, spikes));
            record_run(ctx, dir, {}, {dir / "real", dir / "fake"});
            ctx.out << "wrote " << cfg.clips << " real clips and " << spikes.size() << " generator(s) to "
                    << dir.string() << "\n";
          }};
}

Subcommand add_prepare(CLI::App& root) {
  struct Settings {
    std::string real;
    std::vector<std::string> fake;
    std::string fake_root;
    std::string out;
    std::uint64_t seed = 0;
    std::string train_generator;
    std::vector<double> ratios{0.7, 0.1, 0.2};
    bool hash_inputs = true;
  };
  auto s = std::make_shared<Settings>();
  CLI::App* app = root.add_subcommand("prepare", "Resample, segment and split audio into a manifest");
  app->add_option("--real", s->real, "Directory of real recordings")->required();
  app->add_option("--fake", s->fake, "Generator source as NAME=DIR (repeatable)");
  app->add_option("--fake-root", s->fake_root, "Directory whose subdirectories are generators");
  app->add_option("--out", s->out, "Output directory for manifest.csv")->required();
  app->add_option("--seed", s->seed, "Split seed");
  app->add_option("--train-generator", s->train_generator, "Keep only this generator in the train split");
  app->add_option("--ratios", s->ratios, "train,val,test fractions")->expected(3)->delimiter(',');
  app->add_option("--hash-inputs", s->hash_inputs, "Record content hashes of every input file");
  return {app, [s](Context& ctx) {
            ManifestOptions opt;
            opt.real_dir = s->real;
            opt.seed = s->seed;
            opt.ratios = {s->ratios[0], s->ratios[1], s->ratios[2]};
            if (!s->train_generator.empty()) opt.train_generator = s->train_generator;
            for (const auto& item : s->fake) {
              const auto eq = item.find('=');
              if (eq == std::string::npos || eq == 0) throw UsageError("--fake expects NAME=DIR, got '" + item + "'");
              opt.fake_dirs[item.substr(0, eq)] = item.substr(eq + 1);
            }
            if (!s->fake_root.empty()) {
              for (const auto& e : fs::directory_iterator(s->fake_root)) {
                if (e.is_directory()) opt.fake_dirs[e.path().filename().string()] = e.path();
              }
            }
            if (opt.fake_dirs.empty()) throw UsageError("no generator sources; pass --fake or --fake-root");
            const Manifest m = build_manifest(opt);
            const ManifestCheck check = check_manifest(m);
            for (const auto& p : check.problems) ctx.err << "warning: " << p << "\n";
            const fs::path dir = s->out;
            fs::create_directories(dir);
            write_manifest_csv(dir / "manifest.csv", m);
            std::vector<fs::path> inputs;
            if (s->hash_inputs) {
              inputs = wav_files(opt.real_dir);
              for (const auto& [name, d] : opt.fake_dirs) {
                const auto more = wav_files(d);
                inputs.insert(inputs.end(), more.begin(), more.end());
              }
            }
            record_run(ctx, dir, inputs, {dir / "manifest.csv"});
            for (Split split : {Split::train, Split::val, Split::test}) {
              ctx.out << to_string(split) << ": " << m.count(Label::real, split) << " real, "
                      << m.count(Label::fake, split) << " fake\n";
            }
          }};
}

}  // namespace wavefprint::cli
