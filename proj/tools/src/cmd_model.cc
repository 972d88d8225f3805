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

#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>

#include "common.h"
#include "wavefprint/errors.h"
#include "wavefprint/attribution.h"
#include "wavefprint/evaluate.h"
#include "wavefprint/manifest.h"
#include "wavefprint/plot.h"
#include "wavefprint/provenance.h"
#include "wavefprint_cli/run_config.h"

namespace wavefprint::cli {

namespace {

void write_history_csv(const fs::path& path, const TrainResult& r) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out << "epoch,train_loss,val_accuracy\n";
  char buf[96];
  for (const auto& h : r.history) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", h.epoch, h.train_loss, h.val_accuracy);
    out << buf;
  }
}

void print_metrics(std::ostream& out, const RunMetrics& m) {
  for (const auto& [g, gm] : m.per_generator) {
    out << "  " << g << ": accuracy " << format_fixed(100 * gm.accuracy, 2) << "%, eer " << format_fixed(gm.eer, 3)
        << "\n";
  }
  out << "  overall accuracy " << format_fixed(100 * m.overall_accuracy, 2) << "%, aEER " << format_fixed(m.aeer, 3)
      << "\n";
}

void write_metrics(const fs::path& dir, const RunMetrics& m) {
  write_json(dir / "metrics.json", m.to_json());
  write_metrics_csv(dir / "metrics.csv", m);
}

// Lower band edge of each feature row in Hz.
std::vector<double> row_freqs(const FeatureConfig& cfg, std::size_t bins) {
  std::vector<double> f(bins);
  const double width = cfg.transform == FeatureTransform::stft ? cfg.sample_rate / static_cast<double>(cfg.fft_size)
                                                               : cfg.sample_rate / 2 / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) f[b] = width * static_cast<double>(b);
  return f;
}

}  // namespace

Subcommand add_train(CLI::App& root) {
  struct Settings {
    std::string manifest;
    FeatureFlags features;
    ModelFlags model;
    int epochs = 10;
    double lr = 4e-4;
    double wd = 1e-3;
    std::size_t batch = 128;
    std::string seed = "0";
    std::string out;
    bool cache = true;
    std::string eval_split = "test";
  };
  auto s = std::make_shared<Settings>();
  CLI::App* app = root.add_subcommand("train", "Train the detector for one or more seeds");
  app->add_option("--manifest", s->manifest, "Manifest CSV from prepare")->required();
  s->features.add_to(app);
  s->model.add_to(app);
  app->add_option("--epochs", s->epochs, "Training epochs");
  app->add_option("--lr", s->lr, "Adam learning rate");
  app->add_option("--wd", s->wd, "Weight decay");
  app->add_option("--batch", s->batch, "Batch size");
  app->add_option("--seed", s->seed, "Seed, list or inclusive range such as 0..4");
  app->add_option("--out", s->out, "Output directory; one seed_N subdirectory per seed")->required();
  app->add_option("--cache", s->cache, "Keep featurized clips in memory");
  app->add_option("--eval-split", s->eval_split, "Split scored after training, or none")
      ->check(CLI::IsMember({"train", "val", "test", "none"}));
  return {app, [s](Context& ctx) {
            const auto seeds = parse_seeds(s->seed);
            const Manifest m = read_manifest_csv(fs::path(s->manifest));
            const FeatureConfig fcfg = s->features.resolve();
            const DcnnConfig mcfg = s->model.resolve(fcfg);
            const Dataset train_ds = manifest_dataset(m, Split::train, fcfg, s->cache);
            const Dataset val_ds = manifest_dataset(m, Split::val, fcfg, s->cache);
            const fs::path dir = s->out;
            fs::create_directories(dir);
            std::vector<fs::path> outputs;
            for (std::uint64_t seed : seeds) {
              Model model = Model::create(mcfg, seed);
              TrainConfig tcfg{s->epochs, s->lr, s->wd, s->batch, seed};
              ctx.out << "seed " << seed << ": " << fcfg.tag() << ", " << count_params(model) << " parameters\n";
              const TrainResult r = train(model, train_ds, val_ds, tcfg, [&](const EpochRecord& e) {
                ctx.out << "  epoch " << e.epoch << " loss " << format_fixed(e.train_loss, 4) << " val accuracy "
                        << format_fixed(100 * e.val_accuracy, 2) << "%\n";
                ctx.out.flush();
              });
              const fs::path sd = dir / ("seed_" + std::to_string(seed));
              fs::create_directories(sd);
              save_model(sd / "model.wfp", model, fcfg,
                         {{"seed", seed}, {"best_epoch", r.best_epoch}, {"best_val_accuracy", r.best_val_accuracy}});
              write_history_csv(sd / "history.csv", r);
              outputs.insert(outputs.end(), {sd / "model.wfp", sd / "history.csv"});
              if (s->eval_split != "none") {
                const std::vector<std::string> expected = m.generators();
                RunMetrics metrics = evaluate(model, manifest_dataset(m, parse_split(s->eval_split), fcfg, false),
                                              expected);
                metrics.seed = seed;
                write_metrics(sd, metrics);
                outputs.push_back(sd / "metrics.json");
                print_metrics(ctx.out, metrics);
              }
            }
            record_run(ctx, dir, {fs::path(s->manifest)}, outputs);
          }};
}

Subcommand add_eval(CLI::App& root) {
  struct Settings {
    std::string model;
    std::string manifest;
    std::string split = "test";
    std::string out;
  };
  auto s = std::make_shared<Settings>();
  CLI::App* app = root.add_subcommand("eval", "Per-generator accuracy and EER of a trained model");
  app->add_option("--model", s->model, "model.wfp written by train")->required();
  app->add_option("--manifest", s->manifest, "Manifest CSV")->required();
  app->add_option("--split", s->split, "Split to score")->check(CLI::IsMember({"train", "val", "test"}));
  app->add_option("--out", s->out, "Output directory")->required();
  return {app, [s](Context& ctx) {
            const LoadedModel lm = load_model(s->model);
            const Manifest m = read_manifest_csv(fs::path(s->manifest));
            const std::vector<std::string> expected = m.generators();
            RunMetrics metrics = evaluate(lm.model, manifest_dataset(m, parse_split(s->split), lm.features, false),
                                          expected);
            if (lm.meta.contains("seed")) metrics.seed = lm.meta["seed"].get<std::uint64_t>();
            for (const auto& w : metrics.warnings) ctx.err << "warning: " << w << "\n";
            const fs::path dir = s->out;
            fs::create_directories(dir);
            write_metrics(dir, metrics);
            print_metrics(ctx.out, metrics);
            record_run(ctx, dir, {fs::path(s->model), fs::path(s->manifest)}, {dir / "metrics.json", dir / "metrics.csv"});
          }};
}

Subcommand add_attribute(CLI::App& root) {
  struct Settings {
    std::string model;
    std::string manifest;
    std::string split = "test";
    std::string cls = "both";
    std::size_t n = 2500;
    int steps = 64;
    std::string baseline = "silence";
    std::string target = "fake";
    std::string out;
  };
  auto s = std::make_shared<Settings>();
  CLI::App* app = root.add_subcommand("attribute", "Integrated-gradients maps averaged over a class");
  app->add_option("--model", s->model, "model.wfp written by train")->required();
  app->add_option("--manifest", s->manifest, "Manifest CSV")->required();
  app->add_option("--split", s->split, "Split to draw samples from")->check(CLI::IsMember({"train", "val", "test"}));
  app->add_option("--class", s->cls, "real, fake or both")->check(CLI::IsMember({"real", "fake", "both"}));
  app->add_option("--n", s->n, "Samples per class");
  app->add_option("--steps", s->steps, "Path integration steps");
  app->add_option("--baseline", s->baseline, "silence (featurized zeros) or zeros")
      ->check(CLI::IsMember({"silence", "zeros"}));
  app->add_option("--target", s->target, "Logit to attribute")->check(CLI::IsMember({"real", "fake"}));
  app->add_option("--out", s->out, "Output directory")->required();
  return {app, [s](Context& ctx) {
            const LoadedModel lm = load_model(s->model);
            const Manifest m = read_manifest_csv(fs::path(s->manifest));
            const Dataset ds = manifest_dataset(m, parse_split(s->split), lm.features, false);
            FeatureTensor baseline = silent_features(lm.features);
            if (s->baseline == "zeros") std::fill(baseline.data.begin(), baseline.data.end(), 0.0);
            const ClassFilter filter = s->cls == "real" ? ClassFilter::real
                                       : s->cls == "fake" ? ClassFilter::fake
                                                          : ClassFilter::both;
            const int target = s->target == "fake" ? 1 : 0;
            const AttributionMap map = mean_attribution(lm.model, ds, filter, s->n, s->steps, baseline, target, s->baseline);

            const fs::path dir = s->out;
            fs::create_directories(dir);
            const auto freqs = row_freqs(lm.features, map.bins);
            {
              std::ofstream csv(dir / "attribution.csv");
              if (!csv) throw Error(Errc::io, "cannot write attribution.csv");
              csv << "channel,bin,freq_hz";
              for (std::size_t t = 0; t < map.frames; ++t) csv << ",t" << t;
              csv << "\n";
              char buf[40];
              for (std::size_t c = 0; c < map.channels; ++c) {
                for (std::size_t b = 0; b < map.bins; ++b) {
                  std::snprintf(buf, sizeof buf, "%.17g", freqs[b]);
                  csv << c << "," << b << "," << buf;
                  for (std::size_t t = 0; t < map.frames; ++t) {
                    std::snprintf(buf, sizeof buf, ",%.17g", map.values[(c * map.bins + b) * map.frames + t]);
                    csv << buf;
                  }
                  csv << "\n";
                }
              }
            }
            std::vector<fs::path> outputs{dir / "attribution.csv"};
            for (std::size_t c = 0; c < map.channels; ++c) {
              HeatmapOptions h;
              h.title = "integrated gradients, " + s->cls + " samples, channel " + std::to_string(c);
              h.y_max = lm.features.transform == FeatureTransform::stft
                            ? freqs.back() + lm.features.sample_rate / static_cast<double>(lm.features.fft_size)
                            : lm.features.sample_rate / 2;
              h.symmetric = true;
              const auto begin = map.values.begin() + static_cast<std::ptrdiff_t>(c * map.bins * map.frames);
              const fs::path png = dir / ("attribution_c" + std::to_string(c) + ".png");
              write_heatmap(png, std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(map.bins * map.frames)),
                            map.bins, map.frames, h);
              outputs.push_back(png);
            }
            nlohmann::json rows = nlohmann::json::array();
            for (std::size_t b = 0; b < map.bins; ++b) rows.push_back(map.row_mass(b));
            write_json(dir / "attribution.json",
                       {{"class", s->cls},
                        {"baseline", map.baseline_tag},
                        {"steps", map.steps},
                        {"target", s->target},
                        {"n_samples", map.n_samples},
                        {"mean_completeness_residual", map.completeness_residual},
                        {"mean_output_delta", map.output_delta},
                        {"features", to_json(lm.features)},
                        {"row_mass", rows}});
            outputs.push_back(dir / "attribution.json");
            record_run(ctx, dir, {fs::path(s->model), fs::path(s->manifest)}, outputs);
            ctx.out << "attributed " << map.n_samples << " samples; mean completeness residual "
                    << format_fixed(map.completeness_residual, 6) << "\n";
          }};
}

}  // namespace wavefprint::cli
