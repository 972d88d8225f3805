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
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "common.h"
#include "wavefprint/errors.h"
#include "wavefprint/evaluate.h"
#include "wavefprint/provenance.h"
#include "wavefprint_cli/run_config.h"

namespace wavefprint::cli {

namespace {

struct RunGroup {
  std::string label;
  std::string input = "-";
  std::vector<RunMetrics> runs;
  std::vector<fs::path> files;
};

// Feature tag from the run's frozen config, "-" when absent.
std::string input_tag(const fs::path& dir) {
  const fs::path cfg = dir / "config.resolved";
  if (!fs::exists(cfg)) return "-";
  const auto values = read_config_file(cfg);
  auto get = [&](const std::string& k, const std::string& d) {
    const auto it = values.find(k);
    return it == values.end() ? d : it->second;
  };
  std::string tag = get("transform", "wpt") == "stft" ? "stft" : get("wavelet", "?");
  if (get("signed", "false") == "true") tag += "-signed";
  return tag;
}

RunGroup load_group(const fs::path& dir) {
  RunGroup g;
  g.label = dir.filename().string();
  if (g.label.empty()) g.label = dir.parent_path().filename().string();
  g.input = input_tag(dir);
  std::vector<fs::path> files;
  if (fs::is_regular_file(dir / "metrics.json")) files.push_back(dir / "metrics.json");
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory() && fs::is_regular_file(e.path() / "metrics.json")) files.push_back(e.path() / "metrics.json");
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) g.runs.push_back(RunMetrics::from_json(read_json(f)));
  g.files = files;
  if (g.runs.empty()) throw Error(Errc::empty_data, "no metrics.json under " + dir.string());
  return g;
}

std::string pm(double mean, double std, int digits, double scale = 1) {
  return format_fixed(scale * mean, digits) + " ± " + format_fixed(scale * std, digits);
}

void mean_std(const std::vector<double>& v, double& mean, double& std) {
  mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0;
  for (double x : v) var += (x - mean) * (x - mean);
  std = std::sqrt(var / static_cast<double>(v.size()));
}

}  // namespace

Subcommand add_report(CLI::App& root) {
  struct Settings {
    std::vector<std::string> runs;
    std::string out;
  };
  auto s = std::make_shared<Settings>();
  CLI::App* app = root.add_subcommand("report", "Aggregate seeds into accuracy and aEER tables");
  app->add_option("--runs", s->runs, "train/eval output directories (repeatable)")->required();
  app->add_option("--out", s->out, "Directory for report.md and summary.json");
  return {app, [s](Context& ctx) {
            std::ostringstream table;
            table << "Accuracy [%] (max, μ±σ) and aEER (min, μ±σ) over seeds.\n\n";
            table << "| run | input | seeds | max | μ±σ | min | μ±σ |\n";
            table << "|---|---|---|---|---|---|---|\n";
            std::ostringstream generators;
            generators << "| run | generator | accuracy μ±σ [%] | EER μ±σ |\n|---|---|---|---|\n";
            nlohmann::json summary = nlohmann::json::array();
            std::vector<fs::path> inputs;
            for (const auto& r : s->runs) {
              const RunGroup g = load_group(r);
              const SeedSummary sum = aggregate_runs(g.runs);
              table << "| " << g.label << " | " << g.input << " | " << sum.n_seeds << " | "
                    << format_fixed(100 * sum.accuracy_max, 2) << " | " << pm(sum.accuracy_mean, sum.accuracy_std, 2, 100)
                    << " | " << format_fixed(sum.aeer_min, 3) << " | " << pm(sum.aeer_mean, sum.aeer_std, 3) << " |\n";
              std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> per_gen;
              nlohmann::json seeds = nlohmann::json::array();
              for (const auto& run : g.runs) {
                seeds.push_back(run.seed);
                for (const auto& [name, gm] : run.per_generator) {
                  per_gen[name].first.push_back(gm.accuracy);
                  per_gen[name].second.push_back(gm.eer);
                }
              }
              for (const auto& [name, v] : per_gen) {
                double am, as, em, es;
                mean_std(v.first, am, as);
                mean_std(v.second, em, es);
                generators << "| " << g.label << " | " << name << " | " << pm(am, as, 2, 100) << " | " << pm(em, es, 3)
                           << " |\n";
              }
              summary.push_back({{"run", g.label}, {"input", g.input}, {"seeds", seeds}, {"summary", sum.to_json()}});
              inputs.insert(inputs.end(), g.files.begin(), g.files.end());
            }
            const std::string text = table.str() + "\n" + generators.str();
            ctx.out << text;
            if (!s->out.empty()) {
              const fs::path dir = s->out;
              fs::create_directories(dir);
              std::ofstream(dir / "report.md") << text;
              write_json(dir / "summary.json", summary);
              record_run(ctx, dir, inputs, {dir / "report.md", dir / "summary.json"});
            }
          }};
}

}  // namespace wavefprint::cli
