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

// End-to-end acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--only 1,4,7] [--work DIR]
//
// Criteria 7, 8 and 10 drive the wavefprint CLI in-process on a synthetic
// corpus under DIR. With WAVEFAKE_ROOT set, criterion 10 runs the full
// per-generator protocol on that corpus instead.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcnn_checks.h"
#include "gradcheck.h"
#include "oracles.h"
#include "score_sets.h"
#include "toy_data.h"
#include "wavefprint/attribution.h"
#include "wavefprint/evaluate.h"
#include "wavefprint/fingerprint.h"
#include "wavefprint/model.h"
#include "wavefprint/nn/ops.h"
#include "wavefprint/preprocess.h"
#include "wavefprint/provenance.h"
#include "wavefprint/synth.h"
#include "wavefprint/transforms.h"
#include "wavefprint/wavelets.h"
#include "wavefprint_cli/cli.h"
#include "wavefprint_cli/run_config.h"

namespace wavefprint {
namespace {

namespace fs = std::filesystem;
using nn::Tensor;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << v;
  return s.str();
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs the CLI; a nonzero exit aborts the criterion with its stderr.
void wf(const std::vector<std::string>& args, std::string* stdout_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (stdout_text) *stdout_text = out.str();
  if (code != 0) {
    throw std::runtime_error("wavefprint " + args.front() + " exited " + std::to_string(code) + ": " + err.str());
  }
}

// ---------------------------------------------------------------- 1
Outcome perfect_reconstruction() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(2024);
  std::vector<std::vector<double>> signals(50);
  for (auto& x : signals) x = oracle::random_vector(rng, 100 + rng.below(29901));
  double worst = 0;
  std::string where;
  for (const auto& name : supported_wavelets()) {
    const FilterBank fb = get_filter_bank(name);
    for (int level = 1; level <= 8; ++level) {
      for (const auto& x : signals) {
        const auto y = iwpt(wpt(x, fb, level), fb);
        const double e = y.size() == x.size() ? oracle::max_abs_diff(x, y) : INFINITY;
        if (e > worst) worst = e, where = name + " L" + std::to_string(level) + " n=" + std::to_string(x.size());
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-10 && secs < 120,
          "max |iwpt(wpt(x)) - x| = " + sci(worst) + " (" + where + ") < 1e-10 over 50 signals x " +
              std::to_string(supported_wavelets().size()) + " wavelets x L1-8, " + fixed(secs, 1) + " s < 120 s"};
}

// ---------------------------------------------------------------- 2
Outcome admissibility() {
  double worst = 0;
  std::string where;
  bool all = true;
  for (const auto& name : supported_wavelets()) {
    const auto r = verify_admissibility(get_filter_bank(name));
    all = all && r.passed;
    if (r.worst() >= worst) worst = r.worst(), where = name;
  }
  return {all && worst < 1e-8, std::to_string(supported_wavelets().size()) + " banks, worst residual " + sci(worst) +
                                   " (" + where + ") < 1e-8"};
}

// ---------------------------------------------------------------- 3
Outcome matrix_oracle() {
  Rng rng(3);
  double worst = 0;
  for (const char* name : {"haar", "db2", "sym4"}) {
    const FilterBank fb = get_filter_bank(name);
    for (int level = 1; level <= 3; ++level) {
      for (int trial = 0; trial < 4; ++trial) {
        const auto x = oracle::random_vector(rng, 16);
        const PacketGrid g = wpt(x, fb, level, Ordering::natural);
        const auto leaves = oracle::wpt_cascade(x, fb, level);
        if (g.bins != leaves.size()) return {false, std::string(name) + ": leaf count differs"};
        for (std::size_t b = 0; b < g.bins; ++b) {
          if (g.frames != leaves[b].size()) return {false, std::string(name) + ": leaf length differs"};
          for (std::size_t t = 0; t < g.frames; ++t) worst = std::max(worst, std::abs(g.at(b, t) - leaves[b][t]));
        }
      }
    }
  }
  return {worst < 1e-12, "haar/db2/sym4, L1-3, 16 samples: max |wpt - matrix cascade| = " + sci(worst) + " < 1e-12"};
}

// ---------------------------------------------------------------- 4
Tensor random_tensor(Rng& rng, nn::Shape shape, double lo = -1, double hi = 1) {
  return Tensor::from(shape, oracle::random_vector(rng, nn::numel(shape), lo, hi), true);
}

Outcome gradient_suite() {
  Rng rng(4);
  std::vector<std::pair<std::string, double>> errors;
  auto check = [&](const std::string& name, const std::function<Tensor(std::vector<Tensor>&)>& f,
                   std::vector<Tensor> in) { errors.emplace_back(name, testing::grad_check(f, in, 40).rel_error); };

  for (int d : {1, 2, 4, 8}) {
    const nn::Conv2dOptions o{1, d, d};
    check("conv d" + std::to_string(d), [&](std::vector<Tensor>& t) { return nn::conv2d(t[0], t[1], t[2], o); },
          {random_tensor(rng, {2, 3, 9, 10}), random_tensor(rng, {4, 3, 3, 3}), random_tensor(rng, {4})});
  }
  for (bool training : {true, false}) {
    check(training ? "batchnorm train" : "batchnorm eval",
          [&](std::vector<Tensor>& t) {
            std::vector<double> m{0.1, -0.2, 0.3}, v{1.2, 0.8, 1.1};
            return nn::batch_norm2d(t[0], t[1], t[2], m, v, training);
          },
          {random_tensor(rng, {2, 3, 4, 4}), random_tensor(rng, {3}, 0.5, 1.5), random_tensor(rng, {3})});
  }
  std::vector<double> signed_values(24);
  for (double& v : signed_values) v = (rng.below(2) ? 1 : -1) * rng.uniform(0.05, 1.0);
  check("prelu", [](std::vector<Tensor>& t) { return nn::prelu(t[0], t[1]); },
        {Tensor::from({2, 3, 4}, signed_values, true), Tensor::from({1}, {0.25}, true)});
  std::vector<double> distinct(60);
  for (std::size_t i = 0; i < distinct.size(); ++i) distinct[i] = 0.01 * static_cast<double>(i);
  rng.shuffle(std::span<double>(distinct));
  check("maxpool", [](std::vector<Tensor>& t) { return nn::max_pool2d(t[0]); },
        {Tensor::from({1, 2, 5, 6}, distinct, true)});
  check("dropout",
        [](std::vector<Tensor>& t) {
          Rng mask(99);
          return nn::dropout(t[0], 0.3, true, mask);
        },
        {random_tensor(rng, {3, 8})});
  check("linear", [](std::vector<Tensor>& t) { return nn::linear(t[0], t[1], t[2]); },
        {random_tensor(rng, {3, 6}), random_tensor(rng, {4, 6}), random_tensor(rng, {4})});
  check("permute", [](std::vector<Tensor>& t) { return nn::permute_1_2(t[0]); }, {random_tensor(rng, {2, 3, 4, 5})});
  check("flatten", [](std::vector<Tensor>& t) { return nn::flatten(t[0]); }, {random_tensor(rng, {2, 3, 2, 2})});
  const std::vector<int> labels{0, 1, 1, 0};
  check("cross-entropy", [&](std::vector<Tensor>& t) { return nn::softmax_cross_entropy(t[0], labels); },
        {random_tensor(rng, {4, 2}, -2, 2)});

  DcnnConfig reduced = DcnnConfig::reference(12);
  reduced.bins = 16;
  const auto small = testing::dcnn_grad_check(reduced, 3, 0);
  errors.emplace_back("reduced DCNN", small.rel_error);
  const auto full = testing::dcnn_grad_check(DcnnConfig::reference(95), 2, 24);
  errors.emplace_back("reference DCNN", full.rel_error);

  double worst = 0;
  std::string where;
  for (const auto& [name, e] : errors) {
    if (!(e <= worst)) worst = e, where = name;
  }
  const bool enough = small.checked >= 25000 && full.checked >= 40;
  return {worst < 1e-4 && enough,
          std::to_string(errors.size()) + " checks, step 1e-3, worst rel error " + sci(worst) + " (" + where +
              ") < 1e-4; DCNN probes " + std::to_string(small.checked + full.checked) + " smooth, " +
              std::to_string(small.skipped_kinks + full.skipped_kinks) + " straddling a kink excluded"};
}

// ---------------------------------------------------------------- 5
Outcome eer_oracle() {
  Rng rng(5);
  double oracle_err = 0, flip_err = 0, mono_err = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const testing::ScoreSet s = testing::random_set(rng);
    const double e = eer(s.scores, s.labels);
    oracle_err = std::max(oracle_err, std::abs(e - oracle::eer(s.scores, s.labels)));
    std::vector<double> neg, a, b, c;
    std::vector<int> flipped;
    for (std::size_t i = 0; i < s.scores.size(); ++i) {
      const double v = s.scores[i];
      neg.push_back(-v);
      flipped.push_back(1 - s.labels[i]);
      a.push_back(std::exp(3 * v));
      b.push_back(v * v * v + v);
      c.push_back(1.0 / (1.0 + std::exp(-10 * (v - 0.5))));
    }
    flip_err = std::max(flip_err, std::abs(e - eer(neg, flipped)));
    for (const auto* m : {&a, &b, &c}) mono_err = std::max(mono_err, std::abs(e - eer(*m, s.labels)));
  }
  return {oracle_err < 1e-12 && flip_err < 1e-12 && mono_err < 1e-12,
          "200 sets: |eer - sweep| " + sci(oracle_err) + ", flip " + sci(flip_err) + ", monotone " + sci(mono_err) +
              " (all < 1e-12)"};
}

// ---------------------------------------------------------------- 6
Outcome integrated_gradients_check() {
  Rng rng(6);
  const std::size_t n = 24;
  const auto w = oracle::random_vector(rng, n, -2, 2);
  std::vector<double> weight(2 * n, 0.0);
  std::copy(w.begin(), w.end(), weight.begin() + static_cast<std::ptrdiff_t>(n));
  const Tensor wt = Tensor::from({2, n}, weight), bt = Tensor::from({2}, {0.0, 0.3});
  const LogitFn linear = [&](const Tensor& x) { return nn::linear(nn::flatten(x), wt, bt); };
  FeatureTensor x, zero;
  for (FeatureTensor* f : {&x, &zero}) f->batch = 1, f->channels = 2, f->bins = 4, f->frames = 3;
  x.data = oracle::random_vector(rng, n, -5, 5);
  zero.data.assign(n, 0.0);
  double linear_err = 0;
  for (int steps : {1, 2, 7, 64}) {
    const AttributionMap m = integrated_gradients(linear, x, zero, steps, 1, "zeros");
    for (std::size_t i = 0; i < n; ++i) linear_err = std::max(linear_err, std::abs(m.values[i] - w[i] * x.data[i]));
  }

  Model model = Model::create(DcnnConfig::reference(toy::kFrames), 0);
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.batch_size = 32;
  const TrainResult tr = train(model, toy::blob_dataset(256, 1), toy::blob_dataset(64, 2), cfg);
  FeatureTensor base;
  base.batch = 1, base.channels = 1, base.bins = toy::kBins, base.frames = toy::kFrames;
  base.data.assign(toy::kBins * toy::kFrames, 0.0);
  const Dataset ds = toy::blob_dataset(8, 3);
  double worst_rel = 0;
  for (std::size_t i = 0; i < ds.size; ++i) {
    const std::size_t idx[1] = {i};
    worst_rel = std::max(worst_rel, integrated_gradients(model, ds.features(idx), base, 128, 1).relative_residual());
  }
  return {linear_err < 1e-12 && worst_rel < 1e-2,
          "linear |IG - w*x| " + sci(linear_err) + " < 1e-12 for steps 1/2/7/64; toy DCNN (val acc " +
              fixed(tr.best_val_accuracy, 3) + ") worst relative residual at 128 steps " + sci(worst_rel) + " < 1e-2"};
}

// ---------------------------------------------------------------- 7, 8
struct Workspace {
  fs::path root;
  bool corpus_ready = false;

  fs::path corpus() const { return root / "corpus"; }
  fs::path manifest() const { return root / "prep" / "manifest.csv"; }

  // 1000 real clips and one 1000-clip spike generator at -30 dB.
  void ensure_corpus() {
    if (corpus_ready) return;
    fs::remove_all(root / "corpus");
    fs::remove_all(root / "prep");
    wf({"synth", "--out", corpus().string(), "--clips", "1000", "--generators", "single", "--artifact-db", "-30"});
    wf({"prepare", "--real", (corpus() / "real").string(), "--fake-root", (corpus() / "fake").string(), "--out",
        (root / "prep").string(), "--hash-inputs", "false"});
    corpus_ready = true;
  }
};

Outcome desk_scale(Workspace& ws) {
  const auto t0 = std::chrono::steady_clock::now();
  ws.ensure_corpus();
  const fs::path run = ws.root / "desk";
  fs::remove_all(run);
  wf({"train", "--manifest", ws.manifest().string(), "--transform", "wpt", "--wavelet", "sym5", "--level", "8",
      "--epochs", "3", "--seed", "0..2", "--out", run.string()});
  const double secs = seconds_since(t0);
  bool pass = secs < 1800;
  std::string detail;
  for (int seed = 0; seed <= 2; ++seed) {
    const auto m = RunMetrics::from_json(read_json(run / ("seed_" + std::to_string(seed)) / "metrics.json"));
    double worst_eer = 0;
    for (const auto& [gen, g] : m.per_generator) worst_eer = std::max(worst_eer, g.eer);
    pass = pass && m.overall_accuracy >= 0.95 && worst_eer <= 0.05 && !m.per_generator.empty();
    detail += "seed " + std::to_string(seed) + " acc " + fixed(m.overall_accuracy, 4) + " eer " + fixed(worst_eer, 4) +
              "; ";
  }
  return {pass, "2000 clips, sym5 WPT L8, 3 epochs: " + detail + "need acc >= 0.95, eer <= 0.05; " +
                    fixed(secs / 60, 1) + " min < 30 min"};
}

Outcome localization(Workspace& ws) {
  ws.ensure_corpus();
  const fs::path out = ws.root / "fingerprint";
  fs::remove_all(out);
  wf({"fingerprint", "--manifest", ws.manifest().string(), "--transform", "both", "--wavelet", "haar", "--level",
      "14", "--n", "1000", "--out", out.string()});
  const GeneratorSpikes spikes = default_spikes();
  const auto& [gen, freqs] = *spikes.begin();
  bool pass = true;
  std::string detail;
  for (const char* tag : {"wpt14-haar", "rfft"}) {
    const Spectrum d = read_spectrum_csv(out / ("diff_" + gen + "_" + tag + ".csv"));
    const double width = d.bin_freqs[1] - d.bin_freqs[0];
    const bool packet = std::string(tag) != "rfft";
    detail += std::string(tag) + ":";
    for (std::size_t b : top_bins(d, 3)) {
      // Packet bin b covers [b, b + 1) * width; rfft bin b is centered on b * width.
      const double center = (static_cast<double>(b) + (packet ? 0.5 : 0.0)) * width;
      double off = INFINITY;
      for (double f : freqs) off = std::min(off, std::abs(center - f) / width);
      const bool ok = off <= (packet ? 1.5 : 1.0);
      pass = pass && ok;
      detail += " " + fixed(center, 1) + " Hz" + (ok ? "" : "(miss)");
    }
    detail += "; ";
  }
  std::string spike_list;
  for (double f : freqs) spike_list += (spike_list.empty() ? "" : "/") + fixed(f, 2);
  return {pass, "top-3 |diff| bins " + detail + "spikes at " + spike_list + " Hz, within +-1 bin"};
}

// ---------------------------------------------------------------- 9
Outcome parameter_accounting() {
  auto frames_for = [](const std::string& wavelet) {
    FeatureConfig fc;
    fc.wavelet = wavelet;
    return feature_frames(fc);
  };
  const DcnnConfig ref = DcnnConfig::reference(frames_for("sym5"));
  const std::size_t n = count_params(Model::create(ref, 0));
  const std::size_t analytic = testing::analytic_count(ref).total();
  const double band = std::abs(static_cast<double>(n) - 239015.0) / 239015.0;

  const Model a = Model::create(DcnnConfig::reference(frames_for("db2")), 0);
  const Model b = Model::create(DcnnConfig::reference(frames_for("coif8")), 0);
  const auto pa = a.net.parameters(), pb = b.net.parameters();
  const std::string linear_weight = std::to_string(a.net.size() - 1) + ".weight";
  bool only_linear = pa.size() == pb.size() && a.config.frames != b.config.frames;
  for (std::size_t i = 0; only_linear && i < pa.size(); ++i) {
    const bool same = pa[i].tensor.numel() == pb[i].tensor.numel();
    only_linear = pa[i].name == pb[i].name && (same || pa[i].name == linear_weight);
  }
  only_linear = only_linear && testing::analytic_count(a.config).conv_part == testing::analytic_count(b.config).conv_part;
  return {n == analytic && band <= 0.10 && only_linear,
          "sym5 (" + std::to_string(ref.frames) + " frames): " + std::to_string(n) + " params, analytic " +
              std::to_string(analytic) + ", " + fixed(100 * band, 2) + "% from 239015 (<= 10%); db2 " +
              std::to_string(count_params(a)) + " vs coif8 " + std::to_string(count_params(b)) +
              (only_linear ? " differ only in the linear layer" : " differ outside the linear layer")};
}

// ---------------------------------------------------------------- 10
std::size_t count_table_rows(const std::string& md, const std::string& prefix) {
  std::size_t n = 0;
  std::istringstream in(md);
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

Outcome full_protocol(Workspace& ws) {
  const auto t0 = std::chrono::steady_clock::now();
  const char* root_env = std::getenv("WAVEFAKE_ROOT");
  const fs::path dir = ws.root / "protocol";
  fs::remove_all(dir);
  std::string mode;
  std::vector<std::string> train_args;
  if (root_env && *root_env) {
    const fs::path root(root_env);
    const fs::path real = fs::exists(root / "LJSpeech-1.1" / "wavs") ? root / "LJSpeech-1.1" / "wavs" : root / "real";
    const fs::path fakes = fs::exists(root / "generated_audio") ? root / "generated_audio" : root / "fake";
    const char* gen_env = std::getenv("WAVEFAKE_TRAIN_GENERATOR");
    const std::string train_gen = gen_env && *gen_env ? gen_env : "ljspeech_full_band_melgan";
    wf({"prepare", "--real", real.string(), "--fake-root", fakes.string(), "--out", (dir / "prep").string(),
        "--train-generator", train_gen});
    mode = "WaveFake corpus at " + root.string() + ", trained on " + train_gen;
    train_args = {"--epochs", "10"};
  } else {
    wf({"synth", "--out", (dir / "corpus").string(), "--clips", "150", "--generators", "multi", "--seed", "10"});
    wf({"prepare", "--real", (dir / "corpus" / "real").string(), "--fake-root", (dir / "corpus" / "fake").string(),
        "--out", (dir / "prep").string(), "--train-generator", "spikegan"});
    mode = "synthetic 3-generator corpus (WAVEFAKE_ROOT unset), trained on spikegan";
    train_args = {"--epochs", "2"};
  }
  std::vector<std::string> args{"train", "--manifest", (dir / "prep" / "manifest.csv").string(), "--seed", "0..4",
                                "--out", (dir / "run").string()};
  args.insert(args.end(), train_args.begin(), train_args.end());
  wf(args);
  wf({"report", "--runs", (dir / "run").string(), "--out", (dir / "report").string()});
  const std::string md = [&] {
    std::ifstream in(dir / "report" / "report.md");
    return std::string((std::istreambuf_iterator<char>(in)), {});
  }();
  std::set<std::string> generators;
  for (int seed = 0; seed <= 4; ++seed) {
    const auto m = RunMetrics::from_json(read_json(dir / "run" / ("seed_" + std::to_string(seed)) / "metrics.json"));
    for (const auto& [g, unused] : m.per_generator) generators.insert(g);
  }
  const bool header = md.find("| run | input | seeds | max | μ±σ | min | μ±σ |") != std::string::npos;
  const bool five = md.find("| run | sym5 | 5 |") != std::string::npos;
  std::size_t gen_rows = 0;
  for (const auto& g : generators) gen_rows += count_table_rows(md, "| run | " + g + " | ");
  const bool pass = header && five && !generators.empty() && gen_rows == generators.size();
  return {pass, mode + "; seeds 0-4, report with max/μ±σ accuracy and min/μ±σ aEER, " +
                    std::to_string(gen_rows) + " per-generator rows; " + fixed(seconds_since(t0), 0) + " s"};
}

}  // namespace
}  // namespace wavefprint

int main(int argc, char** argv) {
  using namespace wavefprint;
  CLI::App app("Acceptance criteria 1-10");
  std::string only = "1..10";
  std::string work = (fs::temp_directory_path() / "wavefprint_acceptance").string();
  app.add_option("--only", only, "Criteria to run, e.g. 1,4,7 or 1..6");
  app.add_option("--work", work, "Scratch directory for corpora and runs");
  CLI11_PARSE(app, argc, argv);
  std::vector<std::uint64_t> selected;
  try {
    selected = cli::parse_seeds(only);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  Workspace ws{work};
  fs::create_directories(ws.root);
  const std::map<int, std::pair<std::string, std::function<Outcome()>>> criteria{
      {1, {"perfect reconstruction", perfect_reconstruction}},
      {2, {"filter admissibility", admissibility}},
      {3, {"transform matrix oracle", matrix_oracle}},
      {4, {"gradient suite", gradient_suite}},
      {5, {"EER oracle", eer_oracle}},
      {6, {"integrated gradients", integrated_gradients_check}},
      {7, {"desk-scale end-to-end", [&] { return desk_scale(ws); }}},
      {8, {"fingerprint localization", [&] { return localization(ws); }}},
      {9, {"parameter accounting", parameter_accounting}},
      {10, {"full-scale protocol", [&] { return full_protocol(ws); }}},
  };
  int failed = 0;
  for (std::uint64_t id : selected) {
    const auto it = criteria.find(static_cast<int>(id));
    if (it == criteria.end()) {
      std::cerr << "no criterion " << id << "\n";
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it->second.second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << id << " " << it->second.first << ": " << o.detail << " ["
              << fixed(seconds_since(t0), 1) << " s]" << std::endl;
  }
  return failed ? 1 : 0;
}
