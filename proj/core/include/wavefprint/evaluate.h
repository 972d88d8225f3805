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

#ifndef WAVEFPRINT_EVALUATE_H_
#define WAVEFPRINT_EVALUATE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wavefprint/manifest.h"
#include "wavefprint/model.h"
#include "wavefprint/nn/checkpoint.h"
#include "wavefprint/preprocess.h"

namespace wavefprint {

// Labeled samples whose features are produced on demand. label 1 = fake.
struct Dataset {
  std::size_t size = 0;
  std::vector<int> labels;
  std::vector<std::string> generators;  // empty string for real samples
  std::function<FeatureTensor(std::span<const std::size_t>)> features;
};

Dataset in_memory_dataset(FeatureTensor features, std::vector<int> labels,
                          std::vector<std::string> generators);

// Decodes and featurizes manifest entries of one split. With cache set, each
// sample is featurized once and kept in memory.
Dataset manifest_dataset(const Manifest& manifest, Split split, const FeatureConfig& cfg,
                         bool cache);

// Restricts a dataset to the given sample indices.
Dataset subset(const Dataset& ds, std::vector<std::size_t> indices);

struct TrainConfig {
  int epochs = 10;
  double lr = 4e-4;
  double weight_decay = 1e-3;
  std::size_t batch_size = 128;
  std::uint64_t seed = 0;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0;
  double val_accuracy = 0;
};

struct TrainResult {
  std::vector<EpochRecord> history;
  int best_epoch = -1;
  double best_val_accuracy = 0;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

// Adam over shuffled mini-batches, validation after every epoch. On return
// the model holds the weights of the epoch with the best validation accuracy
// (earliest on ties; the last epoch when val is empty). Batches of a single
// sample are skipped because batch norm cannot train on them.
TrainResult train(Model& model, const Dataset& train_set, const Dataset& val_set,
                  const TrainConfig& cfg, const EpochCallback& on_epoch = {});

// Fake-class probability per sample, in dataset order.
std::vector<double> score(const Model& model, const Dataset& ds, std::size_t batch_size = 64);

double accuracy(std::span<const double> fake_prob, std::span<const int> labels);

// Equal error rate with label 1 as the positive class and higher scores
// meaning positive. Thresholds run over the sorted unique scores; the
// crossing of FPR and FNR is interpolated linearly.
double eer(std::span<const double> scores, std::span<const int> labels);

struct GeneratorMetrics {
  double accuracy = 0;
  double eer = 0;
  std::size_t fake_count = 0;
};

struct RunMetrics {
  std::map<std::string, GeneratorMetrics> per_generator;
  double overall_accuracy = 0;
  double aeer = 0;  // unweighted mean of per-generator EERs
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
  static RunMetrics from_json(const nlohmann::json& j);
};

// Per generator g: real samples vs fakes from g, accuracy at p_fake > 0.5 and
// EER of p_fake.
RunMetrics evaluate_scores(std::span<const double> fake_prob, std::span<const int> labels,
                           std::span<const std::string> generators,
                           std::span<const std::string> expected_generators = {});
RunMetrics evaluate(const Model& model, const Dataset& ds,
                    std::span<const std::string> expected_generators = {});

struct SeedSummary {
  double accuracy_max = 0, accuracy_mean = 0, accuracy_std = 0;
  double aeer_min = 0, aeer_mean = 0, aeer_std = 0;
  std::size_t n_seeds = 0;

  nlohmann::json to_json() const;
};

// Population standard deviations.
SeedSummary aggregate_runs(std::span<const RunMetrics> runs);

// "generator,accuracy,eer" rows at 17 significant digits.
void write_metrics_csv(const std::filesystem::path& path, const RunMetrics& metrics);

// Model weights plus sidecar metadata holding the model and feature configs.
void save_model(const std::filesystem::path& path, const Model& model, const FeatureConfig& features,
                const nlohmann::json& extra);
struct LoadedModel {
  Model model;
  FeatureConfig features;
  nlohmann::json meta;
};
LoadedModel load_model(const std::filesystem::path& path);

nlohmann::json to_json(const FeatureConfig& cfg);
FeatureConfig feature_config_from_json(const nlohmann::json& j);

}  // namespace wavefprint

#endif  // WAVEFPRINT_EVALUATE_H_
