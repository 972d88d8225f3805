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

#include "wavefprint/evaluate.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>

#include "wavefprint/errors.h"
#include "wavefprint/nn/adam.h"
#include "wavefprint/nn/ops.h"
#include "wavefprint/parallel.h"

namespace wavefprint {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

FeatureTensor empty_like(const FeatureConfig& cfg, std::size_t batch) {
  FeatureTensor t;
  t.batch = batch;
  t.channels = cfg.signed_channel ? 2 : 1;
  t.bins = feature_bins(cfg);
  t.frames = feature_frames(cfg);
  t.transform_tag = cfg.tag();
  t.power_applied = cfg.power;
  t.epsilon = cfg.epsilon;
  t.data.resize(batch * t.sample_size());
  return t;
}

}  // namespace

Dataset in_memory_dataset(FeatureTensor features, std::vector<int> labels,
                          std::vector<std::string> generators) {
  if (labels.size() != features.batch || generators.size() != features.batch) {
    throw Error(Errc::shape, "labels and generators must match the feature batch");
  }
  Dataset ds;
  ds.size = features.batch;
  ds.labels = std::move(labels);
  ds.generators = std::move(generators);
  auto shared = std::make_shared<const FeatureTensor>(std::move(features));
  ds.features = [shared](std::span<const std::size_t> idx) { return gather(*shared, idx); };
  return ds;
}

Dataset manifest_dataset(const Manifest& manifest, Split split, const FeatureConfig& cfg, bool cache) {
  validate(cfg);
  Dataset ds;
  std::vector<ManifestEntry> entries;
  for (std::size_t i : manifest.indices(split)) entries.push_back(manifest.entries[i]);
  ds.size = entries.size();
  for (const auto& e : entries) {
    ds.labels.push_back(e.label == Label::fake ? 1 : 0);
    ds.generators.push_back(e.label == Label::fake ? e.generator : "");
  }
  struct State {
    std::vector<ManifestEntry> entries;
    FeatureConfig cfg;
    bool cache;
    std::mutex mutex;
    ClipLoader loader;
    std::vector<std::vector<double>> features;
  };
  auto state = std::make_shared<State>();
  state->entries = std::move(entries);
  state->cfg = cfg;
  state->cache = cache;
  state->loader = ClipLoader(cfg.sample_rate, static_cast<double>(cfg.clip_length) / cfg.sample_rate);
  if (cache) state->features.resize(state->entries.size());
  ds.features = [state](std::span<const std::size_t> idx) {
    std::lock_guard lock(state->mutex);
    FeatureTensor out = empty_like(state->cfg, idx.size());
    const std::size_t ss = out.sample_size();
    std::vector<std::size_t> todo;
    std::vector<std::vector<double>> clips(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= state->entries.size()) throw Error(Errc::shape, "dataset index out of range");
      if (state->cache && !state->features[idx[i]].empty()) {
        std::copy(state->features[idx[i]].begin(), state->features[idx[i]].end(),
                  out.data.begin() + static_cast<std::ptrdiff_t>(i * ss));
      } else {
        clips[i] = state->loader.load(state->entries[idx[i]]).samples;
        todo.push_back(i);
      }
    }
    parallel_for(todo.size(), [&](std::size_t t) {
      const std::size_t i = todo[t];
      featurize_into(clips[i], state->cfg, std::span<double>(out.data).subspan(i * ss, ss));
    });
    if (state->cache) {
      for (std::size_t i : todo) {
        state->features[idx[i]].assign(out.data.begin() + static_cast<std::ptrdiff_t>(i * ss),
                                       out.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * ss));
      }
    }
    return out;
  };
  return ds;
}

Dataset subset(const Dataset& ds, std::vector<std::size_t> indices) {
  Dataset out;
  out.size = indices.size();
  for (std::size_t i : indices) {
    out.labels.push_back(ds.labels.at(i));
    out.generators.push_back(ds.generators.at(i));
  }
  auto map = std::make_shared<const std::vector<std::size_t>>(std::move(indices));
  auto parent = ds.features;
  out.features = [map, parent](std::span<const std::size_t> idx) {
    std::vector<std::size_t> inner;
    inner.reserve(idx.size());
    for (std::size_t i : idx) inner.push_back(map->at(i));
    return parent(inner);
  };
  return out;
}

std::vector<double> score(const Model& model, const Dataset& ds, std::size_t batch_size) {
  std::vector<double> out;
  out.reserve(ds.size);
  for (std::size_t start = 0; start < ds.size; start += batch_size) {
    std::vector<std::size_t> idx;
    for (std::size_t i = start; i < std::min(ds.size, start + batch_size); ++i) idx.push_back(i);
    const std::vector<double> p = predict(model, ds.features(idx));
    for (std::size_t i = 0; i < idx.size(); ++i) out.push_back(p[2 * i + 1]);
  }
  return out;
}

double accuracy(std::span<const double> fake_prob, std::span<const int> labels) {
  if (fake_prob.size() != labels.size()) throw Error(Errc::shape, "scores and labels differ in length");
  if (labels.empty()) throw Error(Errc::undefined_metric, "accuracy of an empty set");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    correct += static_cast<std::size_t>((fake_prob[i] > 0.5 ? 1 : 0) == labels[i]);
  }
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

TrainResult train(Model& model, const Dataset& train_set, const Dataset& val_set, const TrainConfig& cfg,
                  const EpochCallback& on_epoch) {
  if (cfg.epochs < 1) throw Error(Errc::invalid_config, "epochs must be >= 1");
  if (train_set.size < 2) throw Error(Errc::empty_data, "training needs at least two samples");
  std::vector<nn::Tensor> params;
  for (auto& p : model.net.parameters()) params.push_back(p.tensor);
  nn::Adam adam(params, {cfg.lr, 0.9, 0.999, 1e-8, cfg.weight_decay});

  TrainResult result;
  std::vector<nn::StoredTensor> best;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto order = batch_indices(train_set.size, cfg.batch_size, cfg.seed, static_cast<std::uint64_t>(epoch));
    Rng rng(mix_seed(cfg.seed ^ 0xD20F0A7ULL, static_cast<std::uint64_t>(epoch)));
    double loss_sum = 0;
    std::size_t seen = 0;
    try {
      for (const auto& batch : order) {
        if (batch.size() < 2) continue;
        const FeatureTensor f = train_set.features(batch);
        std::vector<int> y;
        for (std::size_t i : batch) y.push_back(train_set.labels[i]);
        nn::ForwardContext ctx{true, &rng};
        nn::Tensor loss = nn::softmax_cross_entropy(model.forward(to_tensor(f), ctx), y);
        loss.backward();
        adam.step();
        adam.zero_grad();
        loss_sum += loss.item() * static_cast<double>(batch.size());
        seen += batch.size();
      }
    } catch (const Error& e) {
      if (e.code() != Errc::numeric) throw;
      throw Error(Errc::numeric, "training diverged in epoch " + std::to_string(epoch) + ": " + e.what());
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = seen ? loss_sum / static_cast<double>(seen) : 0.0;
    if (val_set.size > 0) rec.val_accuracy = accuracy(score(model, val_set), val_set.labels);
    result.history.push_back(rec);
    const bool improved = result.best_epoch < 0 ||
                          (val_set.size > 0 ? rec.val_accuracy > result.best_val_accuracy : true);
    if (improved) {
      result.best_epoch = epoch;
      result.best_val_accuracy = rec.val_accuracy;
      best = nn::snapshot(model.net.state());
    }
    if (on_epoch) on_epoch(rec);
  }
  nn::apply_checkpoint(nn::Checkpoint{best, {}}, model.net.state());
  return result;
}

double eer(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw Error(Errc::shape, "scores and labels differ in length");
  std::size_t n_pos = 0, n_neg = 0;
  for (int l : labels) {
    if (l == 1) {
      ++n_pos;
    } else if (l == 0) {
      ++n_neg;
    } else {
      throw Error(Errc::invalid_config, "labels must be 0 or 1");
    }
  }
  if (n_pos == 0 || n_neg == 0) throw Error(Errc::undefined_metric, "EER needs both classes");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Walk thresholds upward; at threshold t, samples with score >= t are
  // predicted positive. pos_below / neg_below count samples under t.
  std::vector<double> fpr, fnr;
  std::size_t pos_below = 0, neg_below = 0;
  for (std::size_t i = 0; i < order.size();) {
    fpr.push_back(static_cast<double>(n_neg - neg_below) / static_cast<double>(n_neg));
    fnr.push_back(static_cast<double>(pos_below) / static_cast<double>(n_pos));
    const double t = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == t; ++i) {
      (labels[order[i]] == 1 ? pos_below : neg_below) += 1;
    }
  }
  fpr.push_back(0.0);  // threshold above every score
  fnr.push_back(1.0);
  for (std::size_t i = 0; i + 1 < fpr.size(); ++i) {
    const double d0 = fpr[i] - fnr[i];
    const double d1 = fpr[i + 1] - fnr[i + 1];
    if (d0 == 0) return fpr[i];
    if (d0 > 0 && d1 <= 0) {
      const double alpha = d0 / (d0 - d1);
      return fpr[i] + alpha * (fpr[i + 1] - fpr[i]);
    }
  }
  return fpr.back();
}

nlohmann::json RunMetrics::to_json() const {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [g, m] : per_generator) {
    per[g] = {{"accuracy", m.accuracy}, {"eer", m.eer}, {"fake_count", m.fake_count}};
  }
  return {{"seed", seed},
          {"overall_accuracy", overall_accuracy},
          {"aeer", aeer},
          {"aeer_definition", "unweighted mean over generators of EER(real vs that generator)"},
          {"per_generator", per},
          {"warnings", warnings}};
}

RunMetrics RunMetrics::from_json(const nlohmann::json& j) {
  try {
    RunMetrics m;
    m.seed = j.at("seed").get<std::uint64_t>();
    m.overall_accuracy = j.at("overall_accuracy").get<double>();
    m.aeer = j.at("aeer").get<double>();
    for (const auto& [g, v] : j.at("per_generator").items()) {
      m.per_generator[g] = {v.at("accuracy").get<double>(), v.at("eer").get<double>(),
                            v.at("fake_count").get<std::size_t>()};
    }
    if (j.contains("warnings")) m.warnings = j.at("warnings").get<std::vector<std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_header, std::string("run metrics: ") + e.what());
  }
}

RunMetrics evaluate_scores(std::span<const double> fake_prob, std::span<const int> labels,
                           std::span<const std::string> generators,
                           std::span<const std::string> expected_generators) {
  if (fake_prob.size() != labels.size() || generators.size() != labels.size()) {
    throw Error(Errc::shape, "scores, labels and generators differ in length");
  }
  RunMetrics m;
  m.overall_accuracy = accuracy(fake_prob, labels);
  std::set<std::string> names(expected_generators.begin(), expected_generators.end());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) names.insert(generators[i]);
  }
  double eer_sum = 0;
  for (const auto& g : names) {
    std::vector<double> s;
    std::vector<int> y;
    std::size_t fakes = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == 0 || generators[i] == g) {
        s.push_back(fake_prob[i]);
        y.push_back(labels[i]);
        fakes += static_cast<std::size_t>(labels[i] == 1);
      }
    }
    if (fakes == 0) {
      m.warnings.push_back("generator '" + g + "' has no clips in this split; skipped");
      continue;
    }
    if (fakes == s.size()) {
      m.warnings.push_back("no real clips to pair with generator '" + g + "'; skipped");
      continue;
    }
    GeneratorMetrics gm;
    gm.accuracy = accuracy(s, y);
    gm.eer = eer(s, y);
    gm.fake_count = fakes;
    eer_sum += gm.eer;
    m.per_generator[g] = gm;
  }
  if (m.per_generator.empty()) throw Error(Errc::undefined_metric, "no generator could be evaluated");
  m.aeer = eer_sum / static_cast<double>(m.per_generator.size());
  return m;
}

RunMetrics evaluate(const Model& model, const Dataset& ds, std::span<const std::string> expected_generators) {
  if (ds.size == 0) throw Error(Errc::empty_data, "evaluation split is empty");
  const std::vector<double> p = score(model, ds);
  return evaluate_scores(p, ds.labels, ds.generators, expected_generators);
}

nlohmann::json SeedSummary::to_json() const {
  return {{"accuracy_max", accuracy_max}, {"accuracy_mean", accuracy_mean}, {"accuracy_std", accuracy_std},
          {"aeer_min", aeer_min},         {"aeer_mean", aeer_mean},         {"aeer_std", aeer_std},
          {"n_seeds", n_seeds},           {"std", "population"}};
}

SeedSummary aggregate_runs(std::span<const RunMetrics> runs) {
  if (runs.empty()) throw Error(Errc::empty_data, "no runs to aggregate");
  const double n = static_cast<double>(runs.size());
  SeedSummary s;
  s.n_seeds = runs.size();
  s.accuracy_max = runs[0].overall_accuracy;
  s.aeer_min = runs[0].aeer;
  double acc_sum = 0, aeer_sum = 0;
  for (const auto& r : runs) {
    s.accuracy_max = std::max(s.accuracy_max, r.overall_accuracy);
    s.aeer_min = std::min(s.aeer_min, r.aeer);
    acc_sum += r.overall_accuracy;
    aeer_sum += r.aeer;
  }
  s.accuracy_mean = acc_sum / n;
  s.aeer_mean = aeer_sum / n;
  double acc_ss = 0, aeer_ss = 0;
  for (const auto& r : runs) {
    acc_ss += (r.overall_accuracy - s.accuracy_mean) * (r.overall_accuracy - s.accuracy_mean);
    aeer_ss += (r.aeer - s.aeer_mean) * (r.aeer - s.aeer_mean);
  }
  s.accuracy_std = std::sqrt(acc_ss / n);
  s.aeer_std = std::sqrt(aeer_ss / n);
  return s;
}

void write_metrics_csv(const std::filesystem::path& path, const RunMetrics& metrics) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out << "generator,accuracy,eer\n";
  for (const auto& [g, m] : metrics.per_generator) {
    out << g << ',' << fmt17(m.accuracy) << ',' << fmt17(m.eer) << '\n';
  }
}

nlohmann::json to_json(const FeatureConfig& cfg) {
  return {{"transform", cfg.transform == FeatureTransform::wpt ? "wpt" : "stft"},
          {"wavelet", cfg.wavelet},
          {"level", cfg.level},
          {"power", cfg.power},
          {"signed", cfg.signed_channel},
          {"epsilon", cfg.epsilon},
          {"fft_size", cfg.fft_size},
          {"hop", cfg.hop},
          {"window", cfg.window == Window::hann ? "hann" : "rect"},
          {"clip_length", cfg.clip_length},
          {"sample_rate", cfg.sample_rate},
          {"tag", cfg.tag()}};
}

FeatureConfig feature_config_from_json(const nlohmann::json& j) {
  try {
    FeatureConfig c;
    c.transform = j.at("transform").get<std::string>() == "stft" ? FeatureTransform::stft : FeatureTransform::wpt;
    c.wavelet = j.at("wavelet").get<std::string>();
    c.level = j.at("level").get<int>();
    c.power = j.at("power").get<bool>();
    c.signed_channel = j.at("signed").get<bool>();
    c.epsilon = j.at("epsilon").get<double>();
    c.fft_size = j.at("fft_size").get<std::size_t>();
    c.hop = j.at("hop").get<std::size_t>();
    c.window = j.at("window").get<std::string>() == "rect" ? Window::rect : Window::hann;
    c.clip_length = j.at("clip_length").get<std::size_t>();
    c.sample_rate = j.at("sample_rate").get<double>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_config, std::string("feature config: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const Model& model, const FeatureConfig& features,
                const nlohmann::json& extra) {
  nlohmann::json meta = extra.is_object() ? extra : nlohmann::json::object();
  meta["model"] = model.config.to_json();
  meta["features"] = to_json(features);
  meta["param_count"] = count_params(model);
  nn::save_checkpoint(path, model.net.state(), meta);
}

LoadedModel load_model(const std::filesystem::path& path) {
  nn::Checkpoint ckpt = nn::load_checkpoint(path);
  if (!ckpt.meta.contains("model") || !ckpt.meta.contains("features")) {
    throw Error(Errc::malformed_header, path.string() + ".json lacks model or feature config");
  }
  LoadedModel out{Model::create(DcnnConfig::from_json(ckpt.meta.at("model")), 0),
                  feature_config_from_json(ckpt.meta.at("features")), ckpt.meta};
  nn::apply_checkpoint(ckpt, out.model.net.state());
  return out;
}

}  // namespace wavefprint
