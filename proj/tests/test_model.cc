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

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "dcnn_checks.h"
#include "oracles.h"
#include "wavefprint/errors.h"
#include "wavefprint/model.h"
#include "wavefprint/preprocess.h"
#include "wavefprint/rng.h"

namespace wavefprint {
namespace {

constexpr std::size_t kPublishedSym5Params = 239015;

std::size_t frames_for(const std::string& wavelet) {
  FeatureConfig fc;
  fc.wavelet = wavelet;
  return feature_frames(fc);
}

std::map<std::string, std::size_t> per_tensor_counts(const Model& m) {
  std::map<std::string, std::size_t> out;
  for (const auto& p : m.net.parameters()) out[p.name] = p.tensor.numel();
  return out;
}

FeatureTensor random_features(Rng& rng, std::size_t batch, std::size_t ch, std::size_t bins, std::size_t frames) {
  FeatureTensor f;
  f.batch = batch, f.channels = ch, f.bins = bins, f.frames = frames;
  f.data = oracle::random_vector(rng, batch * ch * bins * frames, -28, 0);
  return f;
}

TEST(Dcnn, ReferenceShapeTrace) {
  for (std::size_t frames : {89u, 95u, 101u}) {
    const Model m = Model::create(DcnnConfig::reference(frames), 0);
    Rng rng(frames);
    const nn::Tensor y = m.logits(random_features(rng, 4, 1, 256, frames));
    EXPECT_EQ(y.shape(), (nn::Shape{4, 2})) << frames;
  }
}

TEST(Dcnn, AblationVariantsKeepOutputShape) {
  Rng rng(1);
  const std::size_t frames = 95;
  for (int v = 0; v < 8; ++v) {
    DcnnConfig cfg = DcnnConfig::reference(frames);
    cfg.use_dilation = v & 1;
    cfg.use_maxpool = v & 2;
    cfg.use_dropout = v & 4;
    const Model m = Model::create(cfg, 3);
    EXPECT_EQ(m.logits(random_features(rng, 2, 1, 256, frames)).shape(), (nn::Shape{2, 2})) << v;
    EXPECT_EQ(count_params(m), testing::analytic_count(cfg).total()) << v;
  }
}

TEST(Dcnn, SignedTwoChannelInput) {
  Rng rng(2);
  const DcnnConfig cfg = DcnnConfig::reference(95, 2);
  const Model m = Model::create(cfg, 0);
  auto& conv = dynamic_cast<nn::Conv2d&>(m.net.layer(1));
  EXPECT_EQ(conv.weight().shape()[1], 2u);
  EXPECT_EQ(m.logits(random_features(rng, 3, 2, 256, 95)).shape(), (nn::Shape{3, 2}));
}

TEST(Dcnn, InfeasibleConfigThrows) {
  try {
    Model::create(DcnnConfig::reference(3), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_config);
  }
  DcnnConfig bad = DcnnConfig::reference(95);
  bad.in_channels = 3;
  EXPECT_THROW(Model::create(bad, 0), Error);
}

TEST(Dcnn, MismatchedFeaturesThrow) {
  Rng rng(3);
  const Model m = Model::create(DcnnConfig::reference(95), 0);
  EXPECT_THROW(m.logits(random_features(rng, 1, 1, 256, 89)), Error);
}

TEST(ParamCount, ReferenceWithinBandAndAnalytic) {
  const DcnnConfig cfg = DcnnConfig::reference(frames_for("sym5"));
  const Model m = Model::create(cfg, 0);
  const std::size_t n = count_params(m);
  EXPECT_EQ(n, testing::analytic_count(cfg).total());
  EXPECT_NEAR(static_cast<double>(n), static_cast<double>(kPublishedSym5Params), 0.1 * kPublishedSym5Params);
}

TEST(ParamCount, WaveletTapsOnlyAffectLinearLayer) {
  const Model a = Model::create(DcnnConfig::reference(frames_for("db2")), 0);
  const Model b = Model::create(DcnnConfig::reference(frames_for("coif8")), 0);
  ASSERT_NE(a.config.frames, b.config.frames);
  const auto ca = per_tensor_counts(a), cb = per_tensor_counts(b);
  ASSERT_EQ(ca.size(), cb.size());
  const std::string linear_weight = std::to_string(a.net.size() - 1) + ".weight";
  for (const auto& [name, count] : ca) {
    if (name == linear_weight) {
      EXPECT_LT(count, cb.at(name));
    } else {
      EXPECT_EQ(count, cb.at(name)) << name;
    }
  }
  EXPECT_EQ(testing::analytic_count(a.config).conv_part, testing::analytic_count(b.config).conv_part);
  EXPECT_LT(count_params(a), count_params(b));
}

TEST(Predict, RowsSumToOneAndDeterministic) {
  Rng rng(4);
  const Model m = Model::create(DcnnConfig::reference(95), 7);
  const FeatureTensor f = random_features(rng, 5, 1, 256, 95);
  const auto p = predict(m, f);
  ASSERT_EQ(p.size(), 10u);
  for (std::size_t b = 0; b < 5; ++b) EXPECT_NEAR(p[2 * b] + p[2 * b + 1], 1.0, 1e-9);
  EXPECT_EQ(p, predict(m, f));
}

TEST(Predict, UntrainedModelNearHalfOnAverage) {
  Rng rng(5);
  const Model m = Model::create(DcnnConfig::reference(95), 0);
  double mean_fake = 0;
  for (int chunk = 0; chunk < 8; ++chunk) {
    FeatureTensor f = random_features(rng, 32, 1, 256, 95);
    for (double& v : f.data) v = rng.uniform(-1, 1);
    const auto p = predict(m, f);
    for (std::size_t b = 0; b < 32; ++b) mean_fake += p[2 * b + 1] / 256;
  }
  EXPECT_NEAR(mean_fake, 0.5, 0.1);
}

TEST(Dcnn, ConfigJsonRoundTrip) {
  DcnnConfig cfg = DcnnConfig::reference(101, 2);
  cfg.use_dilation = false;
  cfg.dropout_p = 0.3;
  const DcnnConfig back = DcnnConfig::from_json(cfg.to_json());
  EXPECT_EQ(back.to_json(), cfg.to_json());
  EXPECT_THROW(DcnnConfig::from_json(nlohmann::json{{"bins", 3}}), Error);
}

TEST(Dcnn, SameSeedSameWeights) {
  const Model a = Model::create(DcnnConfig::reference(95), 11);
  const Model b = Model::create(DcnnConfig::reference(95), 11);
  const Model c = Model::create(DcnnConfig::reference(95), 12);
  const auto pa = a.net.parameters(), pb = b.net.parameters(), pc = c.net.parameters();
  bool differs = false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    EXPECT_TRUE(std::ranges::equal(pa[i].tensor.data(), pb[i].tensor.data()));
    differs = differs || !std::ranges::equal(pa[i].tensor.data(), pc[i].tensor.data());
  }
  EXPECT_TRUE(differs);
}

void expect_smooth_agreement(const testing::GradCheckResult& r, std::size_t min_smooth) {
  EXPECT_LT(r.rel_error, 1e-4) << r.worst;
  EXPECT_GE(r.checked, min_smooth) << r.skipped_kinks << " probes straddled a kink";
}

TEST(Gradients, ReducedReferenceDcnn) {
  DcnnConfig cfg = DcnnConfig::reference(12);
  cfg.bins = 16;
  expect_smooth_agreement(testing::dcnn_grad_check(cfg, 3, 0), 25000);  // of 29120 probes
  cfg.use_maxpool = false;
  cfg.use_dilation = false;
  expect_smooth_agreement(testing::dcnn_grad_check(cfg, 3, 0), 25000);
}

TEST(Gradients, FullSizeReferenceDcnnSampled) {
  expect_smooth_agreement(testing::dcnn_grad_check(DcnnConfig::reference(95), 2, 24), 40);  // of 320 probes
}

// At a 1e-6 step kink crossings are rare enough that no probe is excluded.
TEST(Gradients, FullSizeReferenceDcnnFineStepUnfiltered) {
  const auto r = testing::dcnn_grad_check(DcnnConfig::reference(95), 2, 6, 1e-6, false);
  EXPECT_LT(r.rel_error, 1e-4) << r.worst;
  EXPECT_EQ(r.skipped_kinks, 0u);
}

}  // namespace
}  // namespace wavefprint
