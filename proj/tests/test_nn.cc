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
#include <filesystem>
#include <fstream>
#include <numeric>
#include <vector>

#include "gradcheck.h"
#include "oracles.h"
#include "wavefprint/errors.h"
#include "wavefprint/nn/adam.h"
#include "wavefprint/nn/checkpoint.h"
#include "wavefprint/nn/layers.h"
#include "wavefprint/nn/ops.h"
#include "wavefprint/rng.h"

namespace wavefprint {
namespace {

using nn::Tensor;
using testing::grad_check;

constexpr double kGradTol = 1e-4;

Tensor random_tensor(Rng& rng, nn::Shape shape, bool grad = true, double lo = -1, double hi = 1) {
  return Tensor::from(shape, oracle::random_vector(rng, nn::numel(shape), lo, hi), grad);
}

// Values bounded away from zero so a +-1e-3 probe never crosses a kink.
Tensor away_from_zero(Rng& rng, nn::Shape shape) {
  std::vector<double> v(nn::numel(shape));
  for (double& x : v) x = (rng.below(2) ? 1 : -1) * rng.uniform(0.05, 1.0);
  return Tensor::from(shape, v, true);
}

// Distinct values spaced 0.01 apart so pooling maxima are never tied.
Tensor distinct_values(Rng& rng, nn::Shape shape) {
  std::vector<double> v(nn::numel(shape));
  std::iota(v.begin(), v.end(), 0.0);
  for (double& x : v) x *= 0.01;
  rng.shuffle(std::span<double>(v));
  return Tensor::from(shape, v, true);
}

TEST(Conv2d, OnesKernelCenterAndCorners) {
  const Tensor x = Tensor::full({1, 1, 3, 3}, 1.0);
  const Tensor w = Tensor::full({1, 1, 3, 3}, 1.0);
  const Tensor b = Tensor::zeros({1});
  const Tensor y = nn::conv2d(x, w, b, {1, 1, 1});
  ASSERT_EQ(y.shape(), (nn::Shape{1, 1, 3, 3}));
  EXPECT_EQ(y.data()[4], 9.0);
  for (std::size_t i : {0u, 2u, 6u, 8u}) EXPECT_EQ(y.data()[i], 4.0);
  for (std::size_t i : {1u, 3u, 5u, 7u}) EXPECT_EQ(y.data()[i], 6.0);
}

TEST(Conv2d, UnitKernelIsIdentity) {
  Rng rng(1);
  const Tensor x = random_tensor(rng, {2, 3, 4, 5}, false);
  std::vector<double> w(9, 0.0);
  for (int c = 0; c < 3; ++c) w[c * 3 + c] = 1.0;
  const Tensor y = nn::conv2d(x, Tensor::from({3, 3, 1, 1}, w), Tensor::zeros({3}), {});
  EXPECT_EQ(std::vector<double>(y.data().begin(), y.data().end()), std::vector<double>(x.data().begin(), x.data().end()));
}

TEST(Conv2d, DilatedRampMatchesDirectSum) {
  std::vector<double> ramp(25);
  std::iota(ramp.begin(), ramp.end(), 0.0);
  Rng rng(2);
  const auto w = oracle::random_vector(rng, 9);
  const Tensor y = nn::conv2d(Tensor::from({1, 1, 5, 5}, ramp), Tensor::from({1, 1, 3, 3}, w),
                              Tensor::from({1}, {0.3}), {1, 2, 2});
  std::size_t ho, wo;
  const auto ref = oracle::conv2d(ramp, 1, 1, 5, 5, w, 1, 3, 3, {0.3}, 1, 2, 2, ho, wo);
  ASSERT_EQ(y.shape(), (nn::Shape{1, 1, ho, wo}));
  EXPECT_LT(oracle::max_abs_diff(std::vector<double>(y.data().begin(), y.data().end()), ref), 1e-12);
}

TEST(Conv2d, RandomConfigurationsMatchDirectSum) {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t b = 1 + rng.below(3), cin = 1 + rng.below(5), cout = 1 + rng.below(30);
    const std::size_t h = 3 + rng.below(12), w = 3 + rng.below(12);
    const std::size_t k = 1 + 2 * rng.below(2);
    const int stride = 1 + static_cast<int>(rng.below(2));
    const int dil = 1 << rng.below(3);
    const int pad = static_cast<int>(rng.below(3)) * dil;
    if (static_cast<long>(h) + 2 * pad - dil * static_cast<long>(k - 1) - 1 < 0) continue;
    if (static_cast<long>(w) + 2 * pad - dil * static_cast<long>(k - 1) - 1 < 0) continue;
    const auto x = oracle::random_vector(rng, b * cin * h * w);
    const auto wt = oracle::random_vector(rng, cout * cin * k * k);
    const auto bias = oracle::random_vector(rng, cout);
    std::size_t ho, wo;
    const auto ref = oracle::conv2d(x, b, cin, h, w, wt, cout, k, k, bias, stride, pad, dil, ho, wo);
    const Tensor y = nn::conv2d(Tensor::from({b, cin, h, w}, x), Tensor::from({cout, cin, k, k}, wt),
                                Tensor::from({cout}, bias), {stride, pad, dil});
    ASSERT_EQ(y.shape(), (nn::Shape{b, cout, ho, wo}));
    EXPECT_LT(oracle::max_abs_diff(std::vector<double>(y.data().begin(), y.data().end()), ref), 1e-12) << trial;
  }
}

TEST(Conv2d, CollapsedOutputThrows) {
  try {
    nn::conv2d(Tensor::zeros({1, 1, 2, 2}), Tensor::zeros({1, 1, 3, 3}), Tensor::zeros({1}), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::shape);
  }
}

TEST(Conv2d, DilationEqualsZeroInflatedKernelExactly) {
  Rng rng(4);
  for (int d : {2, 4, 8}) {
    const std::size_t cin = 3, cout = 5, k = 3, ki = (k - 1) * d + 1;
    const Tensor x = random_tensor(rng, {2, cin, 20, 19}, false);
    const auto w = oracle::random_vector(rng, cout * cin * k * k);
    std::vector<double> inflated(cout * cin * ki * ki, 0.0);
    for (std::size_t o = 0; o < cout * cin; ++o)
      for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v) inflated[(o * ki + u * d) * ki + v * d] = w[(o * k + u) * k + v];
    const Tensor bias = random_tensor(rng, {cout}, false);
    const Tensor a = nn::conv2d(x, Tensor::from({cout, cin, k, k}, w), bias, {1, d, d});
    const Tensor b = nn::conv2d(x, Tensor::from({cout, cin, ki, ki}, inflated), bias, {1, d, 1});
    ASSERT_EQ(a.shape(), b.shape());
    for (std::size_t i = 0; i < a.numel(); ++i) ASSERT_EQ(a.data()[i], b.data()[i]) << "dilation " << d << " at " << i;
  }
}

TEST(Conv2d, GradientsAcrossDilations) {
  Rng rng(5);
  for (int d : {1, 2, 4, 8}) {
    for (int stride : {1, 2}) {
      std::vector<Tensor> in{random_tensor(rng, {2, 3, 9, 10}), random_tensor(rng, {4, 3, 3, 3}),
                             random_tensor(rng, {4})};
      const nn::Conv2dOptions o{stride, d, d};
      const auto r = grad_check([&](std::vector<Tensor>& t) { return nn::conv2d(t[0], t[1], t[2], o); }, in, 10 + d);
      EXPECT_LT(r.rel_error, kGradTol) << "dilation " << d << " stride " << stride << " " << r.worst;
    }
  }
}

TEST(BatchNorm, TrainingNormalizesPerChannel) {
  Rng rng(6);
  const Tensor x = random_tensor(rng, {4, 3, 5, 5}, false, -3, 7);
  std::vector<double> rm(3, 0.0), rv(3, 1.0);
  const Tensor y = nn::batch_norm2d(x, Tensor::full({3}, 1.0), Tensor::zeros({3}), rm, rv, true);
  for (std::size_t c = 0; c < 3; ++c) {
    double s = 0, s2 = 0;
    std::size_t n = 0;
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t i = 0; i < 25; ++i) {
        const double v = y.data()[(b * 3 + c) * 25 + i];
        s += v, s2 += v * v, ++n;
      }
    const double mean = s / n;
    EXPECT_NEAR(mean, 0.0, 1e-12);
    EXPECT_NEAR(s2 / n - mean * mean, 1.0, 1e-4);  // eps = 1e-5 shrinks the variance slightly
  }
  // Running stats moved 10% toward the batch statistics.
  double m0 = 0;
  for (std::size_t b = 0; b < 4; ++b)
    for (std::size_t i = 0; i < 25; ++i) m0 += x.data()[(b * 3) * 25 + i];
  EXPECT_NEAR(rm[0], 0.1 * m0 / 100, 1e-12);
}

TEST(BatchNorm, EvalIsAffineWithUnitStats) {
  Rng rng(7);
  const Tensor x = random_tensor(rng, {2, 2, 3, 3}, false);
  std::vector<double> rm(2, 0.0), rv(2, 1.0);
  const Tensor g = Tensor::from({2}, {2.0, -0.5}), b = Tensor::from({2}, {0.1, 0.7});
  const Tensor y = nn::batch_norm2d(x, g, b, rm, rv, false);
  for (std::size_t i = 0; i < x.numel(); ++i) {
    const std::size_t c = (i / 9) % 2;
    EXPECT_NEAR(y.data()[i], g.data()[c] * x.data()[i] / std::sqrt(1 + 1e-5) + b.data()[c], 1e-12);
  }
}

TEST(BatchNorm, SingleSampleTrainingThrows) {
  std::vector<double> rm(1, 0.0), rv(1, 1.0);
  try {
    nn::batch_norm2d(Tensor::zeros({1, 1, 2, 2}), Tensor::full({1}, 1.0), Tensor::zeros({1}), rm, rv, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_batch);
  }
}

TEST(BatchNorm, GradientsTrainingAndEval) {
  Rng rng(8);
  for (bool training : {true, false}) {
    std::vector<Tensor> in{random_tensor(rng, {2, 3, 4, 4}), random_tensor(rng, {3}, true, 0.5, 1.5),
                           random_tensor(rng, {3})};
    std::vector<double> rm{0.1, -0.2, 0.3}, rv{1.2, 0.8, 1.1};
    const auto r = grad_check(
        [&](std::vector<Tensor>& t) {
          std::vector<double> m = rm, v = rv;
          return nn::batch_norm2d(t[0], t[1], t[2], m, v, training);
        },
        in, 20);
    EXPECT_LT(r.rel_error, kGradTol) << "training " << training << " " << r.worst;
  }
}

TEST(Prelu, ValuesAndIdentity) {
  const Tensor y = nn::prelu(Tensor::from({2}, {-2.0, 3.0}), Tensor::from({1}, {0.25}));
  EXPECT_EQ(y.data()[0], -0.5);
  EXPECT_EQ(y.data()[1], 3.0);
  Rng rng(9);
  const Tensor x = random_tensor(rng, {10}, false);
  const Tensor id = nn::prelu(x, Tensor::from({1}, {1.0}));
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(id.data()[i], x.data()[i]);
}

TEST(Prelu, SlopeGradientIsNegativePartSum) {
  Rng rng(10);
  Tensor x = away_from_zero(rng, {3, 7});
  Tensor a = Tensor::from({1}, {0.25}, true);
  const auto g = oracle::random_vector(rng, 21);
  nn::weighted_sum(nn::prelu(x, a), g).backward();
  double expected = 0;
  for (std::size_t i = 0; i < 21; ++i)
    if (x.data()[i] < 0) expected += x.data()[i] * g[i];
  EXPECT_NEAR(a.grad()[0], expected, 1e-12);
  const auto r = grad_check([](std::vector<Tensor>& t) { return nn::prelu(t[0], t[1]); },
                            {away_from_zero(rng, {2, 3, 4}), Tensor::from({1}, {0.25}, true)}, 30);
  EXPECT_LT(r.rel_error, kGradTol) << r.worst;
}

TEST(MaxPool, ValuesFloorAndGradient) {
  const Tensor y = nn::max_pool2d(Tensor::from({1, 1, 2, 2}, {1, 2, 3, 4}));
  ASSERT_EQ(y.numel(), 1u);
  EXPECT_EQ(y.item(), 4.0);
  EXPECT_EQ(nn::max_pool2d(Tensor::zeros({2, 3, 5, 7})).shape(), (nn::Shape{2, 3, 2, 3}));
  Rng rng(11);
  const auto r = grad_check([](std::vector<Tensor>& t) { return nn::max_pool2d(t[0]); },
                            {distinct_values(rng, {2, 2, 5, 6})}, 40);
  EXPECT_LT(r.rel_error, kGradTol) << r.worst;
}

TEST(Dropout, IdentityCasesAndExpectation) {
  Rng rng(12);
  const Tensor x = random_tensor(rng, {10}, false, 0.5, 1.5);
  const Tensor p0 = nn::dropout(x, 0.0, true, rng);
  const Tensor ev = nn::dropout(x, 0.7, false, rng);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(p0.data()[i], x.data()[i]);
    EXPECT_EQ(ev.data()[i], x.data()[i]);
  }
  std::vector<double> mean(10, 0.0);
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    const Tensor y = nn::dropout(x, 0.5, true, rng);
    for (std::size_t i = 0; i < 10; ++i) mean[i] += y.data()[i] / trials;
  }
  for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(mean[i] / x.data()[i], 1.0, 0.01) << i;
}

TEST(Dropout, GradientWithFixedMask) {
  Rng rng(13);
  const auto r = grad_check(
      [](std::vector<Tensor>& t) {
        Rng mask(99);
        return nn::dropout(t[0], 0.3, true, mask);
      },
      {random_tensor(rng, {3, 8})}, 50);
  EXPECT_LT(r.rel_error, kGradTol) << r.worst;
}

TEST(Linear, ValuesAndGradient) {
  const Tensor y = nn::linear(Tensor::from({1, 2}, {1, 2}), Tensor::from({2, 2}, {1, 0, 3, 4}), Tensor::from({2}, {0.5, -1}));
  EXPECT_EQ(y.data()[0], 1.5);
  EXPECT_EQ(y.data()[1], 10.0);
  Rng rng(14);
  const auto r = grad_check([](std::vector<Tensor>& t) { return nn::linear(t[0], t[1], t[2]); },
                            {random_tensor(rng, {3, 6}), random_tensor(rng, {4, 6}), random_tensor(rng, {4})}, 60);
  EXPECT_LT(r.rel_error, kGradTol) << r.worst;
}

TEST(Permute, TwiceIsIdentityAndGradient) {
  Rng rng(15);
  const Tensor x = random_tensor(rng, {2, 3, 4, 5}, false);
  const Tensor p = nn::permute_1_2(x);
  EXPECT_EQ(p.shape(), (nn::Shape{2, 4, 3, 5}));
  EXPECT_EQ(p.data()[((1 * 4 + 2) * 3 + 1) * 5 + 3], x.data()[((1 * 3 + 1) * 4 + 2) * 5 + 3]);
  const Tensor pp = nn::permute_1_2(p);
  EXPECT_EQ(std::vector<double>(pp.data().begin(), pp.data().end()), std::vector<double>(x.data().begin(), x.data().end()));
  const auto r = grad_check([](std::vector<Tensor>& t) { return nn::permute_1_2(t[0]); },
                            {random_tensor(rng, {2, 3, 4, 5})}, 70);
  EXPECT_LT(r.rel_error, kGradTol) << r.worst;
  const auto f = grad_check([](std::vector<Tensor>& t) { return nn::flatten(t[0]); },
                            {random_tensor(rng, {2, 3, 2, 2})}, 71);
  EXPECT_LT(f.rel_error, kGradTol) << f.worst;
}

TEST(CrossEntropy, ValuesStabilityAndGradient) {
  const std::vector<int> zero{0};
  EXPECT_NEAR(nn::softmax_cross_entropy(Tensor::from({1, 2}, {0, 0}), zero).item(), std::log(2.0), 1e-15);
  const double big = nn::softmax_cross_entropy(Tensor::from({1, 2}, {1000, 0}), zero).item();
  EXPECT_TRUE(std::isfinite(big));
  EXPECT_NEAR(big, 0.0, 1e-15);
  EXPECT_NEAR(nn::softmax_cross_entropy(Tensor::from({1, 2}, {0, 1000}), zero).item(), 1000.0, 1e-9);
  const std::vector<int> bad{2};
  EXPECT_THROW(nn::softmax_cross_entropy(Tensor::from({1, 2}, {0, 0}), bad), Error);

  Rng rng(16);
  const std::vector<int> labels{0, 1, 1, 0};
  const auto r = grad_check([&](std::vector<Tensor>& t) { return nn::softmax_cross_entropy(t[0], labels); },
                            {random_tensor(rng, {4, 2}, true, -2, 2)}, 80);
  EXPECT_LT(r.rel_error, 1e-6) << r.worst;

  // Closed form: (softmax - onehot) / B.
  Tensor z = random_tensor(rng, {4, 2});
  nn::softmax_cross_entropy(z, labels).backward();
  const auto p = nn::softmax_rows(z);
  for (std::size_t i = 0; i < 8; ++i) {
    const double onehot = static_cast<int>(i % 2) == labels[i / 2] ? 1.0 : 0.0;
    EXPECT_NEAR(z.grad()[i], (p[i] - onehot) / 4, 1e-15);
  }
}

TEST(Composite, SmallNetworkGradient) {
  Rng rng(17);
  std::vector<Tensor> in{random_tensor(rng, {2, 2, 8, 6}),   // x
                         random_tensor(rng, {2}, true, 0.5, 1.5),  // bn gamma
                         random_tensor(rng, {2}),                  // bn beta
                         random_tensor(rng, {3, 2, 3, 3}),         // conv w
                         random_tensor(rng, {3}),                  // conv b
                         Tensor::from({1}, {0.25}, true),          // prelu
                         random_tensor(rng, {2, 4 * 3 * 3}),       // linear w
                         random_tensor(rng, {2})};
  const std::vector<int> labels{1, 0};
  const auto r = grad_check(
      [&](std::vector<Tensor>& t) {
        std::vector<double> rm(2, 0.0), rv(2, 1.0);
        Tensor h = nn::batch_norm2d(t[0], t[1], t[2], rm, rv, true);
        h = nn::prelu(nn::conv2d(h, t[3], t[4], {1, 2, 2}), t[5]);
        h = nn::max_pool2d(h);
        h = nn::flatten(nn::permute_1_2(h));
        return nn::softmax_cross_entropy(nn::linear(h, t[6], t[7]), labels);
      },
      in, 90);
  EXPECT_LT(r.rel_error, kGradTol) << r.worst;
}

TEST(Guard, NanThrowsNumeric) {
  try {
    nn::linear(Tensor::from({1, 1}, {NAN}), Tensor::from({1, 1}, {1.0}), Tensor::zeros({1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::numeric);
  }
}

TEST(Adam, OneStepClosedForm) {
  Tensor w = Tensor::from({1}, {1.0}, true);
  nn::Adam opt({w}, {.lr = 4e-4, .weight_decay = 0});
  w.grad_buffer()[0] = 1.0;
  opt.step();
  EXPECT_NEAR(w.item(), 1 - 4e-4 * (1 / (1 + 1e-8)), 1e-15);
  EXPECT_EQ(opt.steps(), 1);
}

TEST(Adam, ZeroGradientLeavesParameter) {
  Tensor w = Tensor::from({3}, {1.0, -2.0, 0.5}, true);
  nn::Adam opt({w}, {.weight_decay = 0});
  for (int i = 0; i < 5; ++i) {
    w.grad_buffer().assign(3, 0.0);
    opt.step();
  }
  EXPECT_EQ(w.values(), (std::vector<double>{1.0, -2.0, 0.5}));
}

TEST(Adam, WeightDecayCoupledToGradient) {
  Tensor w = Tensor::from({1}, {2.0}, true);
  nn::Adam opt({w}, {.lr = 0.1, .weight_decay = 0.5});
  w.grad_buffer()[0] = 0.0;
  opt.step();
  // g = 0 + 0.5 * 2 = 1: the first step moves by lr regardless of scale.
  EXPECT_NEAR(w.item(), 2.0 - 0.1 / (1 + 1e-8), 1e-12);
  EXPECT_NEAR(opt.first_moments()[0][0], 0.1, 1e-15);
  EXPECT_NEAR(opt.second_moments()[0][0], 0.001, 1e-15);
}

TEST(Adam, DeterministicTrajectories) {
  auto run = [] {
    Rng rng(18);
    Tensor w = random_tensor(rng, {5});
    nn::Adam opt({w}, {});
    for (int i = 0; i < 50; ++i) {
      opt.zero_grad();
      nn::weighted_sum(nn::prelu(w, Tensor::from({1}, {0.3})), oracle::random_vector(rng, 5)).backward();
      opt.step();
      for (double v : opt.second_moments()[0]) EXPECT_GE(v, 0.0);
    }
    return w.values();
  };
  EXPECT_EQ(run(), run());
}

TEST(Checkpoint, RoundTripThroughDisk) {
  const auto dir = std::filesystem::temp_directory_path() / "wavefprint_ckpt_test";
  std::filesystem::create_directories(dir);
  Rng rng(19);
  nn::Sequential net;
  net.add<nn::BatchNorm2d>(2);
  net.add<nn::Conv2d>(2, 3, 3, nn::Conv2dOptions{1, 1, 1});
  net.add<nn::PReLU>();
  net.reset_parameters(rng);
  for (auto& [name, t] : net.state())
    for (double& v : t.values()) v = rng.normal();
  nlohmann::json meta{{"note", "x"}};
  nn::save_checkpoint(dir / "m.wfp", net.state(), meta);
  std::ifstream raw(dir / "m.wfp", std::ios::binary);
  char magic[4];
  raw.read(magic, 4);
  EXPECT_EQ(std::string(magic, 4), "WFP1");

  nn::Sequential other;
  other.add<nn::BatchNorm2d>(2);
  other.add<nn::Conv2d>(2, 3, 3, nn::Conv2dOptions{1, 1, 1});
  other.add<nn::PReLU>();
  const nn::Checkpoint ck = nn::load_checkpoint(dir / "m.wfp");
  EXPECT_EQ(ck.meta["note"], "x");
  nn::apply_checkpoint(ck, other.state());
  const auto a = net.state(), b = other.state();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_TRUE(std::ranges::equal(a[i].tensor.data(), b[i].tensor.data())) << a[i].name;
  }
  nn::Sequential wrong;
  wrong.add<nn::Linear>(3, 2);
  EXPECT_THROW(nn::apply_checkpoint(ck, wrong.state()), Error);
  std::filesystem::remove_all(dir);
}

TEST(Layers, CountParamsLinear) {
  nn::Sequential net;
  net.add<nn::Linear>(10, 2);
  EXPECT_EQ(nn::count_params(net), 22u);
}

}  // namespace
}  // namespace wavefprint
