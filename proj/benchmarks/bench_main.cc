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

#include <benchmark/benchmark.h>

#include <vector>

#include "wavefprint/evaluate.h"
#include "wavefprint/fingerprint.h"
#include "wavefprint/model.h"
#include "wavefprint/nn/ops.h"
#include "wavefprint/preprocess.h"
#include "wavefprint/rng.h"
#include "wavefprint/transforms.h"
#include "wavefprint/wavelets.h"

namespace wavefprint {
namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform(-1, 1);
  return x;
}

nn::Tensor random_tensor(nn::Shape shape, std::uint64_t seed, bool grad = false) {
  return nn::Tensor::from(shape, noise(nn::numel(shape), seed), grad);
}

// Args: wavelet index into {haar, db4, sym5, coif4}, level.
const char* const kWavelets[] = {"haar", "db4", "sym5", "coif4"};

void BM_Wpt(benchmark::State& state) {
  const FilterBank fb = get_filter_bank(kWavelets[state.range(0)]);
  const int level = static_cast<int>(state.range(1));
  const auto x = noise(22050, 1);
  for (auto _ : state) benchmark::DoNotOptimize(wpt(x, fb, level));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
  state.SetLabel(fb.name);
}
BENCHMARK(BM_Wpt)->Args({0, 8})->Args({2, 8})->Args({3, 8})->Args({0, 14})->Unit(benchmark::kMillisecond);

void BM_Iwpt(benchmark::State& state) {
  const FilterBank fb = get_filter_bank(kWavelets[state.range(0)]);
  const PacketGrid g = wpt(noise(22050, 2), fb, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(iwpt(g, fb));
  state.SetLabel(fb.name);
}
BENCHMARK(BM_Iwpt)->Args({0, 8})->Args({2, 8})->Unit(benchmark::kMillisecond);

void BM_Stft(benchmark::State& state) {
  const auto x = noise(22050, 3);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stft(x, Window::hann, n, 220));
}
BENCHMARK(BM_Stft)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_RfftMag(benchmark::State& state) {
  const auto x = noise(22050, 4);
  for (auto _ : state) benchmark::DoNotOptimize(rfft_mag(x));
}
BENCHMARK(BM_RfftMag)->Unit(benchmark::kMicrosecond);

void BM_Featurize(benchmark::State& state) {
  const std::vector<std::vector<double>> clips{noise(22050, 5)};
  FeatureConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(featurize(clips, cfg));
}
BENCHMARK(BM_Featurize)->Unit(benchmark::kMillisecond);

// Args: dilation.
void BM_Conv2dForward(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const nn::Tensor x = random_tensor({1, 16, 64, 24}, 6);
  const nn::Tensor w = random_tensor({32, 16, 3, 3}, 7), b = random_tensor({32}, 8);
  const nn::Conv2dOptions o{1, d, d};
  nn::NoGradGuard guard;
  for (auto _ : state) benchmark::DoNotOptimize(nn::conv2d(x, w, b, o));
}
BENCHMARK(BM_Conv2dForward)->Arg(1)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_Conv2dBackward(benchmark::State& state) {
  const nn::Tensor x = random_tensor({1, 16, 64, 24}, 6, true);
  const nn::Tensor w = random_tensor({32, 16, 3, 3}, 7, true), b = random_tensor({32}, 8, true);
  const nn::Conv2dOptions o{1, 2, 2};
  for (auto _ : state) {
    nn::Tensor y = nn::conv2d(x, w, b, o);
    nn::weighted_sum(y, std::vector<double>(y.numel(), 1.0)).backward();
  }
}
BENCHMARK(BM_Conv2dBackward)->Unit(benchmark::kMicrosecond);

// Args: batch size. Reference network on sym5 level-8 features.
void BM_DcnnForward(benchmark::State& state) {
  const Model m = Model::create(DcnnConfig::reference(95), 0);
  FeatureTensor f;
  f.batch = static_cast<std::size_t>(state.range(0)), f.channels = 1, f.bins = 256, f.frames = 95;
  f.data = noise(f.batch * 256 * 95, 9);
  for (auto _ : state) benchmark::DoNotOptimize(predict(m, f));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DcnnForward)->Arg(1)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_DcnnTrainStep(benchmark::State& state) {
  Model m = Model::create(DcnnConfig::reference(95), 0);
  const std::size_t batch = static_cast<std::size_t>(state.range(0));
  const nn::Tensor x = random_tensor({batch, 1, 256, 95}, 10);
  std::vector<int> labels(batch);
  for (std::size_t i = 0; i < batch; ++i) labels[i] = static_cast<int>(i % 2);
  Rng rng(11);
  for (auto _ : state) {
    nn::ForwardContext ctx{true, &rng};
    nn::softmax_cross_entropy(m.net.forward(x, ctx), labels).backward();
    for (auto& p : m.net.parameters()) p.tensor.zero_grad();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DcnnTrainStep)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Eer(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = noise(n, 12);
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<int>(i % 2);
  for (auto _ : state) benchmark::DoNotOptimize(eer(s, y));
}
BENCHMARK(BM_Eer)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace wavefprint

BENCHMARK_MAIN();
