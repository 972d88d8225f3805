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

#include "wavefprint/attribution.h"

#include <algorithm>
#include <cmath>

#include "wavefprint/errors.h"
#include "wavefprint/nn/ops.h"

namespace wavefprint {

double AttributionMap::relative_residual() const {
  const double scale = std::abs(output_delta);
  if (scale == 0) return completeness_residual == 0 ? 0.0 : INFINITY;
  return completeness_residual / scale;
}

double AttributionMap::row_mass(std::size_t bin) const {
  double s = 0;
  for (std::size_t c = 0; c < channels; ++c) {
    const double* row = values.data() + (c * bins + bin) * frames;
    for (std::size_t t = 0; t < frames; ++t) s += std::abs(row[t]);
  }
  return s;
}

AttributionMap integrated_gradients(const LogitFn& f, const FeatureTensor& input,
                                    const FeatureTensor& baseline, int steps, int target,
                                    std::string baseline_tag, std::size_t chunk) {
  if (steps < 1) throw Error(Errc::invalid_config, "integrated gradients needs steps >= 1");
  if (input.batch != 1 || baseline.shape() != input.shape()) {
    throw Error(Errc::shape, "input and baseline must be single samples of equal shape");
  }
  if (target < 0) throw Error(Errc::invalid_config, "target class must be nonnegative");
  chunk = std::max<std::size_t>(1, chunk);
  const std::size_t n = input.sample_size();
  const auto& x = input.data;
  const auto& x0 = baseline.data;

  std::vector<double> grad_sum(n, 0.0);
  for (int k0 = 0; k0 < steps; k0 += static_cast<int>(chunk)) {
    const int k1 = std::min(steps, k0 + static_cast<int>(chunk));
    const auto rows = static_cast<std::size_t>(k1 - k0);
    std::vector<double> points(rows * n);
    for (std::size_t r = 0; r < rows; ++r) {
      const double alpha = (static_cast<double>(k0) + static_cast<double>(r) + 0.5) / steps;
      for (std::size_t i = 0; i < n; ++i) points[r * n + i] = x0[i] + alpha * (x[i] - x0[i]);
    }
    nn::Tensor pts = nn::Tensor::from({rows, input.channels, input.bins, input.frames}, std::move(points), true);
    nn::Tensor out = nn::select_sum(f(pts), static_cast<std::size_t>(target));
    out.backward();
    const auto g = pts.grad();
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t i = 0; i < n; ++i) grad_sum[i] += g[r * n + i];
    }
  }

  AttributionMap map;
  map.channels = input.channels;
  map.bins = input.bins;
  map.frames = input.frames;
  map.steps = steps;
  map.target = target;
  map.baseline_tag = std::move(baseline_tag);
  map.values.resize(n);
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    map.values[i] = (x[i] - x0[i]) * grad_sum[i] / steps;
    total += map.values[i];
  }
  double fx = 0, fx0 = 0;
  {
    nn::NoGradGuard guard;
    const nn::Shape shape{1, input.channels, input.bins, input.frames};
    const nn::Tensor lx = f(nn::Tensor::from(shape, x));
    const nn::Tensor lx0 = f(nn::Tensor::from(shape, x0));
    const std::size_t k = lx.dim(1);
    if (static_cast<std::size_t>(target) >= k) throw Error(Errc::invalid_config, "target class out of range");
    fx = lx.data()[static_cast<std::size_t>(target)];
    fx0 = lx0.data()[static_cast<std::size_t>(target)];
  }
  map.output_delta = fx - fx0;
  map.completeness_residual = std::abs(total - map.output_delta);
  return map;
}

AttributionMap integrated_gradients(const Model& model, const FeatureTensor& input,
                                    const FeatureTensor& baseline, int steps, int target,
                                    std::string baseline_tag) {
  LogitFn f = [&model](const nn::Tensor& t) {
    nn::ForwardContext ctx;
    return model.forward(t, ctx);
  };
  return integrated_gradients(f, input, baseline, steps, target, std::move(baseline_tag));
}

AttributionMap average_maps(const std::vector<AttributionMap>& maps) {
  if (maps.empty()) throw Error(Errc::empty_data, "no attribution maps to average");
  AttributionMap out = maps.front();
  std::fill(out.values.begin(), out.values.end(), 0.0);
  out.completeness_residual = 0;
  out.output_delta = 0;
  out.n_samples = 0;
  for (const auto& m : maps) {
    if (m.values.size() != out.values.size()) throw Error(Errc::shape, "attribution maps differ in shape");
    for (std::size_t i = 0; i < m.values.size(); ++i) out.values[i] += m.values[i];
    out.completeness_residual += m.completeness_residual;
    out.output_delta += m.output_delta;
    out.n_samples += m.n_samples;
  }
  const double inv = 1.0 / static_cast<double>(maps.size());
  for (double& v : out.values) v *= inv;
  out.completeness_residual *= inv;
  out.output_delta *= inv;
  return out;
}

AttributionMap mean_attribution(const Model& model, const Dataset& ds, ClassFilter filter, std::size_t n,
                                int steps, const FeatureTensor& baseline, int target,
                                std::string baseline_tag) {
  if (filter == ClassFilter::both) {
    AttributionMap real = mean_attribution(model, ds, ClassFilter::real, n, steps, baseline, target, baseline_tag);
    AttributionMap fake = mean_attribution(model, ds, ClassFilter::fake, n, steps, baseline, target, baseline_tag);
    AttributionMap both = average_maps({real, fake});
    both.n_samples = real.n_samples + fake.n_samples;
    return both;
  }
  const int want = filter == ClassFilter::fake ? 1 : 0;
  std::vector<AttributionMap> maps;
  for (std::size_t i = 0; i < ds.size && maps.size() < n; ++i) {
    if (ds.labels[i] != want) continue;
    const std::size_t idx[1] = {i};
    maps.push_back(integrated_gradients(model, ds.features(idx), baseline, steps, target, baseline_tag));
  }
  if (maps.empty()) {
    throw Error(Errc::empty_class, std::string("no ") + (want ? "fake" : "real") + " samples to attribute");
  }
  return average_maps(maps);
}

}  // namespace wavefprint
