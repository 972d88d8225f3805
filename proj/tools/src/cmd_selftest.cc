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
#include <memory>
#include <string>
#include <vector>

#include "common.h"
#include "wavefprint/attribution.h"
#include "wavefprint/errors.h"
#include "wavefprint/evaluate.h"
#include "wavefprint/nn/ops.h"
#include "wavefprint/rng.h"
#include "wavefprint/transforms.h"
#include "wavefprint/wavelets.h"

namespace wavefprint::cli {

namespace {

struct Check {
  std::string name;
  double value = 0;
  double tolerance = 0;
};

Check admissibility() {
  Check c{"filter banks admissible", 0, AdmissibilityReport::kTolerance};
  for (const auto& name : supported_wavelets()) {
    const auto r = verify_admissibility(get_filter_bank(name));
    c.value = std::max(c.value, r.passed ? r.worst() : INFINITY);
  }
  return c;
}

Check reconstruction(std::uint64_t seed) {
  Check c{"wpt/iwpt reconstruction", 0, 1e-10};
  Rng rng(seed);
  for (const auto& name : supported_wavelets()) {
    const FilterBank fb = get_filter_bank(name);
    for (int level : {1, 3, 6}) {
      std::vector<double> x(1000 + rng.below(201));
      for (double& v : x) v = rng.uniform(-1, 1);
      const auto y = iwpt(wpt(x, fb, level), fb);
      for (std::size_t i = 0; i < x.size(); ++i) c.value = std::max(c.value, std::abs(y[i] - x[i]));
    }
  }
  return c;
}

// Sweeps every threshold and reports max(FPR, FNR) bracketing at the crossing.
double brute_force_eer(const std::vector<double>& s, const std::vector<int>& y) {
  std::vector<double> th(s);
  th.push_back(INFINITY);
  std::sort(th.begin(), th.end());
  th.erase(std::unique(th.begin(), th.end()), th.end());
  double np = 0, nn = 0;
  for (int l : y) (l ? np : nn) += 1;
  double prev_fpr = 1, prev_fnr = 0;
  for (double t : th) {
    double fp = 0, fn = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] >= t && !y[i]) fp += 1;
      if (s[i] < t && y[i]) fn += 1;
    }
    const double fpr = fp / nn, fnr = fn / np;
    if (fpr <= fnr) {
      const double d0 = prev_fpr - prev_fnr, d1 = fpr - fnr;
      return d0 == d1 ? fpr : prev_fpr + d0 / (d0 - d1) * (fpr - prev_fpr);
    }
    prev_fpr = fpr, prev_fnr = fnr;
  }
  return prev_fpr;
}

Check eer_oracle(std::uint64_t seed) {
  Check c{"EER vs threshold sweep", 0, 1e-12};
  Rng rng(seed);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 10 + rng.below(41);
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<int>(i % 2);
      s[i] = std::round(rng.uniform(0, 1) * 20) / 20 + 0.2 * y[i];
    }
    c.value = std::max(c.value, std::abs(eer(s, y) - brute_force_eer(s, y)));
  }
  return c;
}

// conv -> batch norm (training statistics) -> linear; smooth everywhere.
Check gradient(std::uint64_t seed) {
  Check c{"smooth net gradient", 0, 1e-4};
  Rng rng(seed);
  auto random = [&](nn::Shape shape) {
    std::vector<double> v(nn::numel(shape));
    for (double& x : v) x = rng.uniform(-1, 1);
    return nn::Tensor::from(std::move(shape), std::move(v), true);
  };
  nn::Tensor x = random({2, 1, 6, 5}), w = random({3, 1, 3, 3}), b = random({3});
  nn::Tensor gamma = random({3}), beta = random({3}), lw = random({2, 90}), lb = random({2});
  std::vector<double> proj(4);
  for (double& v : proj) v = rng.uniform(-1, 1);
  nn::Conv2dOptions o;
  o.padding = 1;
  auto objective = [&]() {
    std::vector<double> rm(3, 0.0), rv(3, 1.0);
    const auto h = nn::batch_norm2d(nn::conv2d(x, w, b, o), gamma, beta, rm, rv, true);
    return nn::weighted_sum(nn::linear(nn::flatten(h), lw, lb), proj);
  };
  objective().backward();
  const double step = 1e-3;
  double d2 = 0, a2 = 0, n2 = 0;
  for (nn::Tensor* t : {&x, &w, &gamma, &lw}) {
    const std::vector<double> analytic(t->grad().begin(), t->grad().end());
    for (std::size_t i = 0; i < t->numel(); ++i) {
      double& v = t->mutable_data()[i];
      const double saved = v;
      nn::NoGradGuard guard;
      v = saved + step;
      const double up = objective().item();
      v = saved - step;
      const double down = objective().item();
      v = saved;
      const double num = (up - down) / (2 * step);
      d2 += (num - analytic[i]) * (num - analytic[i]), a2 += analytic[i] * analytic[i], n2 += num * num;
    }
  }
  c.value = std::sqrt(d2) / std::max(std::sqrt(a2) + std::sqrt(n2), 1e-300);
  return c;
}

Check ig_linear(std::uint64_t seed) {
  Check c{"integrated gradients on linear model", 0, 1e-12};
  Rng rng(seed);
  const std::size_t n = 24;
  std::vector<double> wv(2 * n);
  for (double& v : wv) v = rng.uniform(-1, 1);
  const nn::Tensor w = nn::Tensor::from({2, n}, wv), b = nn::Tensor::from({2}, {0.1, -0.2});
  const LogitFn f = [&](const nn::Tensor& t) { return nn::linear(nn::flatten(t), w, b); };
  FeatureTensor x, base;
  for (FeatureTensor* ft : {&x, &base}) {
    ft->batch = 1, ft->channels = 1, ft->bins = 4, ft->frames = 6;
    ft->data.resize(n);
    for (double& v : ft->data) v = rng.uniform(-2, 2);
  }
  const AttributionMap m = integrated_gradients(f, x, base, 7, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = (x.data[i] - base.data[i]) * wv[n + i];
    c.value = std::max(c.value, std::abs(m.values[i] - expected));
  }
  return c;
}

}  // namespace

Subcommand add_selftest(CLI::App& root) {
  auto seed = std::make_shared<std::uint64_t>(0);
  CLI::App* app = root.add_subcommand("selftest", "Quick numerical invariant checks");
  app->add_option("--seed", *seed, "Seed for the random probes");
  return {app, [seed](Context& ctx) {
            const std::vector<Check> checks{admissibility(), reconstruction(*seed), eer_oracle(*seed),
                                            gradient(*seed), ig_linear(*seed)};
            bool ok = true;
            for (const auto& c : checks) {
              const bool pass = c.value < c.tolerance;
              ok = ok && pass;
              ctx.out << (pass ? "ok   " : "FAIL ") << c.name << "  " << c.value << " < " << c.tolerance
                      << "\n";
            }
            if (!ok) throw Error(Errc::numeric, "selftest failed");
          }};
}

}  // namespace wavefprint::cli
