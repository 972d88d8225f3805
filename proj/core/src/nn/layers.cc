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

#include "wavefprint/nn/layers.h"

#include <cmath>

#include "wavefprint/errors.h"

namespace wavefprint::nn {

namespace {

constexpr double kPreluInit = 0.25;

// Kaiming-uniform bound for fan-in with the PReLU gain at its initial slope.
double kaiming_bound(std::size_t fan_in) {
  const double gain = std::sqrt(2.0 / (1.0 + kPreluInit * kPreluInit));
  return gain * std::sqrt(3.0 / static_cast<double>(fan_in));
}

void fill_uniform(Tensor& t, double bound, Rng& rng) {
  for (double& v : t.values()) v = rng.uniform(-bound, bound);
}

}  // namespace

BatchNorm2d::BatchNorm2d(std::size_t channels, double momentum, double eps)
    : channels_(channels),
      momentum_(momentum),
      eps_(eps),
      gamma_(Tensor::full({channels}, 1.0, true)),
      beta_(Tensor::zeros({channels}, true)),
      running_mean_(Tensor::zeros({channels})),
      running_var_(Tensor::full({channels}, 1.0)) {}

Tensor BatchNorm2d::forward(const Tensor& x, ForwardContext& ctx) {
  return batch_norm2d(x, gamma_, beta_, running_mean_.values(), running_var_.values(), ctx.training,
                      momentum_, eps_);
}

Shape BatchNorm2d::output_shape(const Shape& in) const {
  if (in.size() != 4 || in[1] != channels_) {
    throw Error(Errc::invalid_config, "BatchNorm2d(" + std::to_string(channels_) + ") cannot take " + to_string(in));
  }
  return in;
}

std::string BatchNorm2d::describe() const { return "BatchNorm2d(" + std::to_string(channels_) + ")"; }

void BatchNorm2d::parameters(std::vector<NamedTensor>& out, const std::string& prefix) {
  out.push_back({prefix + "gamma", gamma_});
  out.push_back({prefix + "beta", beta_});
}

void BatchNorm2d::buffers(std::vector<NamedTensor>& out, const std::string& prefix) {
  out.push_back({prefix + "running_mean", running_mean_});
  out.push_back({prefix + "running_var", running_var_});
}

void BatchNorm2d::reset_parameters(Rng&) {
  std::fill(gamma_.values().begin(), gamma_.values().end(), 1.0);
  std::fill(beta_.values().begin(), beta_.values().end(), 0.0);
  std::fill(running_mean_.values().begin(), running_mean_.values().end(), 0.0);
  std::fill(running_var_.values().begin(), running_var_.values().end(), 1.0);
}

Conv2d::Conv2d(std::size_t in_channels, std::size_t out_channels, int kernel, Conv2dOptions options)
    : in_(in_channels),
      out_(out_channels),
      kernel_(kernel),
      options_(options),
      weight_(Tensor::zeros({out_channels, in_channels, static_cast<std::size_t>(kernel),
                             static_cast<std::size_t>(kernel)},
                            true)),
      bias_(Tensor::zeros({out_channels}, true)) {}

Tensor Conv2d::forward(const Tensor& x, ForwardContext&) { return conv2d(x, weight_, bias_, options_); }

Shape Conv2d::output_shape(const Shape& in) const {
  if (in.size() != 4 || in[1] != in_) {
    throw Error(Errc::invalid_config, describe() + " cannot take " + to_string(in));
  }
  const long h = conv_out_size(static_cast<long>(in[2]), kernel_, options_);
  const long w = conv_out_size(static_cast<long>(in[3]), kernel_, options_);
  if (h < 1 || w < 1) throw Error(Errc::invalid_config, describe() + " collapses input " + to_string(in));
  return {in[0], out_, static_cast<std::size_t>(h), static_cast<std::size_t>(w)};
}

std::string Conv2d::describe() const {
  return "Conv2d(" + std::to_string(in_) + "->" + std::to_string(out_) + ", k" + std::to_string(kernel_) +
         ", s" + std::to_string(options_.stride) + ", p" + std::to_string(options_.padding) + ", d" +
         std::to_string(options_.dilation) + ")";
}

void Conv2d::parameters(std::vector<NamedTensor>& out, const std::string& prefix) {
  out.push_back({prefix + "weight", weight_});
  out.push_back({prefix + "bias", bias_});
}

void Conv2d::reset_parameters(Rng& rng) {
  fill_uniform(weight_, kaiming_bound(in_ * static_cast<std::size_t>(kernel_ * kernel_)), rng);
  std::fill(bias_.values().begin(), bias_.values().end(), 0.0);
}

PReLU::PReLU(double init) : init_(init), slope_(Tensor::full({1}, init, true)) {}

Tensor PReLU::forward(const Tensor& x, ForwardContext&) { return prelu(x, slope_); }

void PReLU::parameters(std::vector<NamedTensor>& out, const std::string& prefix) {
  out.push_back({prefix + "slope", slope_});
}

void PReLU::reset_parameters(Rng&) { slope_.values()[0] = init_; }

Tensor MaxPool2d::forward(const Tensor& x, ForwardContext&) { return max_pool2d(x, kernel_, kernel_); }

Shape MaxPool2d::output_shape(const Shape& in) const {
  const auto k = static_cast<std::size_t>(kernel_);
  if (in.size() != 4 || in[2] < k || in[3] < k) {
    throw Error(Errc::invalid_config, describe() + " collapses input " + to_string(in));
  }
  return {in[0], in[1], in[2] / k, in[3] / k};
}

std::string MaxPool2d::describe() const { return "MaxPool2d(" + std::to_string(kernel_) + ")"; }

Tensor Dropout::forward(const Tensor& x, ForwardContext& ctx) {
  if (ctx.training && p_ > 0 && ctx.rng == nullptr) {
    throw Error(Errc::invalid_config, "dropout in training mode needs a random generator");
  }
  if (!ctx.training) return x;
  return dropout(x, p_, true, *ctx.rng);
}

std::string Dropout::describe() const { return "Dropout(" + std::to_string(p_) + ")"; }

Tensor Permute12::forward(const Tensor& x, ForwardContext&) { return permute_1_2(x); }

Shape Permute12::output_shape(const Shape& in) const {
  if (in.size() != 4) throw Error(Errc::invalid_config, "Permute(1,2) needs a rank-4 input");
  return {in[0], in[2], in[1], in[3]};
}

Tensor Flatten::forward(const Tensor& x, ForwardContext&) { return flatten(x); }

Shape Flatten::output_shape(const Shape& in) const {
  std::size_t rest = 1;
  for (std::size_t i = 1; i < in.size(); ++i) rest *= in[i];
  return {in.at(0), rest};
}

Linear::Linear(std::size_t in_features, std::size_t out_features)
    : in_(in_features),
      out_(out_features),
      weight_(Tensor::zeros({out_features, in_features}, true)),
      bias_(Tensor::zeros({out_features}, true)) {}

Tensor Linear::forward(const Tensor& x, ForwardContext&) { return linear(x, weight_, bias_); }

Shape Linear::output_shape(const Shape& in) const {
  if (in.size() != 2 || in[1] != in_) throw Error(Errc::invalid_config, describe() + " cannot take " + to_string(in));
  return {in[0], out_};
}

std::string Linear::describe() const {
  return "Linear(" + std::to_string(in_) + "->" + std::to_string(out_) + ")";
}

void Linear::parameters(std::vector<NamedTensor>& out, const std::string& prefix) {
  out.push_back({prefix + "weight", weight_});
  out.push_back({prefix + "bias", bias_});
}

void Linear::reset_parameters(Rng& rng) {
  fill_uniform(weight_, kaiming_bound(in_), rng);
  std::fill(bias_.values().begin(), bias_.values().end(), 0.0);
}

Tensor Sequential::forward(const Tensor& x, ForwardContext& ctx) const {
  Tensor h = x;
  for (const auto& layer : layers_) h = layer->forward(h, ctx);
  return h;
}

Shape Sequential::output_shape(Shape in) const {
  for (const auto& layer : layers_) in = layer->output_shape(in);
  return in;
}

std::vector<NamedTensor> Sequential::parameters() const {
  std::vector<NamedTensor> out;
  for (std::size_t i = 0; i < layers_.size(); ++i) layers_[i]->parameters(out, std::to_string(i) + ".");
  return out;
}

std::vector<NamedTensor> Sequential::buffers() const {
  std::vector<NamedTensor> out;
  for (std::size_t i = 0; i < layers_.size(); ++i) layers_[i]->buffers(out, std::to_string(i) + ".");
  return out;
}

std::vector<NamedTensor> Sequential::state() const {
  std::vector<NamedTensor> out = parameters();
  for (auto& b : buffers()) out.push_back(std::move(b));
  return out;
}

void Sequential::reset_parameters(Rng& rng) {
  for (auto& layer : layers_) layer->reset_parameters(rng);
}

void Sequential::zero_grad() {
  for (auto& p : parameters()) p.tensor.zero_grad();
}

std::size_t count_params(const Sequential& net) {
  std::size_t n = 0;
  for (const auto& p : net.parameters()) n += p.tensor.numel();
  return n;
}

}  // namespace wavefprint::nn
