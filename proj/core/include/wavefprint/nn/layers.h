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

#ifndef WAVEFPRINT_NN_LAYERS_H_
#define WAVEFPRINT_NN_LAYERS_H_

#include <memory>
#include <string>
#include <vector>

#include "wavefprint/nn/ops.h"
#include "wavefprint/nn/tensor.h"
#include "wavefprint/rng.h"

namespace wavefprint::nn {

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

struct ForwardContext {
  bool training = false;
  Rng* rng = nullptr;  // required by dropout in training mode
};

class Layer {
 public:
  virtual ~Layer() = default;
  virtual Tensor forward(const Tensor& x, ForwardContext& ctx) = 0;
  virtual Shape output_shape(const Shape& in) const = 0;
  virtual std::string describe() const = 0;
  // Learnable tensors.
  virtual void parameters(std::vector<NamedTensor>& /*out*/, const std::string& /*prefix*/) {}
  // Non-learnable state saved with checkpoints (running statistics).
  virtual void buffers(std::vector<NamedTensor>& /*out*/, const std::string& /*prefix*/) {}
  virtual void reset_parameters(Rng& /*rng*/) {}
};

class BatchNorm2d : public Layer {
 public:
  explicit BatchNorm2d(std::size_t channels, double momentum = 0.1, double eps = 1e-5);
  Tensor forward(const Tensor& x, ForwardContext& ctx) override;
  Shape output_shape(const Shape& in) const override;
  std::string describe() const override;
  void parameters(std::vector<NamedTensor>& out, const std::string& prefix) override;
  void buffers(std::vector<NamedTensor>& out, const std::string& prefix) override;
  void reset_parameters(Rng& rng) override;

 private:
  std::size_t channels_;
  double momentum_, eps_;
  Tensor gamma_, beta_, running_mean_, running_var_;
};

class Conv2d : public Layer {
 public:
  Conv2d(std::size_t in_channels, std::size_t out_channels, int kernel, Conv2dOptions options);
  Tensor forward(const Tensor& x, ForwardContext& ctx) override;
  Shape output_shape(const Shape& in) const override;
  std::string describe() const override;
  void parameters(std::vector<NamedTensor>& out, const std::string& prefix) override;
  void reset_parameters(Rng& rng) override;

  Tensor& weight() { return weight_; }
  Tensor& bias() { return bias_; }

 private:
  std::size_t in_, out_;
  int kernel_;
  Conv2dOptions options_;
  Tensor weight_, bias_;
};

class PReLU : public Layer {
 public:
  explicit PReLU(double init = 0.25);
  Tensor forward(const Tensor& x, ForwardContext& ctx) override;
  Shape output_shape(const Shape& in) const override { return in; }
  std::string describe() const override { return "PReLU"; }
  void parameters(std::vector<NamedTensor>& out, const std::string& prefix) override;
  void reset_parameters(Rng& rng) override;

 private:
  double init_;
  Tensor slope_;
};

class MaxPool2d : public Layer {
 public:
  explicit MaxPool2d(int kernel = 2) : kernel_(kernel) {}
  Tensor forward(const Tensor& x, ForwardContext& ctx) override;
  Shape output_shape(const Shape& in) const override;
  std::string describe() const override;

 private:
  int kernel_;
};

class Dropout : public Layer {
 public:
  explicit Dropout(double p) : p_(p) {}
  Tensor forward(const Tensor& x, ForwardContext& ctx) override;
  Shape output_shape(const Shape& in) const override { return in; }
  std::string describe() const override;

 private:
  double p_;
};

class Permute12 : public Layer {
 public:
  Tensor forward(const Tensor& x, ForwardContext& ctx) override;
  Shape output_shape(const Shape& in) const override;
  std::string describe() const override { return "Permute(1,2)"; }
};

class Flatten : public Layer {
 public:
  Tensor forward(const Tensor& x, ForwardContext& ctx) override;
  Shape output_shape(const Shape& in) const override;
  std::string describe() const override { return "Flatten"; }
};

class Linear : public Layer {
 public:
  Linear(std::size_t in_features, std::size_t out_features);
  Tensor forward(const Tensor& x, ForwardContext& ctx) override;
  Shape output_shape(const Shape& in) const override;
  std::string describe() const override;
  void parameters(std::vector<NamedTensor>& out, const std::string& prefix) override;
  void reset_parameters(Rng& rng) override;

  Tensor& weight() { return weight_; }
  Tensor& bias() { return bias_; }

 private:
  std::size_t in_, out_;
  Tensor weight_, bias_;
};

class Sequential {
 public:
  Sequential() = default;
  Sequential(Sequential&&) = default;
  Sequential& operator=(Sequential&&) = default;

  template <typename L, typename... Args>
  L& add(Args&&... args) {
    auto layer = std::make_unique<L>(std::forward<Args>(args)...);
    L& ref = *layer;
    layers_.push_back(std::move(layer));
    return ref;
  }

  Tensor forward(const Tensor& x, ForwardContext& ctx) const;
  Shape output_shape(Shape in) const;

  // Names are "<layer index>.<tensor>", e.g. "1.weight".
  std::vector<NamedTensor> parameters() const;
  std::vector<NamedTensor> buffers() const;
  std::vector<NamedTensor> state() const;  // parameters then buffers
  void reset_parameters(Rng& rng);
  void zero_grad();

  std::size_t size() const { return layers_.size(); }
  Layer& layer(std::size_t i) const { return *layers_.at(i); }

 private:
  std::vector<std::unique_ptr<Layer>> layers_;
};

// Learnable scalar count.
std::size_t count_params(const Sequential& net);

}  // namespace wavefprint::nn

#endif  // WAVEFPRINT_NN_LAYERS_H_
