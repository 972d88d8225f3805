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

#include "wavefprint/model.h"

#include "wavefprint/errors.h"
#include "wavefprint/nn/ops.h"

namespace wavefprint {

DcnnConfig DcnnConfig::reference(std::size_t frames, int in_channels) {
  DcnnConfig cfg;
  cfg.in_channels = in_channels;
  cfg.frames = frames;
  cfg.blocks = {{8, 3, 1, 1, true}, {16, 3, 2, 2, true}, {32, 3, 4, 4, false}, {72, 3, 8, 8, false}};
  cfg.permute_after = 3;
  return cfg;
}

nlohmann::json DcnnConfig::to_json() const {
  nlohmann::json blocks_json = nlohmann::json::array();
  for (const auto& b : blocks) {
    blocks_json.push_back({{"out_channels", b.out_channels},
                           {"kernel", b.kernel},
                           {"padding", b.padding},
                           {"dilation", b.dilation},
                           {"pool_after", b.pool_after}});
  }
  return {{"in_channels", in_channels}, {"bins", bins},
          {"frames", frames},           {"blocks", blocks_json},
          {"permute_after", permute_after}, {"use_maxpool", use_maxpool},
          {"use_dropout", use_dropout}, {"use_dilation", use_dilation},
          {"dropout_p", dropout_p}};
}

DcnnConfig DcnnConfig::from_json(const nlohmann::json& j) {
  try {
    DcnnConfig cfg;
    cfg.in_channels = j.at("in_channels").get<int>();
    cfg.bins = j.at("bins").get<std::size_t>();
    cfg.frames = j.at("frames").get<std::size_t>();
    for (const auto& b : j.at("blocks")) {
      cfg.blocks.push_back({b.at("out_channels").get<int>(), b.at("kernel").get<int>(),
                            b.at("padding").get<int>(), b.at("dilation").get<int>(),
                            b.at("pool_after").get<bool>()});
    }
    cfg.permute_after = j.at("permute_after").get<int>();
    cfg.use_maxpool = j.at("use_maxpool").get<bool>();
    cfg.use_dropout = j.at("use_dropout").get<bool>();
    cfg.use_dilation = j.at("use_dilation").get<bool>();
    cfg.dropout_p = j.at("dropout_p").get<double>();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_config, std::string("model config: ") + e.what());
  }
}

nn::Sequential build_dcnn(const DcnnConfig& cfg, std::uint64_t seed) {
  if (cfg.in_channels < 1 || cfg.in_channels > 2) {
    throw Error(Errc::invalid_config, "in_channels must be 1 or 2");
  }
  if (cfg.blocks.empty()) throw Error(Errc::invalid_config, "model needs at least one conv block");
  if (cfg.permute_after >= static_cast<int>(cfg.blocks.size())) {
    throw Error(Errc::invalid_config, "permute_after points past the last block");
  }
  if (cfg.use_dropout && !(cfg.dropout_p >= 0 && cfg.dropout_p < 1)) {
    throw Error(Errc::invalid_config, "dropout_p must be in [0, 1)");
  }
  nn::Sequential net;
  std::size_t channels = static_cast<std::size_t>(cfg.in_channels);
  for (std::size_t i = 0; i < cfg.blocks.size(); ++i) {
    const ConvBlock& b = cfg.blocks[i];
    if (b.out_channels < 1 || b.kernel < 1 || b.padding < 0 || b.dilation < 1) {
      throw Error(Errc::invalid_config, "conv block " + std::to_string(i) + " has invalid sizes");
    }
    nn::Conv2dOptions o;
    o.dilation = cfg.use_dilation ? b.dilation : 1;
    o.padding = cfg.use_dilation ? b.padding : (b.kernel - 1) / 2;
    o.stride = (b.pool_after && !cfg.use_maxpool) ? 2 : 1;
    net.add<nn::BatchNorm2d>(channels);
    net.add<nn::Conv2d>(channels, static_cast<std::size_t>(b.out_channels), b.kernel, o);
    net.add<nn::PReLU>();
    channels = static_cast<std::size_t>(b.out_channels);
    if (b.pool_after && cfg.use_maxpool) net.add<nn::MaxPool2d>(2);
    if (static_cast<int>(i) == cfg.permute_after) net.add<nn::Permute12>();
  }
  if (cfg.use_dropout) net.add<nn::Dropout>(cfg.dropout_p);
  net.add<nn::Flatten>();

  const nn::Shape in{1, static_cast<std::size_t>(cfg.in_channels), cfg.bins, cfg.frames};
  nn::Shape flat;
  try {
    flat = net.output_shape(in);
  } catch (const Error& e) {
    throw Error(Errc::invalid_config, std::string("model collapses for this input: ") + e.what());
  }
  net.add<nn::Linear>(flat[1], 2);

  Rng rng(seed);
  net.reset_parameters(rng);
  return net;
}

std::size_t count_params(const Model& model) { return nn::count_params(model.net); }

Model Model::create(const DcnnConfig& cfg, std::uint64_t seed) {
  return Model{cfg, build_dcnn(cfg, seed)};
}

nn::Tensor to_tensor(const FeatureTensor& features, bool requires_grad) {
  return nn::Tensor::from(features.shape(), features.data, requires_grad);
}

nn::Tensor Model::logits(const FeatureTensor& features) const {
  if (features.channels != static_cast<std::size_t>(config.in_channels) || features.bins != config.bins ||
      features.frames != config.frames) {
    throw Error(Errc::shape, "features [" + std::to_string(features.channels) + ", " +
                                 std::to_string(features.bins) + ", " + std::to_string(features.frames) +
                                 "] do not match the model input");
  }
  nn::NoGradGuard guard;
  nn::ForwardContext ctx;
  return net.forward(to_tensor(features), ctx);
}

std::vector<double> predict(const Model& model, const FeatureTensor& features) {
  return nn::softmax_rows(model.logits(features));
}

}  // namespace wavefprint
