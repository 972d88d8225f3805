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

#include "wavefprint_cli/cli.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "common.h"
#include "wavefprint/errors.h"
#include "wavefprint/parallel.h"
#include "wavefprint/provenance.h"
#include "wavefprint_cli/run_config.h"

namespace wavefprint::cli {

namespace {

int exit_code(Errc code) {
  switch (code) {
    case Errc::unknown_wavelet:
    case Errc::invalid_level:
    case Errc::invalid_config:
    case Errc::unsupported_combination:
      return kUsage;
    case Errc::malformed_header:
    case Errc::unsupported_codec:
    case Errc::empty_data:
    case Errc::io:
    case Errc::empty_class:
    case Errc::shape:
      return kDataError;
    case Errc::inversion_mismatch:
    case Errc::degenerate_batch:
    case Errc::undefined_metric:
    case Errc::numeric:
      return kNumericError;
  }
  return kDataError;
}

}  // namespace

void record_run(const Context& ctx, const fs::path& dir, const std::vector<fs::path>& inputs,
                const std::vector<fs::path>& outputs) {
  fs::create_directories(dir);
  const auto config = resolved_config(ctx.cmd);
  write_config_file(dir / "config.resolved", config);
  write_json(dir / "provenance.json", provenance_record(ctx.cmd.get_name(), to_json(config), inputs, outputs));
}

void FeatureFlags::add_to(CLI::App* app) {
  app->add_option("--transform", transform, "wpt or stft")->check(CLI::IsMember({"wpt", "stft"}));
  app->add_option("--wavelet", wavelet, "Wavelet for wpt features");
  app->add_option("--level", level, "Packet level; 8 gives 256 bins");
  app->add_flag("--signed", signed_channel, "Add the coefficient sign channel (wpt only)");
  app->add_option("--fft-size", fft_size, "STFT window length");
  app->add_option("--hop", hop, "STFT hop length");
}

FeatureConfig FeatureFlags::resolve() const {
  FeatureConfig cfg;
  cfg.transform = transform == "stft" ? FeatureTransform::stft : FeatureTransform::wpt;
  cfg.wavelet = wavelet;
  cfg.level = level;
  cfg.signed_channel = signed_channel;
  cfg.fft_size = fft_size;
  cfg.hop = hop;
  validate(cfg);
  return cfg;
}

void ModelFlags::add_to(CLI::App* app) {
  app->add_flag("--no-maxpool", no_maxpool, "Replace max-pooling with stride-2 convolutions");
  app->add_flag("--no-dropout", no_dropout, "Drop the dropout layer");
  app->add_flag("--no-dilation", no_dilation, "Use dilation 1 throughout");
  app->add_option("--dropout", dropout, "Dropout probability");
}

DcnnConfig ModelFlags::resolve(const FeatureConfig& features) const {
  DcnnConfig cfg = DcnnConfig::reference(feature_frames(features), features.signed_channel ? 2 : 1);
  cfg.bins = feature_bins(features);
  cfg.use_maxpool = !no_maxpool;
  cfg.use_dropout = !no_dropout;
  cfg.use_dilation = !no_dilation;
  cfg.dropout_p = dropout;
  return cfg;
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wavelet-packet audio deepfake detection and fingerprinting", "wavefprint"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  std::vector<Subcommand> commands{add_synth(app),   add_prepare(app), add_fingerprint(app),
                                   add_sonify(app),  add_train(app),   add_eval(app),
                                   add_attribute(app), add_report(app), add_selftest(app)};
  std::string config_path;
  unsigned threads = 0;
  for (auto& c : commands) {
    c.app->add_option("--config", config_path, "key = value settings file (default: $WAVEFPRINT_CONFIG)");
    c.app->add_option("--threads", threads, "Worker cap; 0 uses every core, 1 runs inline");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "wavefprint: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  for (auto& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      if (config_path.empty()) {
        if (const char* env = std::getenv("WAVEFPRINT_CONFIG"); env && *env) config_path = env;
      }
      if (!config_path.empty()) apply_config(*c.app, read_config_file(config_path));
      set_max_threads(threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads);
      Context ctx{out, err, *c.app};
      c.run(ctx);
      return kOk;
    } catch (const UsageError& e) {
      err << "wavefprint " << c.app->get_name() << ": " << e.what() << "\n";
      return kUsage;
    } catch (const Error& e) {
      err << "wavefprint " << c.app->get_name() << ": " << e.what() << "\n";
      return exit_code(e.code());
    } catch (const fs::filesystem_error& e) {
      err << "wavefprint " << c.app->get_name() << ": " << e.what() << "\n";
      return kDataError;
    } catch (const nlohmann::json::exception& e) {
      err << "wavefprint " << c.app->get_name() << ": " << e.what() << "\n";
      return kDataError;
    } catch (const std::runtime_error& e) {
      err << "wavefprint " << c.app->get_name() << ": " << e.what() << "\n";
      return kDataError;
    }
  }
  err << "wavefprint: no subcommand\n" << app.help();
  return kUsage;
}

}  // namespace wavefprint::cli
