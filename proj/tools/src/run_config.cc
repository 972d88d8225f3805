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

#include "wavefprint_cli/run_config.h"

#include <algorithm>

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace wavefprint::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string option_key(const CLI::Option& opt) {
  const auto& names = opt.get_lnames();
  return names.empty() ? std::string() : names.front();
}

bool configurable(const CLI::Option& opt) {
  const std::string key = option_key(opt);
  return !key.empty() && key != "help" && key != "config";
}

std::uint64_t parse_u64(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw UsageError("bad seed list '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

std::map<std::string, std::string> parse_config(std::string_view text, std::string_view origin) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    const std::string where = std::string(origin) + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw UsageError(where + ": expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw UsageError(where + ": empty key");
    if (!out.emplace(key, trim(std::string_view(t).substr(eq + 1))).second) {
      throw UsageError(where + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

void apply_config(CLI::App& cmd, const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) {
    CLI::Option* opt = nullptr;
    for (CLI::Option* o : cmd.get_options()) {
      if (configurable(*o) && option_key(*o) == key) opt = o;
    }
    if (opt == nullptr) throw UsageError("unknown config key '" + key + "' for " + cmd.get_name());
    if (opt->count() > 0) continue;  // the command line wins
    try {
      if (opt->get_items_expected_max() > 1) {
        std::stringstream parts(value);
        std::string part;
        while (std::getline(parts, part, ',')) opt->add_result(trim(part));
      } else {
        opt->add_result(value);
      }
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  }
}

std::map<std::string, std::string> resolved_config(const CLI::App& cmd) {
  std::map<std::string, std::string> out;
  for (const CLI::Option* o : cmd.get_options()) {
    if (!configurable(*o)) continue;
    std::string value;
    if (o->count() > 0) {
      const auto& r = o->results();
      for (std::size_t i = 0; i < r.size(); ++i) value += (i ? "," : "") + r[i];
    } else if (o->get_type_size() == 0) {
      value = "false";
    } else {
      value = o->get_default_str();
      if (value == "{}") value.clear();
      if (value.size() >= 2 && value.front() == '[' && value.back() == ']') value = value.substr(1, value.size() - 2);
    }
    if (o->get_type_name() == "BOOLEAN") {
      if (value == "1") value = "true";
      if (value == "0") value = "false";
    }
    out[option_key(*o)] = value;
  }
  return out;
}

nlohmann::json to_json(const std::map<std::string, std::string>& config) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : config) j[k] = v;
  return j;
}

void write_config_file(const std::filesystem::path& path, const std::map<std::string, std::string>& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& [k, v] : config) {
    if (!v.empty()) out << k << " = " << v << "\n";
  }
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string item = trim(rest.substr(0, comma));
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(parse_u64(item, text));
    } else {
      const std::uint64_t lo = parse_u64(std::string_view(item).substr(0, dots), text);
      const std::uint64_t hi = parse_u64(std::string_view(item).substr(dots + 2), text);
      if (hi < lo) throw UsageError("empty seed range '" + std::string(text) + "'");
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  std::vector<std::uint64_t> sorted = seeds;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw UsageError("seed list '" + std::string(text) + "' repeats a seed");
  }
  return seeds;
}

}  // namespace wavefprint::cli
