// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/config.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace joinfer {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw std::invalid_argument("bad number for " + key + ": " + v);
  return out;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& v) {
  Int out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("bad integer for " + key + ": " + v);
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("bad boolean for " + key + ": " + v);
}

// Shortest text that parses back to the same double.
std::string exact(double v) {
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::stod(buf) == v) break;
  }
  return buf;
}

struct Key {
  const char* name;
  const char* help;
  std::function<void(PipelineConfig&, const std::string&)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      {"containment_threshold", "minimum inclusion ratio for a candidate join",
       [](auto& c, const auto& v) { c.containment_threshold = to_double("containment_threshold", v); },
       [](const auto& c) { return exact(c.containment_threshold); }},
      {"uniq_threshold", "distinct ratio at which a column counts as a key",
       [](auto& c, const auto& v) { c.uniq_threshold = to_double("uniq_threshold", v); },
       [](const auto& c) { return exact(c.uniq_threshold); }},
      {"min_probability", "candidates below this probability are left out of the graph",
       [](auto& c, const auto& v) { c.min_probability = to_double("min_probability", v); },
       [](const auto& c) { return exact(c.min_probability); }},
      {"tau", "recall stage probability cutoff in [0,1]",
       [](auto& c, const auto& v) { c.tau = to_double("tau", v); },
       [](const auto& c) { return exact(c.tau); }},
      {"penalty", "cost of each extra component, >= 0",
       [](auto& c, const auto& v) { c.penalty = to_double("penalty", v); },
       [](const auto& c) { return exact(c.penalty); }},
      {"log_base", "edge weight logarithm base (fixed at 2)",
       [](auto& c, const auto& v) { c.log_base = to_int<int>("log_base", v); },
       [](const auto& c) { return std::to_string(c.log_base); }},
      {"model_path", "trained local model file",
       [](auto& c, const auto& v) { c.model_path = v; },
       [](const auto& c) { return c.model_path; }},
      {"seed", "seed for sampling, splitting and generation",
       [](auto& c, const auto& v) { c.seed = to_int<std::uint64_t>("seed", v); },
       [](const auto& c) { return std::to_string(c.seed); }},
      {"row_cap", "maximum rows read per table (0 = unlimited)",
       [](auto& c, const auto& v) { c.row_cap = to_int<std::size_t>("row_cap", v); },
       [](const auto& c) { return std::to_string(c.row_cap); }},
      {"verbosity", "0 quiet, 1 progress, 2 solver trace",
       [](auto& c, const auto& v) { c.verbosity = to_int<int>("verbosity", v); },
       [](const auto& c) { return std::to_string(c.verbosity); }},
      {"equivalence", "score N:1 joins modulo 1:1-equivalent columns",
       [](auto& c, const auto& v) { c.equivalence = to_bool("equivalence", v); },
       [](const auto& c) { return std::string(c.equivalence ? "true" : "false"); }},
      {"timeout_ms", "branch-and-bound time limit per case",
       [](auto& c, const auto& v) { c.timeout_ms = to_int<long>("timeout_ms", v); },
       [](const auto& c) { return std::to_string(c.timeout_ms); }},
      {"max_nodes", "branch-and-bound node limit per case",
       [](auto& c, const auto& v) { c.max_nodes = to_int<std::size_t>("max_nodes", v); },
       [](const auto& c) { return std::to_string(c.max_nodes); }},
  };
  return k;
}

}  // namespace

void PipelineConfig::validate() const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(containment_threshold)) throw std::invalid_argument("containment_threshold not in [0,1]");
  if (!unit(uniq_threshold)) throw std::invalid_argument("uniq_threshold not in [0,1]");
  if (!(min_probability > 0.0 && min_probability <= 1.0)) {
    throw std::invalid_argument("min_probability not in (0,1]");
  }
  if (!unit(tau)) throw std::invalid_argument("tau not in [0,1]");
  if (!(penalty >= 0.0)) throw std::invalid_argument("penalty must be >= 0");
  if (log_base != 2) throw std::invalid_argument("log_base is fixed at 2");
  if (timeout_ms <= 0) throw std::invalid_argument("timeout_ms must be positive");
  if (max_nodes == 0) throw std::invalid_argument("max_nodes must be positive");
}

std::string describe_config_keys() {
  std::string out;
  for (const auto& k : keys()) out += std::string(k.name) + ": " + k.help + "\n";
  return out;
}

void set_config_value(PipelineConfig& config, const std::string& key, const std::string& value) {
  for (const auto& k : keys()) {
    if (key == k.name) {
      k.set(config, value);
      return;
    }
  }
  throw std::invalid_argument("unknown config key: " + key);
}

PipelineConfig parse_config(const std::string& text) {
  PipelineConfig config;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) + " lacks '='");
    }
    set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  config.validate();
  return config;
}

std::string format_config(const PipelineConfig& config) {
  std::string out;
  for (const auto& k : keys()) {
    out += std::string("# ") + k.help + "\n" + k.name + " = " + k.get(config) + "\n";
  }
  return out;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace joinfer
