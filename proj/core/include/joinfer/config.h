// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "joinfer/candidate_gen.h"
#include "joinfer/join_graph.h"
#include "joinfer/recall_ems.h"

namespace joinfer {

/// Pipeline knobs. Stored as `key = value` lines; `#` starts a comment.
struct PipelineConfig {
  double containment_threshold = kDefaultContainmentThreshold;
  double uniq_threshold = kDefaultUniqThreshold;
  double min_probability = kDefaultMinProbability;
  double tau = kDefaultRecallThreshold;
  double penalty = kDefaultPenalty;
  // Edge weights are -log2(P); any other base is rejected.
  int log_base = 2;
  std::string model_path = "model.json";
  std::uint64_t seed = 0;
  std::size_t row_cap = 100000;
  int verbosity = 0;
  bool equivalence = true;
  long timeout_ms = 10000;
  std::size_t max_nodes = 10000;

  /// Throws std::invalid_argument when a value is out of range.
  void validate() const;
};

/// Every key with a one-line description, in file order.
std::string describe_config_keys();

/// Unknown keys and malformed values throw std::invalid_argument.
PipelineConfig parse_config(const std::string& text);
/// Round-trips through parse_config.
std::string format_config(const PipelineConfig& config);
PipelineConfig load_config(const std::filesystem::path& path);

/// Applies one `key=value` assignment.
void set_config_value(PipelineConfig& config, const std::string& key, const std::string& value);

}  // namespace joinfer
