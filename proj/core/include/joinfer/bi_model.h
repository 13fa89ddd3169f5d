// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "joinfer/candidate_gen.h"
#include "joinfer/profile.h"

namespace joinfer {

enum class Provenance : std::uint8_t { kBackbone, kRecall, kGroundTruth };

std::string_view to_string(Provenance p);

struct Relationship {
  std::string from_table;
  std::vector<std::string> from_columns;
  std::string to_table;
  std::vector<std::string> to_columns;
  Cardinality cardinality = Cardinality::kN1;
  double probability = 1.0;
  Provenance provenance = Provenance::kGroundTruth;

  friend bool operator==(const Relationship&, const Relationship&) = default;
};

/// Predicted (or ground-truth) join set of a BI model. Predictions satisfy
/// FK-once and are cycle-free; the backbone subset is a k-arborescence.
struct BIModel {
  std::string mode = "full";
  std::size_t k = 0;
  std::vector<Relationship> relationships;
};

/// Stable field order: mode, k, relationships[from_table, from_columns,
/// to_table, to_columns, cardinality, probability, provenance].
std::string to_json(const BIModel& model);
/// Accepts the output layout as well as bare ground-truth files, where
/// k, mode, probability and provenance may be missing.
BIModel bi_model_from_json(const std::string& text);
BIModel read_bi_model(const std::filesystem::path& path);
void write_bi_model(const BIModel& model, const std::filesystem::path& path);

std::string to_dot(const BIModel& model);

/// Resolves a single-column relationship to (source, target) column refs.
/// Returns nullopt if a table or column name is unknown.
std::optional<std::pair<ColumnRef, ColumnRef>> resolve_relationship(
    const Relationship& rel, const std::vector<ProfiledTable>& tables);

}  // namespace joinfer
