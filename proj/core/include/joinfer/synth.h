// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "joinfer/bi_model.h"
#include "joinfer/table_store.h"

namespace joinfer {

struct IntRange {
  int lo = 0;
  int hi = 0;
};

/// Shape of generated star, snowflake and constellation schemas.
struct SchemaSpec {
  IntRange n_fact{1, 2};
  IntRange dims_per_fact{2, 4};
  // Levels per dimension hierarchy; 1 is a plain star.
  IntRange snowflake_depth{1, 3};
  IntRange rows_fact{150, 400};
  IntRange rows_dim{12, 60};
  // Chance of each optional attribute column.
  double noise_columns = 0.5;
  // Chance that a dimension key range starts at 1 and so overlaps others.
  double distractor_overlap = 0.3;
  // Chance that a later fact reuses an existing dimension per slot.
  double shared_dims = 0.3;
  // Upper bound of the dangling-FK row fraction.
  double dangling_rate = 0.05;
  // Chance that a dimension gets a 1:1 companion table.
  double one_one_rate = 0.1;
  int max_tables = 12;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on an empty range or a rate outside [0,1].
  void validate() const;
};

struct GeneratedCase {
  std::string id;
  // Sorted by name, matching the order tables load back from disk.
  std::vector<Table> tables;
  BIModel truth;
  std::vector<std::string> fact_tables;
};

/// Deterministic in (spec, seed). The ground truth is checked for FK-once
/// and acyclicity before returning.
GeneratedCase generate_case(const SchemaSpec& spec, std::uint64_t seed, std::string id = "0");

/// Cases case_0000 ... with per-case seeds derived from spec.seed.
std::vector<GeneratedCase> generate_corpus(const SchemaSpec& spec, std::size_t count);

/// Writes `<root>/case_<id>/<table>.csv` and `ground_truth.json`.
void write_case(const GeneratedCase& c, const std::filesystem::path& root);

struct CaseOnDisk {
  std::string id;
  std::filesystem::path dir;
};

/// Sorted `case_*` subdirectories of `root`.
std::vector<CaseOnDisk> list_cases(const std::filesystem::path& root);

/// Reads tables and ground truth back from a case directory.
GeneratedCase load_case(const CaseOnDisk& c, const LoadOptions& options = {});

/// Relationships of `truth` into dimensions referenced by more than one
/// fact table.
std::vector<Relationship> shared_dimension_edges(const GeneratedCase& c);

/// FK-once and cycle check of a ground-truth model; empty string if valid.
std::string validate_truth(const BIModel& truth);

}  // namespace joinfer
