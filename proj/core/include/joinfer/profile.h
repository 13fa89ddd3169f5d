// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "joinfer/table_store.h"

namespace joinfer {

inline constexpr double kDefaultUniqThreshold = 0.95;
inline constexpr std::size_t kDefaultSampleSize = 32;
inline constexpr std::size_t kMaxQuantiles = 256;

struct ColumnProfile {
  std::string name;
  ValueType value_type = ValueType::kString;
  std::size_t row_count = 0;
  std::size_t distinct_count = 0;
  double distinct_ratio = 0.0;
  std::size_t null_count = 0;
  std::optional<std::pair<double, double>> min_max;
  double avg_value_length = 0.0;
  std::vector<std::string> name_tokens;
  std::uint32_t position = 0;
  // -1 for columns that are not near-unique.
  std::int32_t unique_position = -1;
  std::vector<std::string> value_sample;
  // Sorted canonical distinct values. Exact set, used for containment.
  std::vector<std::string> value_fingerprint;
  // Quantiles of the rank-normalized value distribution (see emd_score).
  std::vector<double> rank_quantiles;

  friend bool operator==(const ColumnProfile&, const ColumnProfile&) = default;
};

struct ProfileOptions {
  std::uint64_t seed = 0;
  std::size_t sample_size = kDefaultSampleSize;
  double uniq_threshold = kDefaultUniqThreshold;
};

/// Profiles column `index` of `table`. Deterministic given the seed.
ColumnProfile profile_column(const Table& table, std::size_t index,
                             const ProfileOptions& options = {});

/// A table together with the profile of every column and the table-level
/// name tokens used by the metadata features.
struct ProfiledTable {
  Table table;
  std::vector<ColumnProfile> columns;
  std::vector<std::string> name_tokens;
  // Union of the tokens of all column names, sorted and deduplicated.
  std::vector<std::string> header_tokens;
};

ProfiledTable profile_table(Table table, const ProfileOptions& options = {});
std::vector<ProfiledTable> profile_tables(std::vector<Table> tables,
                                          const ProfileOptions& options = {});

/// Rank-normalizes the distinct values of `values` into [0,1] (rank/(d-1),
/// a single distinct value maps to 0), maps every value through it and
/// returns min(d, kMaxQuantiles) mid-point quantiles of the result.
std::vector<double> rank_quantiles(std::vector<double> values);
std::vector<double> rank_quantiles_text(std::vector<std::string> values);

/// JSON layout for profile caching: {"table": name, "row_count": n,
/// "truncated": bool, "columns": [ {profile fields...} ]}.
std::string profiles_to_json(const ProfiledTable& table);
std::vector<ColumnProfile> profiles_from_json(const std::string& text);

}  // namespace joinfer
