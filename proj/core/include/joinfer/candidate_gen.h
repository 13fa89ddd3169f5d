// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "joinfer/profile.h"
#include "joinfer/table_store.h"

namespace joinfer {

inline constexpr double kDefaultContainmentThreshold = 0.9;

enum class Cardinality : std::uint8_t { kN1, kOneOne };

std::string_view to_string(Cardinality c);  // "N:1" / "1:1"
std::optional<Cardinality> parse_cardinality(std::string_view text);

/// A directed candidate join: `source` is the N (FK) side, `target` the 1
/// (PK) side. One-to-one candidates are materialized in both directions.
struct JoinCandidate {
  ColumnRef source;
  ColumnRef target;
  Cardinality cardinality = Cardinality::kN1;
  // |distinct(source) ∩ distinct(target)| / |distinct(source)|
  double left_containment = 0.0;
  // |distinct(source) ∩ distinct(target)| / |distinct(target)|
  double right_containment = 0.0;
  double raw_score = 0.0;
  double probability = 0.0;
};

struct CandidateOptions {
  double containment_threshold = kDefaultContainmentThreshold;
  double uniq_threshold = kDefaultUniqThreshold;
  // Cross string/numeric pairs are compared as text only when both average
  // value lengths are at most this.
  double max_cross_type_length = 20.0;
};

std::vector<std::size_t> find_unique_columns(const ProfiledTable& table,
                                             double uniq_threshold = kDefaultUniqThreshold);

/// Cardinality class of source -> target, or nullopt when the target is not
/// near-unique.
std::optional<Cardinality> classify_cardinality(const ColumnProfile& source,
                                                const ColumnProfile& target,
                                                double uniq_threshold = kDefaultUniqThreshold);

bool types_compatible(const ColumnProfile& a, const ColumnProfile& b,
                      double max_cross_type_length = 20.0);

/// Number of shared elements of two sorted, deduplicated ranges.
std::size_t sorted_intersection_size(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b);

/// Enumerates approximate inclusion dependencies into near-unique columns.
/// Ordered by (source table, source column, target table, target column).
std::vector<JoinCandidate> enumerate_candidates(const std::vector<ProfiledTable>& tables,
                                                const CandidateOptions& options = {});

}  // namespace joinfer
