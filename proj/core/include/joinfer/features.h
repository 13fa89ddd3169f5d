// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "joinfer/candidate_gen.h"
#include "joinfer/profile.h"

namespace joinfer {

inline constexpr int kFeatureSchemaVersion = 1;

/// Ordered feature names for a classifier. Suffix _i is the source (N side)
/// column, _j the target (1 side). Count features are raw; row counts are
/// log10(1 + rows); row/col/cell ratios are log2(source / target).
const std::vector<std::string>& feature_schema(Cardinality cardinality);

/// Features computed from column values rather than names. These are zeroed
/// for metadata-only models.
bool is_data_feature(std::string_view name);

struct NameSimilarities {
  double jaccard = 0.0;
  double containment = 0.0;
  double edit = 0.0;
  double jaro_winkler = 0.0;
};

/// Each measure is max(sim(a, b), sim(table_a + a, b)); `a` is the 1 side.
/// Jaccard/containment act on token sets, edit and Jaro-Winkler on the
/// space-joined lowercase tokens.
NameSimilarities name_similarities(std::string_view name_a, std::string_view table_a,
                                   std::string_view name_b);

/// Character-trigram cosine over tokenized lowercase names, in [0,1].
double embedding_similarity(std::string_view name_a, std::string_view name_b);

/// 1-D earth mover's distance between rank-normalized value distributions.
/// Returns 1.0 when either side is empty.
double emd_score(std::span<const double> values_a, std::span<const double> values_b);
/// Same distance computed directly from two quantile sketches
/// (see rank_quantiles).
double emd_from_quantiles(std::span<const double> quantiles_a,
                          std::span<const double> quantiles_b);

struct RangeOverlap {
  double overlap = 0.0;
  bool numeric = false;
};
RangeOverlap range_overlap(const ColumnProfile& a, const ColumnProfile& b);

/// Per-name model frequency over a training corpus.
struct CorpusStats {
  std::map<std::string, std::size_t> name_frequency;
  std::size_t num_models = 0;

  /// Counts each distinct column name once per model.
  void add_model(const std::vector<ProfiledTable>& tables);
  /// Frequency of a column name; names never seen count as 1.
  double frequency(const std::vector<std::string>& name_tokens) const;
};

/// Optional external similarity scores that replace the trigram embedding
/// similarity for listed name pairs (looked up in both orders).
class SimilarityOverride {
 public:
  void set(std::string a, std::string b, double score);
  std::optional<double> find(std::string_view a, std::string_view b) const;
  bool empty() const { return scores_.empty(); }

  /// Tab-separated lines: name_a <TAB> name_b <TAB> score.
  static SimilarityOverride load(const std::filesystem::path& path);

 private:
  std::map<std::pair<std::string, std::string>, double> scores_;
};

struct FeatureVector {
  Cardinality cardinality = Cardinality::kN1;
  std::vector<double> values;

  double get(std::string_view name) const;
};

struct FeatureContext {
  const CorpusStats* corpus_stats = nullptr;
  const SimilarityOverride* embedding_override = nullptr;
  bool schema_only = false;
};

FeatureVector featurize(const JoinCandidate& pair, const std::vector<ProfiledTable>& tables,
                        const FeatureContext& context);

}  // namespace joinfer
