// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "joinfer/candidate_gen.h"
#include "joinfer/features.h"
#include "joinfer/string_similarity.h"
#include "test_util.h"

namespace joinfer {
namespace {

std::vector<ProfiledTable> profiled(std::vector<Table> tables) {
  return profile_tables(std::move(tables));
}

const JoinCandidate* find(const std::vector<JoinCandidate>& cs, TableId from, TableId to) {
  for (const auto& c : cs) {
    if (c.source.table_id == from && c.target.table_id == to) return &c;
  }
  return nullptr;
}

TEST(UniqueColumns, ThresholdAndEmptyTable) {
  const auto tables = profiled({testing::table("t", {"u", "half"}, {{"1", "a"}, {"2", "a"}}),
                                testing::table("e", {"x"}, {})});
  EXPECT_EQ(find_unique_columns(tables[0]), (std::vector<std::size_t>{0}));
  EXPECT_TRUE(find_unique_columns(tables[1]).empty());
}

TEST(ClassifyCardinality, Ratios) {
  ColumnProfile a, b;
  a.distinct_ratio = 0.3;
  b.distinct_ratio = 1.0;
  EXPECT_EQ(classify_cardinality(a, b), Cardinality::kN1);
  a.distinct_ratio = 1.0;
  EXPECT_EQ(classify_cardinality(a, b), Cardinality::kOneOne);
  a.distinct_ratio = 0.3;
  b.distinct_ratio = 0.3;
  EXPECT_FALSE(classify_cardinality(a, b).has_value());
}

TEST(EnumerateCandidates, ContainmentOfSubset) {
  const auto tables = profiled({testing::column_table("fact", "k", {"1", "1", "2", "3", "3"}),
                                testing::column_table("dim", "id", {"1", "2", "3", "4"})});
  const auto cs = enumerate_candidates(tables);
  const auto* c = find(cs, 0, 1);
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->cardinality, Cardinality::kN1);
  EXPECT_DOUBLE_EQ(c->left_containment, 1.0);
  EXPECT_DOUBLE_EQ(c->right_containment, 0.75);
  EXPECT_EQ(find(cs, 1, 0), nullptr);
}

TEST(EnumerateCandidates, IdenticalUniqueColumnsGiveBothDirections) {
  const auto values = testing::range_values(1, 6);
  const auto cs = enumerate_candidates(
      profiled({testing::column_table("a", "id", values), testing::column_table("b", "id", values)}));
  ASSERT_EQ(cs.size(), 2u);
  for (const auto& c : cs) {
    EXPECT_EQ(c.cardinality, Cardinality::kOneOne);
    EXPECT_DOUBLE_EQ(c.left_containment, 1.0);
    EXPECT_DOUBLE_EQ(c.right_containment, 1.0);
  }
}

TEST(EnumerateCandidates, BelowThresholdIsDropped) {
  auto src = testing::range_values(1, 10);
  src.insert(src.end(), src.begin(), src.end());
  const auto cs = enumerate_candidates(profiled(
      {testing::column_table("f", "k", src), testing::column_table("d", "id", testing::range_values(1, 8))}));
  // 8 of 10 distinct source values are present: 0.8 < 0.9.
  EXPECT_EQ(find(cs, 0, 1), nullptr);
}

TEST(EnumerateCandidates, DeterministicAndWellFormed) {
  const auto tables = profiled({
      testing::table("sales", {"cust", "prod", "qty"},
                     {{"1", "10", "5"}, {"2", "10", "6"}, {"1", "11", "7"}, {"3", "12", "8"}}),
      testing::table("customer", {"id", "name"}, {{"1", "a"}, {"2", "b"}, {"3", "c"}}),
      testing::table("product", {"id", "name"}, {{"10", "x"}, {"11", "y"}, {"12", "z"}}),
  });
  CandidateOptions opt;
  const auto a = enumerate_candidates(tables, opt);
  const auto b = enumerate_candidates(tables, opt);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].source, b[i].source);
    EXPECT_EQ(a[i].target, b[i].target);
  }
  for (const auto& c : a) {
    EXPECT_NE(c.source.table_id, c.target.table_id);
    const auto& tgt = tables[c.target.table_id].columns[c.target.col_index];
    EXPECT_GE(tgt.distinct_ratio, opt.uniq_threshold);
    const double gate = c.cardinality == Cardinality::kOneOne
                            ? std::min(c.left_containment, c.right_containment)
                            : c.left_containment;
    EXPECT_GE(gate, opt.containment_threshold);
  }
  EXPECT_NE(find(a, 0, 1), nullptr);
  EXPECT_NE(find(a, 0, 2), nullptr);
}

TEST(NameSimilarities, TablePrefixedJaccard) {
  const auto s = name_similarities("ID", "Employees", "Employee-ID");
  EXPECT_DOUBLE_EQ(s.jaccard, 0.5);
}

TEST(NameSimilarities, IdenticalAndDisjoint) {
  const auto same = name_similarities("order_id", "sales", "order_id");
  EXPECT_DOUBLE_EQ(same.jaccard, 1.0);
  EXPECT_DOUBLE_EQ(same.containment, 1.0);
  EXPECT_DOUBLE_EQ(same.edit, 1.0);
  EXPECT_DOUBLE_EQ(same.jaro_winkler, 1.0);
  EXPECT_DOUBLE_EQ(name_similarities("abc", "t", "xyz").jaccard, 0.0);
}

TEST(StringSimilarity, LevenshteinAndJaro) {
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein("", "abc"), 3u);
  // Textbook pairs.
  EXPECT_NEAR(jaro("martha", "marhta"), 0.944444, 1e-6);
  EXPECT_NEAR(jaro_winkler("martha", "marhta"), 0.961111, 1e-6);
  EXPECT_NEAR(jaro_winkler("dwayne", "duane"), 0.84, 1e-6);
}

TEST(TrigramCosine, Examples) {
  EXPECT_DOUBLE_EQ(embedding_similarity("customer", "customer"), 1.0);
  EXPECT_DOUBLE_EQ(embedding_similarity("abc", "xyz"), 0.0);
  // 6 shared trigrams; 6 and 7 trigrams on each side.
  const double v = embedding_similarity("customer", "customers");
  EXPECT_NEAR(v, 6.0 / std::sqrt(42.0), 1e-12);
  EXPECT_GT(v, 0.8);
  EXPECT_LT(v, 1.0);
}

TEST(Emd, IdenticalAndClosedForm) {
  const std::vector<double> a{3, 1, 2, 2};
  EXPECT_DOUBLE_EQ(emd_score(a, a), 0.0);
  std::vector<double> uniform;
  const int n = 1000;
  for (int i = 0; i < n; ++i) uniform.push_back((i + 0.5) / n);
  const std::vector<double> point{0.0};
  EXPECT_NEAR(emd_from_quantiles(uniform, point), 0.5, 1e-12);
}

TEST(Emd, RankNormalizationRemovesShift) {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{101, 102, 103, 104, 105};
  EXPECT_DOUBLE_EQ(emd_score(a, b), 0.0);
  EXPECT_DOUBLE_EQ(emd_score({}, b), 1.0);
}

TEST(RangeOverlap, IntervalArithmetic) {
  ColumnProfile a, b;
  a.min_max = {0, 10};
  b.min_max = {5, 15};
  EXPECT_NEAR(range_overlap(a, b).overlap, 1.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(range_overlap(a, a).overlap, 1.0);
  a.min_max = {0, 1};
  b.min_max = {2, 3};
  EXPECT_DOUBLE_EQ(range_overlap(a, b).overlap, 0.0);
  b.min_max.reset();
  EXPECT_FALSE(range_overlap(a, b).numeric);
}

TEST(Featurize, ContainmentAndPosition) {
  const auto tables = profiled({
      testing::table("sales", {"qty", "cust", "x", "y"},
                     {{"1", "1", "a", "b"}, {"2", "2", "a", "b"}, {"3", "3", "a", "b"},
                      {"4", "1", "a", "b"}}),
      testing::column_table("customer", "id", testing::range_values(1, 4)),
  });
  JoinCandidate n1;
  n1.source = {0, 1};
  n1.target = {1, 0};
  n1.left_containment = 1.0;
  n1.right_containment = 0.75;
  const auto fv = featurize(n1, tables, {});
  EXPECT_EQ(fv.values.size(), feature_schema(Cardinality::kN1).size());
  EXPECT_DOUBLE_EQ(fv.get("max_containment"), 1.0);
  EXPECT_DOUBLE_EQ(fv.get("col_relative_position_i"), 0.25);

  JoinCandidate one = n1;
  one.cardinality = Cardinality::kOneOne;
  one.left_containment = 0.9;
  one.right_containment = 1.0;
  const auto fo = featurize(one, tables, {});
  EXPECT_EQ(fo.values.size(), feature_schema(Cardinality::kOneOne).size());
  EXPECT_DOUBLE_EQ(fo.get("min_containment"), 0.9);
}

TEST(Featurize, SchemaOnlyZeroesDataFeatures) {
  const auto tables = profiled({testing::column_table("f", "cust_id", {"1", "2", "2"}),
                                testing::column_table("cust", "id", {"1", "2", "3"})});
  JoinCandidate c;
  c.source = {0, 0};
  c.target = {1, 0};
  c.left_containment = 1.0;
  c.right_containment = 2.0 / 3.0;
  FeatureContext ctx;
  ctx.schema_only = true;
  const auto fv = featurize(c, tables, ctx);
  const auto& schema = feature_schema(Cardinality::kN1);
  bool some_metadata_nonzero = false;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (is_data_feature(schema[i])) {
      EXPECT_EQ(fv.values[i], 0.0) << schema[i];
    } else if (fv.values[i] != 0.0) {
      some_metadata_nonzero = true;
    }
  }
  EXPECT_TRUE(some_metadata_nonzero);
}

TEST(Featurize, EmbeddingOverride) {
  const auto tables = profiled({testing::column_table("f", "buyer", {"1", "2"}),
                                testing::column_table("cust", "id", {"1", "2"})});
  JoinCandidate c;
  c.source = {0, 0};
  c.target = {1, 0};
  SimilarityOverride over;
  over.set("buyer", "id", 0.77);
  FeatureContext ctx;
  ctx.embedding_override = &over;
  EXPECT_DOUBLE_EQ(featurize(c, tables, ctx).get("embedding_similarity"), 0.77);
}

TEST(CorpusStats, CountsOncePerModel) {
  CorpusStats stats;
  const auto m = profiled({testing::column_table("a", "id", {"1"}), testing::column_table("b", "id", {"1"})});
  stats.add_model(m);
  stats.add_model(m);
  EXPECT_EQ(stats.num_models, 2u);
  EXPECT_DOUBLE_EQ(stats.frequency({"id"}), 2.0);
  EXPECT_DOUBLE_EQ(stats.frequency({"never", "seen"}), 1.0);
}

}  // namespace
}  // namespace joinfer
