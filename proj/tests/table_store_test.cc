// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "joinfer/profile.h"
#include "joinfer/table_store.h"
#include "test_util.h"

namespace joinfer {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("joinfer_ts_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

  fs::path write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

 private:
  fs::path path_;
};

TEST(LoadTable, ThreeColumnsFiveRows) {
  TempDir dir;
  const auto p = dir.write("orders.csv", "a,b,c\n1,x,2.5\n2,y,3\n3,z,4\n4,w,5\n5,v,6\n");
  const auto t = load_table(p);
  EXPECT_EQ(t.name, "orders");
  EXPECT_EQ(t.row_count, 5u);
  ASSERT_EQ(t.num_columns(), 3u);
  EXPECT_EQ(t.columns[0].type, ValueType::kInteger);
  EXPECT_EQ(t.columns[1].type, ValueType::kString);
  EXPECT_EQ(t.columns[2].type, ValueType::kFloat);
  for (const auto& c : t.columns) EXPECT_EQ(c.cells.size(), t.row_count);
}

TEST(LoadTable, MixedColumnFallsBackToString) {
  TempDir dir;
  const auto t = load_table(dir.write("m.csv", "v\n1\n2\nx\n"));
  EXPECT_EQ(t.columns[0].type, ValueType::kString);
}

TEST(LoadTable, DuplicateHeaderIsRenamed) {
  TempDir dir;
  const auto t = load_table(dir.write("d.csv", "id,id\n1,2\n"));
  EXPECT_EQ(t.columns[0].name, "id");
  EXPECT_EQ(t.columns[1].name, "id_2");
}

TEST(LoadTable, QuotedFieldsAndCrlf) {
  TempDir dir;
  const auto t = load_table(dir.write("q.csv", "name,note\r\n\"Smith, J\",\"said \"\"hi\"\"\"\r\nLee,ok\r\n"));
  ASSERT_EQ(t.row_count, 2u);
  EXPECT_EQ(t.columns[0].cells[0], "Smith, J");
  EXPECT_EQ(t.columns[1].cells[0], "said \"hi\"");
}

TEST(LoadTable, EmptyFileRejected) {
  TempDir dir;
  EXPECT_THROW(load_table(dir.write("e.csv", "")), TableLoadError);
}

TEST(LoadTable, MissingFileRejected) {
  EXPECT_THROW(load_table("/nonexistent/x.csv"), TableLoadError);
}

TEST(LoadTable, RaggedRowsRespectTolerance) {
  TempDir dir;
  const auto p = dir.write("r.csv", "a,b\n1,2\n3\n4,5\n6,7\n");
  EXPECT_THROW(load_table(p), TableLoadError);
  LoadOptions lenient;
  lenient.ragged_tolerance = 0.5;
  const auto t = load_table(p, lenient);
  EXPECT_EQ(t.row_count, 4u);
  EXPECT_TRUE(t.columns[1].null_mask[1]);
}

TEST(LoadTable, RowCapStopsReading) {
  TempDir dir;
  std::string text = "v\n";
  for (int i = 0; i < 20; ++i) text += std::to_string(i) + "\n";
  LoadOptions opt;
  opt.row_cap = 5;
  const auto t = load_table(dir.write("cap.csv", text), opt);
  EXPECT_EQ(t.row_count, 5u);
  EXPECT_TRUE(t.truncated);
  EXPECT_EQ(t.row_cap, 5u);
}

TEST(LoadTable, TsvAndDirectoryOrder) {
  TempDir dir;
  dir.write("b.csv", "x\n1\n");
  dir.write("a.tsv", "x\ty\n1\t2\n");
  dir.write("notes.txt", "ignored");
  const auto tables = load_tables_from_dir(dir.path());
  ASSERT_EQ(tables.size(), 2u);
  EXPECT_EQ(tables[0].name, "a");
  EXPECT_EQ(tables[0].num_columns(), 2u);
  EXPECT_EQ(tables[1].name, "b");
}

TEST(LoadTable, WriteReadRoundTrip) {
  TempDir dir;
  const auto original =
      testing::table("t", {"k", "text"}, {{"1", "plain"}, {"2", "with, comma"}, {"3", "q\"uote"}});
  write_table_csv(original, dir.path() / "t.csv");
  const auto back = load_table(dir.path() / "t.csv");
  ASSERT_EQ(back.row_count, original.row_count);
  for (std::size_t c = 0; c < original.num_columns(); ++c) {
    EXPECT_EQ(back.columns[c].name, original.columns[c].name);
    EXPECT_EQ(back.columns[c].cells, original.columns[c].cells);
    EXPECT_EQ(back.columns[c].type, original.columns[c].type);
  }
}

TEST(InferValueType, NullsIgnored) {
  EXPECT_EQ(infer_value_type({"1", "2", ""}), ValueType::kInteger);
}

TEST(InferValueType, FloatPromotion) { EXPECT_EQ(infer_value_type({"1.5", "2"}), ValueType::kFloat); }

TEST(InferValueType, Dates) {
  EXPECT_EQ(infer_value_type({"2021-01-02", "2021-02-03"}), ValueType::kDate);
}

TEST(InferValueType, BooleansAndStrings) {
  EXPECT_EQ(infer_value_type({"true", "false", "TRUE"}), ValueType::kBoolean);
  EXPECT_EQ(infer_value_type({"1", "2021-01-01"}), ValueType::kString);
  EXPECT_EQ(infer_value_type({"", "NULL"}), ValueType::kString);
}

TEST(TokenizeName, Examples) {
  EXPECT_EQ(tokenize_name("Employee-ID"), (std::vector<std::string>{"employee", "id"}));
  EXPECT_EQ(tokenize_name("sales_emp_id"), (std::vector<std::string>{"sales", "emp", "id"}));
  EXPECT_TRUE(tokenize_name("").empty());
  EXPECT_EQ(tokenize_name("CustomerKey"), (std::vector<std::string>{"customer", "key"}));
  EXPECT_EQ(tokenize_name("HTTPServer2Id"), (std::vector<std::string>{"http", "server2", "id"}));
}

TEST(TokenizeName, IdempotentOnJoinedOutput) {
  for (const char* raw : {"Employee-ID", "DimCustomerKey", "fact_sales__x", "A1b2C3"}) {
    const auto once = tokenize_name(raw);
    std::string joined;
    for (const auto& t : once) joined += (joined.empty() ? "" : " ") + t;
    EXPECT_EQ(tokenize_name(joined), once) << raw;
  }
}

TEST(ProfileColumn, DistinctRatio) {
  const auto t = testing::column_table("t", "v", {"1", "2", "2", "3"});
  EXPECT_DOUBLE_EQ(profile_column(t, 0).distinct_ratio, 0.75);
  const auto u = testing::column_table("u", "v", {"a", "b", "c"});
  EXPECT_DOUBLE_EQ(profile_column(u, 0).distinct_ratio, 1.0);
}

TEST(ProfileColumn, MinMaxOnlyForNumeric) {
  const auto t = testing::column_table("t", "v", {"5", "1", "9"});
  const auto p = profile_column(t, 0);
  ASSERT_TRUE(p.min_max.has_value());
  EXPECT_EQ(p.min_max->first, 1.0);
  EXPECT_EQ(p.min_max->second, 9.0);
  EXPECT_FALSE(profile_column(testing::column_table("s", "v", {"a"}), 0).min_max.has_value());
}

TEST(ProfileColumn, NullsExcludedFromDistinctness) {
  const auto t = testing::column_table("t", "v", {"1", "", "NULL", "2"});
  const auto p = profile_column(t, 0);
  EXPECT_EQ(p.null_count, 2u);
  EXPECT_EQ(p.distinct_count, 2u);
  EXPECT_DOUBLE_EQ(p.distinct_ratio, 1.0);
}

TEST(ProfileColumn, DeterministicAndBounded) {
  std::vector<std::string> values;
  for (int i = 0; i < 500; ++i) values.push_back(std::to_string(i % 97));
  const auto t = testing::column_table("t", "v", values);
  ProfileOptions opt;
  opt.seed = 11;
  const auto a = profile_column(t, 0, opt);
  const auto b = profile_column(t, 0, opt);
  EXPECT_EQ(a, b);
  EXPECT_EQ(profiles_to_json(profile_table(t, opt)), profiles_to_json(profile_table(t, opt)));
  EXPECT_LE(a.value_sample.size(), kDefaultSampleSize);
  EXPECT_LE(a.distinct_count, a.row_count);
  EXPECT_GE(a.distinct_ratio, 0.0);
  EXPECT_LE(a.distinct_ratio, 1.0);
}

TEST(ProfileColumn, FullRatioMeansNoDuplicates) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> values;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) values.push_back(std::to_string(rng() % 15));
    const auto p = profile_column(testing::column_table("t", "v", values), 0);
    std::set<std::string> distinct(values.begin(), values.end());
    EXPECT_EQ(p.distinct_ratio == 1.0, distinct.size() == values.size());
  }
}

TEST(ProfileJson, RoundTrip) {
  const auto t = testing::table("t", {"id", "name", "d"},
                                {{"1", "a", "2020-01-01"}, {"2", "b", ""}, {"3", "a", "2020-02-01"}});
  const auto pt = profile_table(t);
  const auto back = profiles_from_json(profiles_to_json(pt));
  ASSERT_EQ(back.size(), pt.columns.size());
  for (std::size_t i = 0; i < back.size(); ++i) EXPECT_EQ(back[i], pt.columns[i]);
}

}  // namespace
}  // namespace joinfer
