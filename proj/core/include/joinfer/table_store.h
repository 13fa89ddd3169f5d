// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace joinfer {

/// Raised for unreadable, empty or malformed table files.
class TableLoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueType : std::uint8_t { kInteger, kFloat, kString, kDate, kBoolean };

std::string_view to_string(ValueType type);
std::optional<ValueType> parse_value_type(std::string_view text);

inline bool is_numeric(ValueType t) {
  return t == ValueType::kInteger || t == ValueType::kFloat || t == ValueType::kDate;
}

/// Identifies a table inside the table list handed to the pipeline.
using TableId = std::uint32_t;

/// (table, column-index) address. Ordered lexicographically.
struct ColumnRef {
  TableId table_id = 0;
  std::uint32_t col_index = 0;

  friend auto operator<=>(const ColumnRef&, const ColumnRef&) = default;
};

struct Column {
  std::string name;
  ValueType type = ValueType::kString;
  std::vector<std::string> cells;
  // Parallel to `cells`; true where the cell matched a null token.
  std::vector<bool> null_mask;
};

/// A loaded table. Immutable after load; all columns hold `row_count` cells.
struct Table {
  std::string name;
  std::vector<Column> columns;
  std::size_t row_count = 0;
  // True when the row cap stopped reading before the end of the source.
  bool truncated = false;
  std::size_t row_cap = 0;

  std::size_t num_columns() const { return columns.size(); }
};

struct LoadOptions {
  char delimiter = ',';
  bool header = true;
  std::vector<std::string> null_tokens{"", "NULL", "null", "NA"};
  std::size_t row_cap = 100000;
  // Fraction of data rows allowed to have a field count different from the
  // header. Short rows are padded with nulls, long rows truncated.
  double ragged_tolerance = 0.0;
};

Table load_table(const std::filesystem::path& path, const LoadOptions& options = {});

/// Builds a table from already-split cells (row-major). Used by the synthetic
/// generator and by tests; applies the same dedup and type inference as
/// load_table.
Table make_table(std::string name, std::vector<std::string> header,
                 const std::vector<std::vector<std::string>>& rows,
                 const LoadOptions& options = {});

/// Writes `table` as comma-separated text with a header row, quoting fields
/// that contain a comma, quote or line break.
void write_table_csv(const Table& table, const std::filesystem::path& path);

/// Loads every *.csv / *.tsv file in `dir`, sorted by file name.
std::vector<Table> load_tables_from_dir(const std::filesystem::path& dir,
                                        const LoadOptions& options = {});

/// integer -> float -> date -> boolean -> string, nulls (empty cells) ignored.
/// A column without any non-null value is typed string.
ValueType infer_value_type(const std::vector<std::string>& values);
ValueType infer_value_type(const std::vector<std::string>& values,
                           const std::vector<bool>& null_mask);

/// Splits on delimiters and camel-case boundaries, lowercases, drops empties.
std::vector<std::string> tokenize_name(std::string_view raw);

/// Renames duplicates to name_2, name_3, ... keeping first occurrence intact.
std::vector<std::string> dedup_names(std::vector<std::string> names);

// Parsing helpers shared with profiling.
std::optional<std::int64_t> parse_integer(std::string_view text);
std::optional<double> parse_float(std::string_view text);
/// Days since 1970-01-01 for YYYY-MM-DD, YYYY/MM/DD (optional " HH:MM[:SS]")
/// and MM/DD/YYYY.
std::optional<double> parse_date(std::string_view text);
std::optional<bool> parse_boolean(std::string_view text);

/// Canonical text of a cell under a column type, so that equal values of
/// compatible types compare equal ("1.0" and "1" both become "1").
std::string canonical_value(std::string_view cell, ValueType type);
/// Numeric view of a cell for numeric and date types.
std::optional<double> numeric_value(std::string_view cell, ValueType type);

}  // namespace joinfer
