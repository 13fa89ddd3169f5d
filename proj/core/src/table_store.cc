// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/table_store.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "csv_reader.h"

namespace joinfer {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

// Days since 1970-01-01 in the proleptic Gregorian calendar.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool valid_ymd(int y, int m, int d) {
  static constexpr int kDays[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (y < 1 || y > 9999 || m < 1 || m > 12 || d < 1) return false;
  if (d > kDays[m - 1]) return false;
  if (m == 2 && d == 29) {
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    return leap;
  }
  return true;
}

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int to_int(std::string_view s) {
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

// Parses "HH:MM" or "HH:MM:SS" into a fraction of a day.
std::optional<double> parse_time(std::string_view t) {
  if (t.size() != 5 && t.size() != 8) return std::nullopt;
  if (t[2] != ':' || (t.size() == 8 && t[5] != ':')) return std::nullopt;
  const auto hh = t.substr(0, 2);
  const auto mm = t.substr(3, 2);
  const auto ss = t.size() == 8 ? t.substr(6, 2) : std::string_view("00");
  if (!all_digits(hh) || !all_digits(mm) || !all_digits(ss)) return std::nullopt;
  const int h = to_int(hh), m = to_int(mm), s = to_int(ss);
  if (h > 23 || m > 59 || s > 59) return std::nullopt;
  return (h * 3600.0 + m * 60.0 + s) / 86400.0;
}

std::string format_double(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
    return std::to_string(static_cast<std::int64_t>(v));
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool is_null_token(std::string_view cell, const std::vector<std::string>& tokens) {
  const auto t = trim(cell);
  return std::find(tokens.begin(), tokens.end(), t) != tokens.end();
}

}  // namespace

std::string_view to_string(ValueType type) {
  switch (type) {
    case ValueType::kInteger: return "integer";
    case ValueType::kFloat: return "float";
    case ValueType::kString: return "string";
    case ValueType::kDate: return "date";
    case ValueType::kBoolean: return "boolean";
  }
  return "string";
}

std::optional<ValueType> parse_value_type(std::string_view text) {
  for (auto t : {ValueType::kInteger, ValueType::kFloat, ValueType::kString, ValueType::kDate,
                 ValueType::kBoolean}) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

std::optional<std::int64_t> parse_integer(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_float(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<double> parse_date(std::string_view text) {
  text = trim(text);
  double frac = 0.0;
  if (auto sep = text.find_first_of(" T"); sep != std::string_view::npos) {
    auto t = parse_time(text.substr(sep + 1));
    if (!t) return std::nullopt;
    frac = *t;
    text = text.substr(0, sep);
  }
  if (text.size() != 10) return std::nullopt;
  int y = 0, m = 0, d = 0;
  if ((text[4] == '-' || text[4] == '/') && text[7] == text[4]) {
    if (!all_digits(text.substr(0, 4)) || !all_digits(text.substr(5, 2)) ||
        !all_digits(text.substr(8, 2))) {
      return std::nullopt;
    }
    y = to_int(text.substr(0, 4));
    m = to_int(text.substr(5, 2));
    d = to_int(text.substr(8, 2));
  } else if (text[2] == '/' && text[5] == '/') {
    if (!all_digits(text.substr(0, 2)) || !all_digits(text.substr(3, 2)) ||
        !all_digits(text.substr(6, 4))) {
      return std::nullopt;
    }
    m = to_int(text.substr(0, 2));
    d = to_int(text.substr(3, 2));
    y = to_int(text.substr(6, 4));
  } else {
    return std::nullopt;
  }
  if (!valid_ymd(y, m, d)) return std::nullopt;
  return static_cast<double>(days_from_civil(y, static_cast<unsigned>(m),
                                             static_cast<unsigned>(d))) +
         frac;
}

std::optional<bool> parse_boolean(std::string_view text) {
  const auto t = lower(trim(text));
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  return std::nullopt;
}

ValueType infer_value_type(const std::vector<std::string>& values,
                           const std::vector<bool>& null_mask) {
  bool any = false;
  bool all_int = true, all_float = true, all_date = true, all_bool = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (null_mask[i]) continue;
    any = true;
    const auto& v = values[i];
    if (all_int && !parse_integer(v)) all_int = false;
    if (all_float && !parse_float(v)) all_float = false;
    if (all_date && !parse_date(v)) all_date = false;
    if (all_bool && !parse_boolean(v)) all_bool = false;
    if (!all_int && !all_float && !all_date && !all_bool) return ValueType::kString;
  }
  if (!any) return ValueType::kString;
  if (all_int) return ValueType::kInteger;
  if (all_float) return ValueType::kFloat;
  if (all_date) return ValueType::kDate;
  if (all_bool) return ValueType::kBoolean;
  return ValueType::kString;
}

ValueType infer_value_type(const std::vector<std::string>& values) {
  std::vector<bool> mask(values.size());
  const LoadOptions defaults;
  for (std::size_t i = 0; i < values.size(); ++i) {
    mask[i] = is_null_token(values[i], defaults.null_tokens);
  }
  return infer_value_type(values, mask);
}

std::vector<std::string> tokenize_name(std::string_view raw) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(lower(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto ch = static_cast<unsigned char>(raw[i]);
    if (!std::isalnum(ch)) {
      flush();
      continue;
    }
    if (std::isupper(ch) && !cur.empty()) {
      const auto prev = static_cast<unsigned char>(raw[i - 1]);
      const bool next_lower =
          i + 1 < raw.size() && std::islower(static_cast<unsigned char>(raw[i + 1]));
      // fooBar -> foo|Bar, HTTPServer -> HTTP|Server
      if (std::islower(prev) || std::isdigit(prev) || (std::isupper(prev) && next_lower)) {
        flush();
      }
    }
    cur.push_back(static_cast<char>(ch));
  }
  flush();
  return tokens;
}

std::vector<std::string> dedup_names(std::vector<std::string> names) {
  std::set<std::string> seen(names.begin(), names.end());
  std::set<std::string> used;
  for (auto& n : names) {
    if (used.insert(n).second) continue;
    for (int suffix = 2;; ++suffix) {
      auto candidate = n + "_" + std::to_string(suffix);
      if (!seen.count(candidate) && !used.count(candidate)) {
        n = candidate;
        used.insert(n);
        break;
      }
    }
  }
  return names;
}

std::string canonical_value(std::string_view cell, ValueType type) {
  const auto t = trim(cell);
  switch (type) {
    case ValueType::kInteger:
      if (auto v = parse_integer(t)) return std::to_string(*v);
      break;
    case ValueType::kFloat:
      if (auto v = parse_float(t)) return format_double(*v);
      break;
    case ValueType::kDate:
      if (auto v = parse_date(t)) return format_double(*v);
      break;
    case ValueType::kBoolean:
      if (auto v = parse_boolean(t)) return *v ? "true" : "false";
      break;
    case ValueType::kString:
      break;
  }
  return std::string(t);
}

std::optional<double> numeric_value(std::string_view cell, ValueType type) {
  switch (type) {
    case ValueType::kInteger:
      if (auto v = parse_integer(cell)) return static_cast<double>(*v);
      return std::nullopt;
    case ValueType::kFloat: return parse_float(cell);
    case ValueType::kDate: return parse_date(cell);
    default: return std::nullopt;
  }
}

Table make_table(std::string name, std::vector<std::string> header,
                 const std::vector<std::vector<std::string>>& rows,
                 const LoadOptions& options) {
  Table table;
  table.name = std::move(name);
  table.row_cap = options.row_cap;
  header = dedup_names(std::move(header));
  table.columns.resize(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    table.columns[c].name = header[c];
    table.columns[c].cells.reserve(rows.size());
    table.columns[c].null_mask.reserve(rows.size());
  }
  std::size_t n = 0;
  for (const auto& row : rows) {
    if (options.row_cap > 0 && n >= options.row_cap) {
      table.truncated = true;
      break;
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      std::string cell = c < row.size() ? row[c] : std::string();
      const bool is_null = c >= row.size() || is_null_token(cell, options.null_tokens);
      table.columns[c].cells.push_back(std::move(cell));
      table.columns[c].null_mask.push_back(is_null);
    }
    ++n;
  }
  table.row_count = n;
  for (auto& col : table.columns) col.type = infer_value_type(col.cells, col.null_mask);
  return table;
}

Table load_table(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableLoadError("cannot open table file: " + path.string());

  detail::CsvReader reader(in, options.delimiter);
  std::vector<std::string> fields;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool have_header = false;
  bool truncated = false;
  std::size_t ragged = 0;
  std::size_t width = 0;

  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (!have_header) {
      width = fields.size();
      if (options.header) {
        header = fields;
        for (auto& h : header) h = std::string(trim(h));
      } else {
        for (std::size_t c = 0; c < width; ++c) header.push_back("col" + std::to_string(c));
        rows.push_back(fields);
      }
      have_header = true;
      continue;
    }
    if (options.row_cap > 0 && rows.size() >= options.row_cap) {
      truncated = true;
      break;
    }
    if (fields.size() != width) {
      ++ragged;
      fields.resize(width);
    }
    rows.push_back(fields);
  }

  if (!have_header) throw TableLoadError("empty table file: " + path.string());
  if (width == 0) throw TableLoadError("table file has no columns: " + path.string());
  const double allowed = options.ragged_tolerance * static_cast<double>(rows.size());
  if (static_cast<double>(ragged) > allowed) {
    throw TableLoadError("ragged rows in " + path.string() + ": " + std::to_string(ragged) +
                         " of " + std::to_string(rows.size()) + " rows have a field count != " +
                         std::to_string(width));
  }

  LoadOptions no_cap = options;
  no_cap.row_cap = 0;
  Table table = make_table(path.stem().string(), std::move(header), rows, no_cap);
  table.truncated = truncated;
  table.row_cap = options.row_cap;
  return table;
}

namespace {

void write_field(std::ostream& out, const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) {
    out << field;
    return;
  }
  out << '"';
  for (char ch : field) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

}  // namespace

void write_table_csv(const Table& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TableLoadError("cannot write table file: " + path.string());
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out << ',';
    write_field(out, table.columns[c].name);
  }
  out << '\n';
  for (std::size_t r = 0; r < table.row_count; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c > 0) out << ',';
      write_field(out, table.columns[c].cells[r]);
    }
    out << '\n';
  }
  if (!out) throw TableLoadError("failed writing table file: " + path.string());
}

std::vector<Table> load_tables_from_dir(const std::filesystem::path& dir,
                                        const LoadOptions& options) {
  if (!std::filesystem::is_directory(dir)) {
    throw TableLoadError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext == ".csv" || ext == ".tsv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Table> tables;
  tables.reserve(files.size());
  for (const auto& f : files) {
    LoadOptions opt = options;
    if (f.extension() == ".tsv") opt.delimiter = '\t';
    tables.push_back(load_table(f, opt));
  }
  return tables;
}

}  // namespace joinfer
