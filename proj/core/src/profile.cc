// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>

#include "joinfer/profile.h"

namespace joinfer {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string_view trimmed(const std::string& s) {
  std::string_view v(s);
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
  return v;
}

double distinct_ratio_of(const Column& col, std::size_t row_count) {
  std::set<std::string> distinct;
  std::size_t nulls = 0;
  for (std::size_t r = 0; r < col.cells.size(); ++r) {
    if (col.null_mask[r]) {
      ++nulls;
      continue;
    }
    distinct.insert(canonical_value(col.cells[r], col.type));
  }
  const std::size_t denom = std::max<std::size_t>(1, row_count - nulls);
  return static_cast<double>(distinct.size()) / static_cast<double>(denom);
}

bool near_unique(double ratio, std::size_t row_count, double threshold) {
  return row_count >= 1 && ratio >= threshold;
}

template <typename T>
std::vector<double> quantiles_of_ranks(std::vector<T> values) {
  std::vector<double> out;
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());
  // Rank of each value among the distinct values, normalized to [0,1].
  std::vector<double> mapped(values.size());
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i] != values[i - 1]) ++distinct;
    mapped[i] = static_cast<double>(distinct);
  }
  const std::size_t d = distinct + 1;
  if (d > 1) {
    for (auto& m : mapped) m /= static_cast<double>(d - 1);
  } else {
    std::fill(mapped.begin(), mapped.end(), 0.0);
  }
  const std::size_t q = std::min(d, kMaxQuantiles);
  const double n = static_cast<double>(mapped.size());
  out.reserve(q);
  for (std::size_t k = 0; k < q; ++k) {
    auto idx = static_cast<std::size_t>((static_cast<double>(k) + 0.5) / static_cast<double>(q) * n);
    out.push_back(mapped[std::min(idx, mapped.size() - 1)]);
  }
  return out;
}

ColumnProfile profile_impl(const Table& table, std::size_t index, const ProfileOptions& options,
                           std::int32_t unique_position) {
  const Column& col = table.columns.at(index);
  ColumnProfile p;
  p.name = col.name;
  p.value_type = col.type;
  p.row_count = table.row_count;
  p.position = static_cast<std::uint32_t>(index);
  p.name_tokens = tokenize_name(col.name);

  std::vector<std::string> canon;
  std::vector<double> numbers;
  canon.reserve(col.cells.size());
  double total_len = 0.0;
  for (std::size_t r = 0; r < col.cells.size(); ++r) {
    if (col.null_mask[r]) {
      ++p.null_count;
      continue;
    }
    total_len += static_cast<double>(trimmed(col.cells[r]).size());
    canon.push_back(canonical_value(col.cells[r], col.type));
    if (is_numeric(col.type)) {
      if (auto v = numeric_value(col.cells[r], col.type)) numbers.push_back(*v);
    }
  }
  const std::size_t non_null = canon.size();
  p.avg_value_length = non_null ? total_len / static_cast<double>(non_null) : 0.0;

  if (is_numeric(col.type) && !numbers.empty()) {
    auto [lo, hi] = std::minmax_element(numbers.begin(), numbers.end());
    p.min_max = std::make_pair(*lo, *hi);
    p.rank_quantiles = quantiles_of_ranks(numbers);
  } else {
    p.rank_quantiles = quantiles_of_ranks(canon);
  }

  std::vector<std::string> distinct = canon;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  p.distinct_count = distinct.size();
  p.distinct_ratio = static_cast<double>(p.distinct_count) /
                     static_cast<double>(std::max<std::size_t>(1, table.row_count - p.null_count));
  p.unique_position = near_unique(p.distinct_ratio, p.row_count, options.uniq_threshold)
                          ? unique_position
                          : -1;

  std::mt19937_64 rng(options.seed ^ fnv1a(table.name) ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  std::sample(distinct.begin(), distinct.end(), std::back_inserter(p.value_sample),
              std::min(options.sample_size, distinct.size()), rng);
  p.value_fingerprint = std::move(distinct);
  return p;
}

}  // namespace

std::vector<double> rank_quantiles(std::vector<double> values) {
  return quantiles_of_ranks(std::move(values));
}

std::vector<double> rank_quantiles_text(std::vector<std::string> values) {
  return quantiles_of_ranks(std::move(values));
}

ColumnProfile profile_column(const Table& table, std::size_t index,
                             const ProfileOptions& options) {
  std::int32_t unique_before = 0;
  for (std::size_t c = 0; c < index; ++c) {
    if (near_unique(distinct_ratio_of(table.columns[c], table.row_count), table.row_count,
                    options.uniq_threshold)) {
      ++unique_before;
    }
  }
  return profile_impl(table, index, options, unique_before);
}

ProfiledTable profile_table(Table table, const ProfileOptions& options) {
  ProfiledTable out;
  out.columns.reserve(table.columns.size());
  std::int32_t unique_seen = 0;
  std::set<std::string> header;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    auto p = profile_impl(table, c, options, unique_seen);
    if (p.unique_position >= 0) ++unique_seen;
    header.insert(p.name_tokens.begin(), p.name_tokens.end());
    out.columns.push_back(std::move(p));
  }
  out.name_tokens = tokenize_name(table.name);
  out.header_tokens.assign(header.begin(), header.end());
  out.table = std::move(table);
  return out;
}

std::vector<ProfiledTable> profile_tables(std::vector<Table> tables,
                                          const ProfileOptions& options) {
  std::vector<ProfiledTable> out;
  out.reserve(tables.size());
  for (auto& t : tables) out.push_back(profile_table(std::move(t), options));
  return out;
}

}  // namespace joinfer
