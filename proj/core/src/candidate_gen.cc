// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/candidate_gen.h"

#include <algorithm>

namespace joinfer {

std::string_view to_string(Cardinality c) {
  return c == Cardinality::kN1 ? "N:1" : "1:1";
}

std::optional<Cardinality> parse_cardinality(std::string_view text) {
  if (text == "N:1" || text == "n:1" || text == "N1") return Cardinality::kN1;
  if (text == "1:1" || text == "OneOne") return Cardinality::kOneOne;
  return std::nullopt;
}

std::vector<std::size_t> find_unique_columns(const ProfiledTable& table, double uniq_threshold) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    const auto& p = table.columns[c];
    if (p.row_count >= 1 && p.distinct_count > 0 && p.distinct_ratio >= uniq_threshold) {
      out.push_back(c);
    }
  }
  return out;
}

std::optional<Cardinality> classify_cardinality(const ColumnProfile& source,
                                                const ColumnProfile& target,
                                                double uniq_threshold) {
  const bool target_unique = target.distinct_ratio >= uniq_threshold;
  const bool source_unique = source.distinct_ratio >= uniq_threshold;
  if (!target_unique) return std::nullopt;
  return source_unique ? Cardinality::kOneOne : Cardinality::kN1;
}

bool types_compatible(const ColumnProfile& a, const ColumnProfile& b,
                      double max_cross_type_length) {
  using VT = ValueType;
  const VT x = a.value_type, y = b.value_type;
  auto num = [](VT t) { return t == VT::kInteger || t == VT::kFloat; };
  if (num(x) && num(y)) return true;
  if (x == y) return x == VT::kString || x == VT::kDate;
  const bool cross = (num(x) && y == VT::kString) || (x == VT::kString && num(y));
  return cross && a.avg_value_length <= max_cross_type_length &&
         b.avg_value_length <= max_cross_type_length;
}

std::size_t sorted_intersection_size(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

std::vector<JoinCandidate> enumerate_candidates(const std::vector<ProfiledTable>& tables,
                                                const CandidateOptions& options) {
  std::vector<JoinCandidate> out;
  std::vector<std::vector<std::size_t>> unique_cols;
  unique_cols.reserve(tables.size());
  for (const auto& t : tables) unique_cols.push_back(find_unique_columns(t, options.uniq_threshold));

  for (std::size_t a = 0; a < tables.size(); ++a) {
    for (std::size_t i = 0; i < tables[a].columns.size(); ++i) {
      const auto& src = tables[a].columns[i];
      if (src.distinct_count == 0) continue;
      for (std::size_t b = 0; b < tables.size(); ++b) {
        if (a == b) continue;
        for (std::size_t j : unique_cols[b]) {
          const auto& tgt = tables[b].columns[j];
          auto card = classify_cardinality(src, tgt, options.uniq_threshold);
          if (!card) continue;
          if (!types_compatible(src, tgt, options.max_cross_type_length)) continue;
          const auto shared = sorted_intersection_size(src.value_fingerprint, tgt.value_fingerprint);
          JoinCandidate c;
          c.source = {static_cast<TableId>(a), static_cast<std::uint32_t>(i)};
          c.target = {static_cast<TableId>(b), static_cast<std::uint32_t>(j)};
          c.cardinality = *card;
          c.left_containment =
              static_cast<double>(shared) / static_cast<double>(src.value_fingerprint.size());
          c.right_containment =
              static_cast<double>(shared) / static_cast<double>(tgt.value_fingerprint.size());
          const double gate = *card == Cardinality::kOneOne
                                  ? std::min(c.left_containment, c.right_containment)
                                  : c.left_containment;
          if (gate < options.containment_threshold) continue;
          out.push_back(c);
        }
      }
    }
  }
  return out;
}

}  // namespace joinfer
