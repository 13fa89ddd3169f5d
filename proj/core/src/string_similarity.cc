// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/string_similarity.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace joinfer {
namespace {

std::set<std::string> as_set(const std::vector<std::string>& v) {
  return {v.begin(), v.end()};
}

std::size_t intersection(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::size_t n = 0;
  for (const auto& x : a) n += b.count(x);
  return n;
}

std::map<std::string, double> trigram_counts(const std::vector<std::string>& tokens) {
  std::map<std::string, double> counts;
  for (const auto& t : tokens) {
    if (t.size() < 3) {
      counts[t] += 1.0;
      continue;
    }
    for (std::size_t i = 0; i + 3 <= t.size(); ++i) counts[t.substr(i, 3)] += 1.0;
  }
  return counts;
}

}  // namespace

double token_jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const auto sa = as_set(a), sb = as_set(b);
  if (sa.empty() && sb.empty()) return 1.0;
  const auto inter = intersection(sa, sb);
  return static_cast<double>(inter) / static_cast<double>(sa.size() + sb.size() - inter);
}

double token_containment(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const auto sa = as_set(a), sb = as_set(b);
  if (sa.empty()) return sb.empty() ? 1.0 : 0.0;
  return static_cast<double>(intersection(sa, sb)) / static_cast<double>(sa.size());
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

double edit_similarity(std::string_view a, std::string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

double jaro(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  const std::size_t window =
      std::max<std::size_t>(1, std::max(a.size(), b.size()) / 2) - 1;
  std::vector<bool> a_match(a.size()), b_match(b.size());
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t lo = i > window ? i - window : 0;
    const std::size_t hi = std::min(b.size(), i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (b_match[j] || a[i] != b[j]) continue;
      a_match[i] = b_match[j] = true;
      ++matches;
      break;
    }
  }
  if (matches == 0) return 0.0;
  std::size_t transpositions = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a_match[i]) continue;
    while (!b_match[k]) ++k;
    if (a[i] != b[k]) ++transpositions;
    ++k;
  }
  const double m = static_cast<double>(matches);
  return (m / static_cast<double>(a.size()) + m / static_cast<double>(b.size()) +
          (m - static_cast<double>(transpositions) / 2.0) / m) /
         3.0;
}

double jaro_winkler(std::string_view a, std::string_view b) {
  const double j = jaro(a, b);
  std::size_t prefix = 0;
  while (prefix < 4 && prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) ++prefix;
  return j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
}

double trigram_cosine(const std::vector<std::string>& a_tokens,
                      const std::vector<std::string>& b_tokens) {
  const auto a = trigram_counts(a_tokens);
  const auto b = trigram_counts(b_tokens);
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [g, c] : a) {
    na += c * c;
    if (auto it = b.find(g); it != b.end()) dot += c * it->second;
  }
  for (const auto& [g, c] : b) nb += c * c;
  return std::clamp(dot / std::sqrt(na * nb), 0.0, 1.0);
}

std::string join_tokens(const std::vector<std::string>& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

}  // namespace joinfer
