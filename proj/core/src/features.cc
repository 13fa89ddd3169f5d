// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/features.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "joinfer/string_similarity.h"

namespace joinfer {
namespace {

const std::vector<std::string> kN1Schema = {
    "jaccard_similarity",
    "jaccard_containment",
    "edit_distance",
    "jaro_winkler",
    "embedding_similarity",
    "token_count_i",
    "token_count_j",
    "char_count_i",
    "char_count_j",
    "col_frequency_i",
    "col_frequency_j",
    "col_position_i",
    "col_position_j",
    "col_relative_position_i",
    "col_relative_position_j",
    "unique_col_position_i",
    "unique_col_position_j",
    "left_containment",
    "right_containment",
    "max_containment",
    "value_distinct_ratio_i",
    "value_distinct_ratio_j",
    "range_overlap",
    "range_numeric",
    "emd_score",
    "value_length_i",
    "value_length_j",
    "value_type_integer",
    "value_type_float",
    "value_type_string",
    "value_type_date",
    "value_type_boolean",
    "row_cnt_i",
    "row_cnt_j",
    "row_ratio",
    "col_ratio",
    "cell_ratio",
};

std::vector<std::string> make_one_one_schema() {
  std::vector<std::string> s;
  for (const auto& f : kN1Schema) {
    if (f == "row_ratio" || f == "col_ratio" || f == "cell_ratio") continue;
    s.push_back(f == "max_containment" ? "min_containment" : f);
  }
  s.push_back("table_embedding");
  s.push_back("header_jaccard");
  return s;
}

const std::vector<std::string> kOneOneSchema = make_one_one_schema();

const std::set<std::string, std::less<>> kDataFeatures = {
    "unique_col_position_i", "unique_col_position_j", "left_containment", "right_containment",
    "max_containment",       "min_containment",       "value_distinct_ratio_i",
    "value_distinct_ratio_j", "range_overlap",        "range_numeric",
    "emd_score",             "value_length_i",        "value_length_j",
    "value_type_integer",    "value_type_float",      "value_type_string",
    "value_type_date",       "value_type_boolean",    "row_cnt_i",
    "row_cnt_j",             "row_ratio",             "cell_ratio",
};

// Quantile function of a sorted sketch: q(u) = s[min(floor(u*n), n-1)].
double integrate_quantile_gap(std::span<const double> a, std::span<const double> b) {
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::vector<double> cuts;
  cuts.reserve(a.size() + b.size() + 2);
  for (std::size_t k = 0; k <= a.size(); ++k) cuts.push_back(static_cast<double>(k) / na);
  for (std::size_t k = 0; k <= b.size(); ++k) cuts.push_back(static_cast<double>(k) / nb);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k], hi = cuts[k + 1];
    const double mid = 0.5 * (lo + hi);
    const auto ia = std::min(static_cast<std::size_t>(mid * na), a.size() - 1);
    const auto ib = std::min(static_cast<std::size_t>(mid * nb), b.size() - 1);
    total += (hi - lo) * std::fabs(a[ia] - b[ib]);
  }
  return total;
}

double log_ratio(double a, double b) {
  return std::log2(std::max(a, 1.0) / std::max(b, 1.0));
}

NameSimilarities max_sims(const NameSimilarities& x, const NameSimilarities& y) {
  return {std::max(x.jaccard, y.jaccard), std::max(x.containment, y.containment),
          std::max(x.edit, y.edit), std::max(x.jaro_winkler, y.jaro_winkler)};
}

NameSimilarities sims_from_tokens(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b) {
  const auto ja = join_tokens(a), jb = join_tokens(b);
  return {token_jaccard(a, b), token_containment(a, b), edit_similarity(ja, jb),
          jaro_winkler(ja, jb)};
}

NameSimilarities sims_with_prefix(const std::vector<std::string>& a,
                                  const std::vector<std::string>& table_a,
                                  const std::vector<std::string>& b) {
  std::vector<std::string> prefixed = table_a;
  prefixed.insert(prefixed.end(), a.begin(), a.end());
  return max_sims(sims_from_tokens(a, b), sims_from_tokens(prefixed, b));
}

double embedding_with_prefix(const std::vector<std::string>& a,
                             const std::vector<std::string>& table_a,
                             const std::vector<std::string>& b, const FeatureContext& ctx,
                             std::string_view raw_a, std::string_view raw_b) {
  if (ctx.embedding_override) {
    if (auto s = ctx.embedding_override->find(raw_a, raw_b)) return *s;
  }
  std::vector<std::string> prefixed = table_a;
  prefixed.insert(prefixed.end(), a.begin(), a.end());
  return std::max(trigram_cosine(a, b), trigram_cosine(prefixed, b));
}

}  // namespace

const std::vector<std::string>& feature_schema(Cardinality cardinality) {
  return cardinality == Cardinality::kN1 ? kN1Schema : kOneOneSchema;
}

bool is_data_feature(std::string_view name) { return kDataFeatures.count(name) > 0; }

NameSimilarities name_similarities(std::string_view name_a, std::string_view table_a,
                                   std::string_view name_b) {
  return sims_with_prefix(tokenize_name(name_a), tokenize_name(table_a), tokenize_name(name_b));
}

double embedding_similarity(std::string_view name_a, std::string_view name_b) {
  return trigram_cosine(tokenize_name(name_a), tokenize_name(name_b));
}

double emd_from_quantiles(std::span<const double> quantiles_a,
                          std::span<const double> quantiles_b) {
  if (quantiles_a.empty() || quantiles_b.empty()) return 1.0;
  return integrate_quantile_gap(quantiles_a, quantiles_b);
}

double emd_score(std::span<const double> values_a, std::span<const double> values_b) {
  if (values_a.empty() || values_b.empty()) return 1.0;
  const auto qa = rank_quantiles({values_a.begin(), values_a.end()});
  const auto qb = rank_quantiles({values_b.begin(), values_b.end()});
  return emd_from_quantiles(qa, qb);
}

RangeOverlap range_overlap(const ColumnProfile& a, const ColumnProfile& b) {
  if (!a.min_max || !b.min_max) return {};
  const auto [alo, ahi] = *a.min_max;
  const auto [blo, bhi] = *b.min_max;
  RangeOverlap r;
  r.numeric = true;
  const double inter = std::min(ahi, bhi) - std::max(alo, blo);
  const double uni = std::max(ahi, bhi) - std::min(alo, blo);
  if (inter < 0.0) {
    r.overlap = 0.0;
  } else if (uni <= 0.0) {
    r.overlap = 1.0;  // both degenerate and equal
  } else {
    r.overlap = inter / uni;
  }
  return r;
}

void CorpusStats::add_model(const std::vector<ProfiledTable>& tables) {
  std::set<std::string> names;
  for (const auto& t : tables) {
    for (const auto& c : t.columns) names.insert(join_tokens(c.name_tokens));
  }
  for (const auto& n : names) ++name_frequency[n];
  ++num_models;
}

double CorpusStats::frequency(const std::vector<std::string>& name_tokens) const {
  auto it = name_frequency.find(join_tokens(name_tokens));
  return it == name_frequency.end() ? 1.0 : static_cast<double>(it->second);
}

void SimilarityOverride::set(std::string a, std::string b, double score) {
  if (b < a) std::swap(a, b);
  scores_[{std::move(a), std::move(b)}] = score;
}

std::optional<double> SimilarityOverride::find(std::string_view a, std::string_view b) const {
  std::string x(a), y(b);
  if (y < x) std::swap(x, y);
  auto it = scores_.find({x, y});
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

SimilarityOverride SimilarityOverride::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open similarity file: " + path.string());
  SimilarityOverride out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = line.find('\t', t1 == std::string::npos ? t1 : t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos) {
      throw std::runtime_error("malformed similarity line: " + line);
    }
    const double score = std::stod(line.substr(t2 + 1));
    out.set(line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), std::clamp(score, 0.0, 1.0));
  }
  return out;
}

double FeatureVector::get(std::string_view name) const {
  const auto& schema = feature_schema(cardinality);
  auto it = std::find(schema.begin(), schema.end(), name);
  if (it == schema.end()) {
    throw std::out_of_range("feature not in schema: " + std::string(name));
  }
  return values.at(static_cast<std::size_t>(it - schema.begin()));
}

FeatureVector featurize(const JoinCandidate& pair, const std::vector<ProfiledTable>& tables,
                        const FeatureContext& context) {
  const auto& ti = tables.at(pair.source.table_id);
  const auto& tj = tables.at(pair.target.table_id);
  const auto& ci = ti.columns.at(pair.source.col_index);
  const auto& cj = tj.columns.at(pair.target.col_index);
  const bool one_one = pair.cardinality == Cardinality::kOneOne;

  // The table-name prefix goes on the 1 side; for 1:1 both sides are "1".
  NameSimilarities sims = sims_with_prefix(cj.name_tokens, tj.name_tokens, ci.name_tokens);
  double embed =
      embedding_with_prefix(cj.name_tokens, tj.name_tokens, ci.name_tokens, context, cj.name, ci.name);
  if (one_one) {
    sims = max_sims(sims, sims_with_prefix(ci.name_tokens, ti.name_tokens, cj.name_tokens));
    embed = std::max(embed, embedding_with_prefix(ci.name_tokens, ti.name_tokens, cj.name_tokens,
                                                  context, ci.name, cj.name));
  }

  auto freq = [&](const ColumnProfile& c) {
    const double f = context.corpus_stats ? context.corpus_stats->frequency(c.name_tokens) : 1.0;
    return std::log1p(f);
  };
  auto char_count = [](const ColumnProfile& c) {
    std::size_t n = 0;
    for (const auto& t : c.name_tokens) n += t.size();
    return static_cast<double>(n);
  };
  const auto range = range_overlap(ci, cj);
  const double rows_i = static_cast<double>(ti.table.row_count);
  const double rows_j = static_cast<double>(tj.table.row_count);
  const double cols_i = static_cast<double>(ti.table.num_columns());
  const double cols_j = static_cast<double>(tj.table.num_columns());

  FeatureVector fv;
  fv.cardinality = pair.cardinality;
  const auto& schema = feature_schema(pair.cardinality);
  fv.values.reserve(schema.size());
  for (const auto& name : schema) {
    double v = 0.0;
    if (name == "jaccard_similarity") v = sims.jaccard;
    else if (name == "jaccard_containment") v = sims.containment;
    else if (name == "edit_distance") v = sims.edit;
    else if (name == "jaro_winkler") v = sims.jaro_winkler;
    else if (name == "embedding_similarity") v = embed;
    else if (name == "token_count_i") v = static_cast<double>(ci.name_tokens.size());
    else if (name == "token_count_j") v = static_cast<double>(cj.name_tokens.size());
    else if (name == "char_count_i") v = char_count(ci);
    else if (name == "char_count_j") v = char_count(cj);
    else if (name == "col_frequency_i") v = freq(ci);
    else if (name == "col_frequency_j") v = freq(cj);
    else if (name == "col_position_i") v = ci.position;
    else if (name == "col_position_j") v = cj.position;
    else if (name == "col_relative_position_i") v = ci.position / std::max(1.0, cols_i);
    else if (name == "col_relative_position_j") v = cj.position / std::max(1.0, cols_j);
    else if (name == "unique_col_position_i") v = ci.unique_position;
    else if (name == "unique_col_position_j") v = cj.unique_position;
    else if (name == "left_containment") v = pair.left_containment;
    else if (name == "right_containment") v = pair.right_containment;
    else if (name == "max_containment") v = std::max(pair.left_containment, pair.right_containment);
    else if (name == "min_containment") v = std::min(pair.left_containment, pair.right_containment);
    else if (name == "value_distinct_ratio_i") v = ci.distinct_ratio;
    else if (name == "value_distinct_ratio_j") v = cj.distinct_ratio;
    else if (name == "range_overlap") v = range.overlap;
    else if (name == "range_numeric") v = range.numeric ? 1.0 : 0.0;
    else if (name == "emd_score") v = emd_from_quantiles(ci.rank_quantiles, cj.rank_quantiles);
    else if (name == "value_length_i") v = ci.avg_value_length;
    else if (name == "value_length_j") v = cj.avg_value_length;
    else if (name == "value_type_integer") v = ci.value_type == ValueType::kInteger;
    else if (name == "value_type_float") v = ci.value_type == ValueType::kFloat;
    else if (name == "value_type_string") v = ci.value_type == ValueType::kString;
    else if (name == "value_type_date") v = ci.value_type == ValueType::kDate;
    else if (name == "value_type_boolean") v = ci.value_type == ValueType::kBoolean;
    else if (name == "row_cnt_i") v = std::log10(1.0 + rows_i);
    else if (name == "row_cnt_j") v = std::log10(1.0 + rows_j);
    else if (name == "row_ratio") v = log_ratio(rows_i, rows_j);
    else if (name == "col_ratio") v = log_ratio(cols_i, cols_j);
    else if (name == "cell_ratio") v = log_ratio(rows_i * cols_i, rows_j * cols_j);
    else if (name == "table_embedding") v = trigram_cosine(ti.name_tokens, tj.name_tokens);
    else if (name == "header_jaccard") v = token_jaccard(ti.header_tokens, tj.header_tokens);
    if (context.schema_only && is_data_feature(name)) v = 0.0;
    if (!std::isfinite(v)) v = 0.0;
    fv.values.push_back(v);
  }
  return fv;
}

}  // namespace joinfer
