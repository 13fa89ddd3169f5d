// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include <nlohmann/json.hpp>

#include "joinfer/profile.h"

namespace joinfer {

using ordered_json = nlohmann::ordered_json;

std::string profiles_to_json(const ProfiledTable& table) {
  ordered_json j;
  j["table"] = table.table.name;
  j["row_count"] = table.table.row_count;
  j["truncated"] = table.table.truncated;
  j["row_cap"] = table.table.row_cap;
  auto& cols = j["columns"] = ordered_json::array();
  for (const auto& p : table.columns) {
    ordered_json c;
    c["name"] = p.name;
    c["position"] = p.position;
    c["value_type"] = std::string(to_string(p.value_type));
    c["row_count"] = p.row_count;
    c["distinct_count"] = p.distinct_count;
    c["distinct_ratio"] = p.distinct_ratio;
    c["null_count"] = p.null_count;
    if (p.min_max) {
      c["min_max"] = {p.min_max->first, p.min_max->second};
    } else {
      c["min_max"] = nullptr;
    }
    c["avg_value_length"] = p.avg_value_length;
    c["name_tokens"] = p.name_tokens;
    c["unique_position"] = p.unique_position;
    c["value_sample"] = p.value_sample;
    c["value_fingerprint"] = p.value_fingerprint;
    c["rank_quantiles"] = p.rank_quantiles;
    cols.push_back(std::move(c));
  }
  return j.dump(2);
}

std::vector<ColumnProfile> profiles_from_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  std::vector<ColumnProfile> out;
  for (const auto& c : j.at("columns")) {
    ColumnProfile p;
    p.name = c.at("name").get<std::string>();
    p.position = c.at("position").get<std::uint32_t>();
    auto type = parse_value_type(c.at("value_type").get<std::string>());
    if (!type) throw std::runtime_error("unknown value_type in profile JSON");
    p.value_type = *type;
    p.row_count = c.at("row_count").get<std::size_t>();
    p.distinct_count = c.at("distinct_count").get<std::size_t>();
    p.distinct_ratio = c.at("distinct_ratio").get<double>();
    p.null_count = c.at("null_count").get<std::size_t>();
    if (!c.at("min_max").is_null()) {
      p.min_max = std::make_pair(c["min_max"][0].get<double>(), c["min_max"][1].get<double>());
    }
    p.avg_value_length = c.at("avg_value_length").get<double>();
    p.name_tokens = c.at("name_tokens").get<std::vector<std::string>>();
    p.unique_position = c.at("unique_position").get<std::int32_t>();
    p.value_sample = c.at("value_sample").get<std::vector<std::string>>();
    p.value_fingerprint = c.at("value_fingerprint").get<std::vector<std::string>>();
    p.rank_quantiles = c.at("rank_quantiles").get<std::vector<double>>();
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace joinfer
