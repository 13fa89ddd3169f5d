// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/bi_model.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace joinfer {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kBackbone: return "backbone";
    case Provenance::kRecall: return "recall";
    case Provenance::kGroundTruth: return "ground_truth";
  }
  return "ground_truth";
}

std::string to_json(const BIModel& model) {
  ordered_json j;
  j["mode"] = model.mode;
  j["k"] = model.k;
  auto& rels = j["relationships"] = ordered_json::array();
  for (const auto& r : model.relationships) {
    ordered_json o;
    o["from_table"] = r.from_table;
    o["from_columns"] = r.from_columns;
    o["to_table"] = r.to_table;
    o["to_columns"] = r.to_columns;
    o["cardinality"] = std::string(to_string(r.cardinality));
    o["probability"] = r.probability;
    o["provenance"] = std::string(to_string(r.provenance));
    rels.push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

BIModel bi_model_from_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  BIModel m;
  m.mode = j.value("mode", std::string("ground_truth"));
  m.k = j.value("k", std::size_t{0});
  for (const auto& o : j.at("relationships")) {
    Relationship r;
    r.from_table = o.at("from_table").get<std::string>();
    r.from_columns = o.at("from_columns").get<std::vector<std::string>>();
    r.to_table = o.at("to_table").get<std::string>();
    r.to_columns = o.at("to_columns").get<std::vector<std::string>>();
    auto card = parse_cardinality(o.value("cardinality", std::string("N:1")));
    if (!card) throw std::runtime_error("unknown cardinality in BI model JSON");
    r.cardinality = *card;
    r.probability = o.value("probability", 1.0);
    const auto prov = o.value("provenance", std::string("ground_truth"));
    r.provenance = prov == "backbone" ? Provenance::kBackbone
                   : prov == "recall" ? Provenance::kRecall
                                      : Provenance::kGroundTruth;
    if (r.from_columns.empty() || r.from_columns.size() != r.to_columns.size()) {
      throw std::runtime_error("relationship column lists must be non-empty and equal length");
    }
    m.relationships.push_back(std::move(r));
  }
  return m;
}

BIModel read_bi_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return bi_model_from_json(ss.str());
}

void write_bi_model(const BIModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(model);
}

std::string to_dot(const BIModel& model) {
  std::ostringstream os;
  os << "digraph bi_model {\n  rankdir=LR;\n";
  for (const auto& r : model.relationships) {
    os << "  \"" << r.from_table << "\" -> \"" << r.to_table << "\" [label=\""
       << r.from_columns.front() << " -> " << r.to_columns.front() << " ("
       << to_string(r.cardinality) << ", p=" << r.probability << ")\"";
    if (r.cardinality == Cardinality::kOneOne) os << ", dir=both";
    if (r.provenance == Provenance::kRecall) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::optional<std::pair<ColumnRef, ColumnRef>> resolve_relationship(
    const Relationship& rel, const std::vector<ProfiledTable>& tables) {
  auto find = [&](const std::string& table,
                  const std::string& column) -> std::optional<ColumnRef> {
    for (std::size_t t = 0; t < tables.size(); ++t) {
      if (tables[t].table.name != table) continue;
      for (std::size_t c = 0; c < tables[t].columns.size(); ++c) {
        if (tables[t].columns[c].name == column) {
          return ColumnRef{static_cast<TableId>(t), static_cast<std::uint32_t>(c)};
        }
      }
    }
    return std::nullopt;
  };
  if (rel.from_columns.size() != 1 || rel.to_columns.size() != 1) return std::nullopt;
  auto src = find(rel.from_table, rel.from_columns.front());
  auto dst = find(rel.to_table, rel.to_columns.front());
  if (!src || !dst) return std::nullopt;
  return std::make_pair(*src, *dst);
}

}  // namespace joinfer
