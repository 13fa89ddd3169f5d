// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/recall_ems.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace joinfer {
namespace {

class Selection {
 public:
  explicit Selection(const JoinGraph& graph) : graph_(graph) {}

  void add(EdgeId id) {
    edges_.push_back(id);
    used_sources_.push_back(graph_.edge(id).source);
  }

  bool source_taken(const JoinEdge& e) const {
    return std::find(used_sources_.begin(), used_sources_.end(), e.source) != used_sources_.end();
  }

  // True if adding `e` would close a directed cycle.
  bool closes_cycle(const JoinEdge& e) const {
    std::vector<bool> seen(graph_.num_vertices(), false);
    std::vector<Vertex> stack{e.to()};
    seen[e.to()] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      if (v == e.from()) return true;
      for (EdgeId id : edges_) {
        const auto& next = graph_.edge(id);
        if (next.from() != v || seen[next.to()] || is_one_one_twin(e, next)) continue;
        seen[next.to()] = true;
        stack.push_back(next.to());
      }
    }
    return false;
  }

  bool admits(const JoinEdge& e) const { return !source_taken(e) && !closes_cycle(e); }

 private:
  const JoinGraph& graph_;
  std::vector<EdgeId> edges_;
  std::vector<ColumnRef> used_sources_;
};

std::string column_name(const std::vector<ProfiledTable>& tables, const ColumnRef& ref) {
  return tables.at(ref.table_id).columns.at(ref.col_index).name;
}

}  // namespace

bool is_one_one_twin(const JoinEdge& a, const JoinEdge& b) {
  return a.cardinality == Cardinality::kOneOne && b.cardinality == Cardinality::kOneOne &&
         a.source == b.target && a.target == b.source;
}

bool directed_acyclic(const JoinGraph& graph, std::span<const EdgeId> edges) {
  // Kahn's algorithm; of a pair of 1:1 twins only the first counts.
  std::vector<const JoinEdge*> kept;
  for (EdgeId id : edges) {
    const auto& e = graph.edge(id);
    const bool twin_seen = std::any_of(kept.begin(), kept.end(),
                                       [&](const JoinEdge* k) { return is_one_one_twin(*k, e); });
    if (!twin_seen) kept.push_back(&e);
  }
  std::vector<std::size_t> indegree(graph.num_vertices(), 0);
  for (const auto* e : kept) ++indegree[e->to()];
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < graph.num_vertices(); ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++visited;
    for (const auto* e : kept) {
      if (e->from() == v && --indegree[e->to()] == 0) ready.push_back(e->to());
    }
  }
  return visited == graph.num_vertices();
}

std::vector<EdgeId> remaining_candidates(const JoinGraph& graph, const Solution& backbone,
                                         double tau) {
  std::vector<EdgeId> out;
  for (const auto& e : graph.edges()) {
    if (e.probability < tau) continue;
    if (std::binary_search(backbone.edges.begin(), backbone.edges.end(), e.id)) continue;
    out.push_back(e.id);
  }
  std::stable_sort(out.begin(), out.end(), [&](EdgeId a, EdgeId b) {
    return graph.edge(a).probability > graph.edge(b).probability;
  });
  return out;
}

std::vector<EdgeId> solve_ems_greedy(const JoinGraph& graph, const Solution& backbone,
                                     std::span<const EdgeId> ordered) {
  Selection selection(graph);
  for (EdgeId id : backbone.edges) selection.add(id);
  std::vector<EdgeId> picked;
  for (EdgeId id : ordered) {
    if (!selection.admits(graph.edge(id))) continue;
    selection.add(id);
    picked.push_back(id);
  }
  // Maximality: every rejected candidate must still be blocked.
  for (EdgeId id : ordered) {
    if (std::find(picked.begin(), picked.end(), id) != picked.end()) continue;
    if (selection.admits(graph.edge(id))) {
      throw std::logic_error("greedy recall selection is not maximal");
    }
  }
  std::vector<EdgeId> all = backbone.edges;
  all.insert(all.end(), picked.begin(), picked.end());
  if (!check_fk_once(graph, all).empty()) {
    throw std::logic_error("recall selection violates FK-once");
  }
  if (!directed_acyclic(graph, all)) throw std::logic_error("recall selection has a cycle");
  return picked;
}

BIModel assemble_bi_model(const JoinGraph& graph, const Solution& backbone,
                          std::span<const EdgeId> recall,
                          const std::vector<ProfiledTable>& tables, std::string mode) {
  using Key = std::tuple<std::string, std::string, std::string, std::string>;
  std::map<Key, Relationship> merged;

  auto add = [&](EdgeId id, Provenance provenance) {
    const auto& e = graph.edge(id);
    Relationship rel;
    rel.from_table = tables.at(e.from()).table.name;
    rel.from_columns = {column_name(tables, e.source)};
    rel.to_table = tables.at(e.to()).table.name;
    rel.to_columns = {column_name(tables, e.target)};
    rel.cardinality = e.cardinality;
    rel.probability = e.probability;
    rel.provenance = provenance;
    if (rel.cardinality == Cardinality::kOneOne &&
        std::tie(rel.to_table, rel.to_columns) < std::tie(rel.from_table, rel.from_columns)) {
      std::swap(rel.from_table, rel.to_table);
      std::swap(rel.from_columns, rel.to_columns);
    }
    Key key{rel.from_table, rel.from_columns.front(), rel.to_table, rel.to_columns.front()};
    auto [it, inserted] = merged.try_emplace(key, rel);
    if (!inserted) {
      auto& existing = it->second;
      existing.probability = std::max(existing.probability, rel.probability);
      if (provenance == Provenance::kBackbone) existing.provenance = Provenance::kBackbone;
    }
  };
  for (EdgeId id : backbone.edges) add(id, Provenance::kBackbone);
  for (EdgeId id : recall) add(id, Provenance::kRecall);

  BIModel model;
  model.mode = std::move(mode);
  model.k = backbone.k;
  for (auto& [key, rel] : merged) model.relationships.push_back(std::move(rel));
  return model;
}

}  // namespace joinfer
