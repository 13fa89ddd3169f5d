// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/join_graph.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace joinfer {

double edge_weight(double probability) {
  if (!(probability > 0.0) || probability > 1.0) {
    throw std::invalid_argument("edge probability must be in (0, 1]");
  }
  const double w = -std::log2(probability);
  return w > 0.0 ? w : 0.0;
}

JoinGraph::JoinGraph(std::size_t num_vertices, std::vector<JoinEdge> edges,
                     std::vector<std::string> vertex_names)
    : num_vertices_(num_vertices), edges_(std::move(edges)), vertex_names_(std::move(vertex_names)) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto& e = edges_[i];
    e.id = static_cast<EdgeId>(i);
    if (e.from() >= num_vertices_ || e.to() >= num_vertices_) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.from() == e.to()) throw std::invalid_argument("self-loop edges are not allowed");
  }
  if (vertex_names_.empty()) {
    for (std::size_t v = 0; v < num_vertices_; ++v) vertex_names_.push_back("T" + std::to_string(v));
  }
  reindex();
}

void JoinGraph::reindex() {
  out_index_.assign(num_vertices_, {});
  for (const auto& e : edges_) out_index_[e.from()].push_back(e.id);
}

std::span<const EdgeId> JoinGraph::out_edges(Vertex v) const { return out_index_.at(v); }

std::vector<EdgeId> JoinGraph::edges_from_column(const ColumnRef& column) const {
  std::vector<EdgeId> out;
  for (EdgeId id : out_edges(column.table_id)) {
    if (edges_[id].source == column) out.push_back(id);
  }
  return out;
}

EdgeId JoinGraph::add_edge(Vertex from, Vertex to, double probability, Cardinality cardinality,
                           std::uint32_t from_col, std::uint32_t to_col) {
  if (from >= num_vertices_ || to >= num_vertices_) {
    throw std::invalid_argument("edge endpoint out of range");
  }
  if (from == to) throw std::invalid_argument("self-loop edges are not allowed");
  JoinEdge e;
  e.id = static_cast<EdgeId>(edges_.size());
  e.source = {from, from_col};
  e.target = {to, to_col};
  e.probability = probability;
  e.weight = edge_weight(probability);
  e.cardinality = cardinality;
  edges_.push_back(e);
  out_index_[from].push_back(e.id);
  return e.id;
}

std::string JoinGraph::to_json() const {
  nlohmann::ordered_json j;
  j["vertices"] = vertex_names_;
  auto& arr = j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : edges_) {
    nlohmann::ordered_json o;
    o["id"] = e.id;
    o["source"] = {{"table", e.source.table_id}, {"column", e.source.col_index}};
    o["target"] = {{"table", e.target.table_id}, {"column", e.target.col_index}};
    o["cardinality"] = std::string(joinfer::to_string(e.cardinality));
    o["probability"] = e.probability;
    o["weight"] = e.weight;
    arr.push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

std::string JoinGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph join_graph {\n";
  for (std::size_t v = 0; v < num_vertices_; ++v) {
    os << "  v" << v << " [label=\"" << vertex_names_[v] << "\"];\n";
  }
  for (const auto& e : edges_) {
    os << "  v" << e.from() << " -> v" << e.to() << " [label=\"e" << e.id << " p=" << e.probability
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

JoinGraph build_graph(std::size_t num_tables, const std::vector<JoinCandidate>& scored,
                      double min_probability, std::vector<std::string> table_names) {
  std::vector<JoinEdge> edges;
  for (const auto& c : scored) {
    if (c.probability < min_probability || c.probability <= 0.0) continue;
    JoinEdge e;
    e.source = c.source;
    e.target = c.target;
    e.probability = std::min(c.probability, 1.0);
    e.weight = edge_weight(e.probability);
    e.cardinality = c.cardinality;
    edges.push_back(e);
  }
  return JoinGraph(num_tables, std::move(edges), std::move(table_names));
}

double objective_cost(const JoinGraph& graph, std::span<const EdgeId> edges, std::size_t k,
                      double penalty) {
  if (k == 0) {
    // Only the empty vertex set has zero components.
    if (!edges.empty()) throw std::invalid_argument("component count k must be >= 1");
    return 0.0;
  }
  std::vector<EdgeId> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (EdgeId id : sorted) total += graph.edge(id).weight;
  return total + static_cast<double>(k - 1) * penalty;
}

}  // namespace joinfer
