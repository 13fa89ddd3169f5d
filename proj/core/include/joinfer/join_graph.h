// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "joinfer/candidate_gen.h"

namespace joinfer {

inline constexpr double kDefaultMinProbability = 0.01;
/// Virtual-edge penalty: -log2(0.5).
inline constexpr double kDefaultPenalty = 1.0;

using EdgeId = std::uint32_t;
using Vertex = std::uint32_t;

/// w = -log2(p).
double edge_weight(double probability);

struct JoinEdge {
  EdgeId id = 0;
  ColumnRef source;
  ColumnRef target;
  double probability = 0.0;
  double weight = 0.0;
  Cardinality cardinality = Cardinality::kN1;

  Vertex from() const { return source.table_id; }
  Vertex to() const { return target.table_id; }
};

/// Directed multigraph with one vertex per table and one edge per scored
/// candidate. Edge ids are dense and equal to the edge's index.
class JoinGraph {
 public:
  JoinGraph() = default;
  JoinGraph(std::size_t num_vertices, std::vector<JoinEdge> edges,
            std::vector<std::string> vertex_names = {});

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<JoinEdge>& edges() const { return edges_; }
  const JoinEdge& edge(EdgeId id) const { return edges_.at(id); }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }

  /// Edge ids leaving a vertex, ascending.
  std::span<const EdgeId> out_edges(Vertex v) const;
  /// Edge ids leaving a column, ascending.
  std::vector<EdgeId> edges_from_column(const ColumnRef& column) const;

  /// Convenience for tests and fixtures: adds an edge between two vertices on
  /// column 0 of each unless columns are given. Returns the new id.
  EdgeId add_edge(Vertex from, Vertex to, double probability,
                  Cardinality cardinality = Cardinality::kN1, std::uint32_t from_col = 0,
                  std::uint32_t to_col = 0);

  std::string to_json() const;
  std::string to_dot() const;

 private:
  void reindex();

  std::size_t num_vertices_ = 0;
  std::vector<JoinEdge> edges_;
  std::vector<std::string> vertex_names_;
  std::vector<std::vector<EdgeId>> out_index_;
};

/// One vertex per table (isolated tables included) and an edge for every
/// candidate with probability >= min_probability, in candidate order.
JoinGraph build_graph(std::size_t num_tables, const std::vector<JoinCandidate>& scored,
                      double min_probability = kDefaultMinProbability,
                      std::vector<std::string> table_names = {});

/// Sum of edge weights (ascending id order) plus (k - 1) * penalty.
double objective_cost(const JoinGraph& graph, std::span<const EdgeId> edges, std::size_t k,
                      double penalty = kDefaultPenalty);

}  // namespace joinfer
