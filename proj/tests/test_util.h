// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "joinfer/join_graph.h"
#include "joinfer/profile.h"
#include "joinfer/table_store.h"

namespace joinfer::testing {

/// Table from a header and row-major cells.
inline Table table(std::string name, std::vector<std::string> header,
                   const std::vector<std::vector<std::string>>& rows) {
  return make_table(std::move(name), std::move(header), rows);
}

/// Single-column table holding `values`.
inline Table column_table(std::string name, std::string column,
                          const std::vector<std::string>& values) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& v : values) rows.push_back({v});
  return make_table(std::move(name), {std::move(column)}, rows);
}

inline std::vector<std::string> range_values(int lo, int hi) {
  std::vector<std::string> out;
  for (int i = lo; i <= hi; ++i) out.push_back(std::to_string(i));
  return out;
}

/// Random digraph for solver property tests: up to `max_vertices` vertices
/// and `max_edges` edges, P uniform in [0.05, 0.95]. Each vertex has two
/// possible source columns so FK-once conflicts arise often.
inline JoinGraph random_graph(std::uint64_t seed, int max_vertices = 6, int max_edges = 14) {
  std::mt19937_64 rng(seed);
  const int n = std::uniform_int_distribution<int>(2, max_vertices)(rng);
  const int m = std::uniform_int_distribution<int>(0, max_edges)(rng);
  JoinGraph g(static_cast<std::size_t>(n), {});
  std::set<std::tuple<int, int, int>> seen;
  std::uniform_int_distribution<int> vertex(0, n - 1);
  std::uniform_int_distribution<int> column(0, 1);
  std::uniform_real_distribution<double> prob(0.05, 0.95);
  for (int attempts = 0; static_cast<int>(g.num_edges()) < m && attempts < 200; ++attempts) {
    const int a = vertex(rng);
    const int b = vertex(rng);
    const int col = column(rng);
    const double p = prob(rng);
    if (a == b || !seen.insert({a, b, col}).second) continue;
    g.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b), p, Cardinality::kN1,
               static_cast<std::uint32_t>(col), 0);
  }
  return g;
}

/// Seven-table graph reconstructing the worked 1-MCA example: the optimal
/// arborescence is e1,e2,e3,e4,e7,e8 (ids 0,1,2,3,6,7). Vertices:
/// 0 F, 1 A, 2 B, 3 C, 4 D, 5 E, 6 G.
inline JoinGraph example_graph() {
  JoinGraph g(7, {}, {"F", "A", "B", "C", "D", "E", "G"});
  g.add_edge(0, 1, 0.9, Cardinality::kN1, 0);  // e1 F->A
  g.add_edge(0, 2, 0.7, Cardinality::kN1, 1);  // e2 F->B
  g.add_edge(1, 3, 0.6, Cardinality::kN1, 0);  // e3 A->C
  g.add_edge(2, 4, 0.7, Cardinality::kN1, 0);  // e4 B->D
  g.add_edge(4, 2, 0.8, Cardinality::kN1, 0);  // e5 D->B
  g.add_edge(1, 4, 0.4, Cardinality::kN1, 1);  // e6 A->D
  g.add_edge(0, 5, 0.8, Cardinality::kN1, 2);  // e7 F->E
  g.add_edge(3, 6, 0.9, Cardinality::kN1, 0);  // e8 C->G
  return g;
}

}  // namespace joinfer::testing
