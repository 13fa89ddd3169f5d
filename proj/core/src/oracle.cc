// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

// Exhaustive subset enumeration used as a reference for the exact solvers.

#include <bit>
#include <cstdint>
#include <stdexcept>

#include "joinfer/mca_solver.h"

namespace joinfer {
namespace {

void check_size(const JoinGraph& graph) {
  if (graph.num_edges() > kOracleMaxEdges) {
    throw std::invalid_argument("brute-force oracle limited to " +
                                std::to_string(kOracleMaxEdges) + " edges");
  }
}

std::vector<EdgeId> ids_of(std::uint32_t subset) {
  std::vector<EdgeId> ids;
  for (EdgeId i = 0; subset != 0; ++i, subset >>= 1) {
    if (subset & 1U) ids.push_back(i);
  }
  return ids;
}

// Calls fn(ids) for each subset of `size` edges (any size if size < 0) that
// forms a k-arborescence.
template <typename Fn>
void for_each_forest(const JoinGraph& graph, int size, Fn&& fn) {
  check_size(graph);
  const auto m = graph.num_edges();
  const auto max_size = graph.num_vertices() == 0 ? 0 : graph.num_vertices() - 1;
  const std::uint32_t limit = m == 0 ? 1U : (1U << m);
  for (std::uint32_t subset = 0; subset < limit; ++subset) {
    const auto count = static_cast<std::size_t>(std::popcount(subset));
    if (count > max_size) continue;
    if (size >= 0 && count != static_cast<std::size_t>(size)) continue;
    const auto ids = ids_of(subset);
    if (is_k_arborescence(graph, ids)) fn(ids);
  }
}

}  // namespace

Solution brute_force_oracle(const JoinGraph& graph, double penalty, OracleConstraint constraint) {
  std::optional<Solution> best;
  for_each_forest(graph, -1, [&](const std::vector<EdgeId>& ids) {
    if (constraint == OracleConstraint::kFkOnce && !check_fk_once(graph, ids).empty()) return;
    auto s = make_solution(graph, ids, penalty);
    if (!best || s.cost < best->cost || (s.cost == best->cost && s.edges < best->edges)) {
      best = std::move(s);
    }
  });
  return best ? std::move(*best) : Solution{};
}

std::optional<Solution> brute_force_fixed_root(const JoinGraph& graph, Vertex root) {
  if (root >= graph.num_vertices()) throw std::invalid_argument("root out of range");
  std::optional<Solution> best;
  const auto size = static_cast<int>(graph.num_vertices()) - 1;
  for_each_forest(graph, size, [&](const std::vector<EdgeId>& ids) {
    auto s = make_solution(graph, ids);
    if (s.roots.front() != root) return;
    if (!best || s.cost < best->cost || (s.cost == best->cost && s.edges < best->edges)) {
      best = std::move(s);
    }
  });
  return best;
}

std::vector<std::vector<EdgeId>> enumerate_k_arborescences(const JoinGraph& graph, std::size_t k) {
  std::vector<std::vector<EdgeId>> out;
  if (k == 0 || k > graph.num_vertices()) return out;
  const auto size = static_cast<int>(graph.num_vertices() - k);
  for_each_forest(graph, size, [&](const std::vector<EdgeId>& ids) { out.push_back(ids); });
  return out;
}

}  // namespace joinfer
