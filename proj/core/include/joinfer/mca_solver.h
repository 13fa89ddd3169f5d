// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "joinfer/join_graph.h"

namespace joinfer {

/// A k-arborescence over the graph's vertices. `edges` and `roots` are sorted.
struct Solution {
  std::vector<EdgeId> edges;
  std::vector<Vertex> roots;
  std::size_t k = 0;
  double cost = 0.0;
  // False when branch-and-bound stopped at its node or time limit.
  bool optimal = true;
};

/// Selected edges sharing one source column but reaching different tables.
struct ConflictSet {
  ColumnRef source_column;
  std::vector<EdgeId> edges;
};

/// Per-edge enable flags; an empty mask enables every edge.
using EdgeMask = std::vector<bool>;

/// Builds a Solution from an edge set, deriving roots, k and cost. Throws
/// std::logic_error if the edges do not form a k-arborescence.
Solution make_solution(const JoinGraph& graph, std::vector<EdgeId> edges,
                       double penalty = kDefaultPenalty);

/// True iff every vertex has in-degree <= 1 and there is no directed cycle.
/// On failure `reason` (if given) describes the violation.
bool is_k_arborescence(const JoinGraph& graph, std::span<const EdgeId> edges,
                       std::string* reason = nullptr);

/// Minimum spanning arborescence rooted at `root`; nullopt when some vertex is
/// unreachable.
std::optional<Solution> edmonds_fixed_root(const JoinGraph& graph, Vertex root,
                                           const EdgeMask& mask = {});

/// Cheapest spanning arborescence over every root choice.
std::optional<Solution> solve_1mca(const JoinGraph& graph, const EdgeMask& mask = {});

/// Minimum-cost k-arborescence via an artificial root joined to every vertex
/// at weight `penalty`.
Solution solve_kmca(const JoinGraph& graph, double penalty = kDefaultPenalty,
                    const EdgeMask& mask = {});

/// Conflicts among `edges`, ordered by source column.
std::vector<ConflictSet> check_fk_once(const JoinGraph& graph, std::span<const EdgeId> edges);

struct SolverOptions {
  double penalty = kDefaultPenalty;
  std::size_t max_nodes = 10000;
  std::chrono::milliseconds timeout{10000};
  bool record_trace = false;
};

struct BranchEvent {
  enum class Kind { kFeasible, kPruned, kBranched, kLimit };
  std::size_t node = 0;
  std::size_t depth = 0;
  Kind kind = Kind::kFeasible;
  double cost = 0.0;
  std::optional<ColumnRef> conflict;
  std::size_t branches = 0;
};

std::string to_string(BranchEvent::Kind kind);

struct BranchResult {
  Solution solution;
  std::size_t nodes = 0;
  std::vector<BranchEvent> trace;
  // Incumbent cost after each improvement.
  std::vector<double> incumbent_history;
};

/// k-MCA under the FK-once constraint, by branch-and-bound on conflict sets.
BranchResult solve_kmca_cc_search(const JoinGraph& graph, const SolverOptions& options = {});

inline Solution solve_kmca_cc(const JoinGraph& graph, double penalty = kDefaultPenalty) {
  SolverOptions options;
  options.penalty = penalty;
  return solve_kmca_cc_search(graph, options).solution;
}

/// One JSON object per line.
std::string trace_to_jsonl(const BranchResult& result);

// Exhaustive references for testing.

enum class OracleConstraint { kNone, kFkOnce };
inline constexpr std::size_t kOracleMaxEdges = 20;

/// Minimum objective over all edge subsets forming a k-arborescence. Ties go
/// to the lexicographically smallest edge-id set. Throws
/// std::invalid_argument above kOracleMaxEdges edges.
Solution brute_force_oracle(const JoinGraph& graph, double penalty = kDefaultPenalty,
                            OracleConstraint constraint = OracleConstraint::kNone);

/// Minimum spanning arborescence rooted at `root`, by enumeration.
std::optional<Solution> brute_force_fixed_root(const JoinGraph& graph, Vertex root);

/// Every edge set forming a k-arborescence with exactly `k` components.
std::vector<std::vector<EdgeId>> enumerate_k_arborescences(const JoinGraph& graph, std::size_t k);

}  // namespace joinfer
