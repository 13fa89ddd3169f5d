// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "joinfer/bi_model.h"
#include "joinfer/join_graph.h"
#include "joinfer/mca_solver.h"

namespace joinfer {

inline constexpr double kDefaultRecallThreshold = 0.5;

/// Non-backbone edges with probability >= tau, by descending probability then
/// ascending id.
std::vector<EdgeId> remaining_candidates(const JoinGraph& graph, const Solution& backbone,
                                         double tau = kDefaultRecallThreshold);

/// Greedily adds edges of `ordered` that keep backbone plus selection
/// FK-once and free of directed cycles. The reverse twin of a 1:1 edge does
/// not count as closing a cycle with it.
std::vector<EdgeId> solve_ems_greedy(const JoinGraph& graph, const Solution& backbone,
                                     std::span<const EdgeId> ordered);

/// True when `b` is the same 1:1 column pair as `a`, reversed.
bool is_one_one_twin(const JoinEdge& a, const JoinEdge& b);

/// Topological-sort check over `edges`, counting each 1:1 twin pair once.
bool directed_acyclic(const JoinGraph& graph, std::span<const EdgeId> edges);

/// Final model: backbone and recall edges with opposite 1:1 directions
/// merged into one relationship oriented from the lexicographically smaller
/// table. Relationships are sorted.
BIModel assemble_bi_model(const JoinGraph& graph, const Solution& backbone,
                          std::span<const EdgeId> recall,
                          const std::vector<ProfiledTable>& tables, std::string mode = "full");

}  // namespace joinfer
