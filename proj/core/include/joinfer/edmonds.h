// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace joinfer {

/// Arc of a plain weighted digraph. `id` is the tie-break key: among arcs of
/// equal (reduced) weight the lower id wins.
struct Arc {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  double weight = 0.0;
  std::uint32_t id = 0;
};

/// Chu-Liu/Edmonds minimum-cost spanning arborescence rooted at `root`.
/// Returns indices into `arcs` of the selected arcs, or nullopt when some
/// vertex is unreachable from the root. Self-loops are ignored.
std::optional<std::vector<std::size_t>> min_cost_arborescence(std::size_t num_vertices,
                                                              const std::vector<Arc>& arcs,
                                                              std::uint32_t root);

}  // namespace joinfer
