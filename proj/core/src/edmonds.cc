// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/edmonds.h"

#include <limits>
#include <stdexcept>

namespace joinfer {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct WorkArc {
  std::uint32_t from;
  std::uint32_t to;
  double weight;
  std::uint32_t id;
};

bool cheaper(const WorkArc& a, const WorkArc& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  return a.id < b.id;
}

// Returns indices into `arcs` or nullopt. Contracts one cycle per level.
std::optional<std::vector<std::size_t>> solve(std::size_t n, const std::vector<WorkArc>& arcs,
                                              std::uint32_t root) {
  std::vector<std::size_t> best(n, kNone);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    if (a.from == a.to || a.to == root) continue;
    if (best[a.to] == kNone || cheaper(a, arcs[best[a.to]])) best[a.to] = i;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (v != root && best[v] == kNone) return std::nullopt;
  }

  // Find the first cycle among the chosen in-arcs.
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on current walk, 2 done
  std::vector<std::uint32_t> cycle;
  for (std::size_t start = 0; start < n && cycle.empty(); ++start) {
    if (state[start] != 0) continue;
    std::vector<std::uint32_t> walk;
    auto v = static_cast<std::uint32_t>(start);
    while (v != root && state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = arcs[best[v]].from;
    }
    if (v != root && state[v] == 1) {
      bool on = false;
      for (auto w : walk) {
        if (w == v) on = true;
        if (on) cycle.push_back(w);
      }
    }
    for (auto w : walk) state[w] = 2;
  }

  if (cycle.empty()) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < n; ++v) {
      if (v != root) out.push_back(best[v]);
    }
    return out;
  }

  // Contract the cycle into a single new vertex.
  std::vector<bool> in_cycle(n, false);
  for (auto v : cycle) in_cycle[v] = true;
  std::vector<std::uint32_t> remap(n);
  std::uint32_t next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!in_cycle[v]) remap[v] = next++;
  }
  const std::uint32_t merged = next;
  for (auto v : cycle) remap[v] = merged;

  std::vector<WorkArc> contracted;
  std::vector<std::size_t> parent;  // contracted arc -> index in `arcs`
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    const auto from = remap[a.from];
    const auto to = remap[a.to];
    if (from == to) continue;
    double w = a.weight;
    if (in_cycle[a.to]) w -= arcs[best[a.to]].weight;
    contracted.push_back({from, to, w, a.id});
    parent.push_back(i);
  }

  auto sub = solve(static_cast<std::size_t>(merged) + 1, contracted, remap[root]);
  if (!sub) return std::nullopt;

  std::vector<std::size_t> out;
  std::uint32_t entry = 0;
  bool found_entry = false;
  for (auto ci : *sub) {
    const auto& a = arcs[parent[ci]];
    out.push_back(parent[ci]);
    if (in_cycle[a.to]) {
      entry = a.to;
      found_entry = true;
    }
  }
  if (!found_entry) throw std::logic_error("contracted cycle has no entering arc");
  for (auto v : cycle) {
    if (v != entry) out.push_back(best[v]);
  }
  return out;
}

}  // namespace

std::optional<std::vector<std::size_t>> min_cost_arborescence(std::size_t num_vertices,
                                                              const std::vector<Arc>& arcs,
                                                              std::uint32_t root) {
  if (root >= num_vertices) throw std::invalid_argument("root out of range");
  std::vector<WorkArc> work;
  work.reserve(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    if (a.from >= num_vertices || a.to >= num_vertices) {
      throw std::invalid_argument("arc endpoint out of range");
    }
    work.push_back({a.from, a.to, a.weight, a.id});
  }
  return solve(num_vertices, work, root);
}

}  // namespace joinfer
