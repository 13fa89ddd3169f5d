// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/mca_solver.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "joinfer/edmonds.h"

namespace joinfer {
namespace {

bool enabled(const EdgeMask& mask, EdgeId id) { return mask.empty() || mask[id]; }

std::vector<Arc> graph_arcs(const JoinGraph& graph, const EdgeMask& mask) {
  if (!mask.empty() && mask.size() != graph.num_edges()) {
    throw std::invalid_argument("edge mask size does not match graph");
  }
  std::vector<Arc> arcs;
  arcs.reserve(graph.num_edges());
  for (const auto& e : graph.edges()) {
    if (enabled(mask, e.id)) arcs.push_back({e.from(), e.to(), e.weight, e.id});
  }
  return arcs;
}

}  // namespace

bool is_k_arborescence(const JoinGraph& graph, std::span<const EdgeId> edges, std::string* reason) {
  const auto n = graph.num_vertices();
  std::vector<int> parent(n, -1);
  for (EdgeId id : edges) {
    if (id >= graph.num_edges()) {
      if (reason) *reason = "unknown edge id " + std::to_string(id);
      return false;
    }
    const auto& e = graph.edge(id);
    if (parent[e.to()] != -1) {
      if (reason) *reason = "vertex " + std::to_string(e.to()) + " has in-degree > 1";
      return false;
    }
    parent[e.to()] = static_cast<int>(e.from());
  }
  // With in-degree <= 1, following parents from any vertex either reaches a
  // root or loops.
  std::vector<int> state(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<std::size_t> walk;
    auto v = static_cast<int>(start);
    while (v != -1 && state[v] == 0) {
      state[v] = 1;
      walk.push_back(static_cast<std::size_t>(v));
      v = parent[v];
    }
    if (v != -1 && state[v] == 1) {
      if (reason) *reason = "directed cycle through vertex " + std::to_string(v);
      return false;
    }
    for (auto w : walk) state[w] = 2;
  }
  return true;
}

Solution make_solution(const JoinGraph& graph, std::vector<EdgeId> edges, double penalty) {
  std::sort(edges.begin(), edges.end());
  std::string reason;
  if (!is_k_arborescence(graph, edges, &reason)) {
    throw std::logic_error("not a k-arborescence: " + reason);
  }
  std::vector<bool> has_parent(graph.num_vertices(), false);
  for (EdgeId id : edges) has_parent[graph.edge(id).to()] = true;
  Solution s;
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
    if (!has_parent[v]) s.roots.push_back(static_cast<Vertex>(v));
  }
  s.k = s.roots.size();
  s.cost = objective_cost(graph, edges, s.k, penalty);
  s.edges = std::move(edges);
  return s;
}

std::optional<Solution> edmonds_fixed_root(const JoinGraph& graph, Vertex root,
                                           const EdgeMask& mask) {
  if (root >= graph.num_vertices()) throw std::invalid_argument("root out of range");
  const auto arcs = graph_arcs(graph, mask);
  auto picked = min_cost_arborescence(graph.num_vertices(), arcs, root);
  if (!picked) return std::nullopt;
  std::vector<EdgeId> edges;
  for (auto i : *picked) edges.push_back(arcs[i].id);
  return make_solution(graph, std::move(edges));
}

std::optional<Solution> solve_1mca(const JoinGraph& graph, const EdgeMask& mask) {
  if (graph.num_vertices() == 0) throw std::invalid_argument("graph has no vertices");
  std::optional<Solution> best;
  for (Vertex r = 0; r < graph.num_vertices(); ++r) {
    auto s = edmonds_fixed_root(graph, r, mask);
    if (s && (!best || s->cost < best->cost)) best = std::move(s);
  }
  return best;
}

Solution solve_kmca(const JoinGraph& graph, double penalty, const EdgeMask& mask) {
  if (!(penalty >= 0.0)) throw std::invalid_argument("penalty must be >= 0");
  const auto n = graph.num_vertices();
  if (n == 0) return Solution{};
  auto arcs = graph_arcs(graph, mask);
  const auto real = arcs.size();
  const auto root = static_cast<Vertex>(n);
  // Artificial ids sort after every real id so a real edge wins a tie.
  const auto first_artificial = static_cast<std::uint32_t>(graph.num_edges());
  for (Vertex v = 0; v < n; ++v) arcs.push_back({root, v, penalty, first_artificial + v});
  auto picked = min_cost_arborescence(n + 1, arcs, root);
  if (!picked) throw std::logic_error("artificial root failed to span the graph");
  std::vector<EdgeId> edges;
  std::size_t artificial = 0;
  for (auto i : *picked) {
    if (i < real) {
      edges.push_back(arcs[i].id);
    } else {
      ++artificial;
    }
  }
  auto s = make_solution(graph, std::move(edges), penalty);
  if (s.k != artificial) throw std::logic_error("component count disagrees with root edges");
  return s;
}

std::vector<ConflictSet> check_fk_once(const JoinGraph& graph, std::span<const EdgeId> edges) {
  std::map<ColumnRef, std::vector<EdgeId>> by_source;
  for (EdgeId id : edges) by_source[graph.edge(id).source].push_back(id);
  std::vector<ConflictSet> out;
  for (auto& [column, ids] : by_source) {
    if (ids.size() < 2) continue;
    std::sort(ids.begin(), ids.end());
    std::vector<ColumnRef> targets;
    for (EdgeId id : ids) targets.push_back(graph.edge(id).target);
    std::sort(targets.begin(), targets.end());
    if (std::unique(targets.begin(), targets.end()) - targets.begin() < 2) continue;
    out.push_back({column, std::move(ids)});
  }
  return out;
}

std::string to_string(BranchEvent::Kind kind) {
  switch (kind) {
    case BranchEvent::Kind::kFeasible: return "feasible";
    case BranchEvent::Kind::kPruned: return "pruned";
    case BranchEvent::Kind::kBranched: return "branched";
    case BranchEvent::Kind::kLimit: return "limit";
  }
  return "unknown";
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const JoinGraph& graph, const SolverOptions& options)
      : graph_(graph), options_(options), start_(std::chrono::steady_clock::now()) {}

  BranchResult run() {
    visit(EdgeMask(graph_.num_edges(), true), 0);
    BranchResult result;
    result.nodes = nodes_;
    if (limit_hit_) {
      auto repaired = repair(root_solution_);
      if (!incumbent_ || repaired.cost < incumbent_->cost) incumbent_ = std::move(repaired);
      incumbent_->optimal = false;
    }
    result.solution = std::move(*incumbent_);
    if (!check_fk_once(graph_, result.solution.edges).empty()) {
      throw std::logic_error("branch-and-bound returned an FK-once violation");
    }
    result.trace = std::move(trace_);
    result.incumbent_history = std::move(history_);
    return result;
  }

 private:
  bool out_of_budget() const {
    return nodes_ >= options_.max_nodes ||
           std::chrono::steady_clock::now() - start_ > options_.timeout;
  }

  void record(BranchEvent event) {
    if (options_.record_trace) trace_.push_back(std::move(event));
  }

  void visit(const EdgeMask& mask, std::size_t depth) {
    if (limit_hit_) return;
    if (out_of_budget()) {
      limit_hit_ = true;
      record({nodes_, depth, BranchEvent::Kind::kLimit, 0.0, std::nullopt, 0});
      return;
    }
    const auto node = nodes_++;
    auto relaxed = solve_kmca(graph_, options_.penalty, mask);
    if (node == 0) root_solution_ = relaxed;
    const auto conflicts = check_fk_once(graph_, relaxed.edges);
    if (conflicts.empty()) {
      record({node, depth, BranchEvent::Kind::kFeasible, relaxed.cost, std::nullopt, 0});
      if (!incumbent_ || relaxed.cost < incumbent_->cost) {
        incumbent_ = std::move(relaxed);
        history_.push_back(incumbent_->cost);
      }
      return;
    }
    if (incumbent_ && relaxed.cost >= incumbent_->cost) {
      record({node, depth, BranchEvent::Kind::kPruned, relaxed.cost, std::nullopt, 0});
      return;
    }
    // Largest conflict first; conflicts arrive ordered by column so the
    // first maximum is the lowest column.
    const ConflictSet* chosen = &conflicts.front();
    for (const auto& c : conflicts) {
      if (c.edges.size() > chosen->edges.size()) chosen = &c;
    }
    record({node, depth, BranchEvent::Kind::kBranched, relaxed.cost, chosen->source_column,
            chosen->edges.size()});
    for (EdgeId keep : chosen->edges) {
      EdgeMask sub = mask;
      for (EdgeId other : chosen->edges) {
        if (other != keep) sub[other] = false;
      }
      visit(sub, depth + 1);
    }
  }

  // Keeps only the cheapest edge of each conflict; dropping edges from a
  // k-arborescence leaves a valid (k + d)-arborescence.
  Solution repair(const Solution& s) const {
    std::vector<bool> drop(graph_.num_edges(), false);
    for (const auto& c : check_fk_once(graph_, s.edges)) {
      EdgeId best = c.edges.front();
      for (EdgeId id : c.edges) {
        if (graph_.edge(id).weight < graph_.edge(best).weight) best = id;
      }
      for (EdgeId id : c.edges) drop[id] = id != best;
    }
    std::vector<EdgeId> kept;
    for (EdgeId id : s.edges) {
      if (!drop[id]) kept.push_back(id);
    }
    return make_solution(graph_, std::move(kept), options_.penalty);
  }

  const JoinGraph& graph_;
  const SolverOptions& options_;
  const std::chrono::steady_clock::time_point start_;
  std::size_t nodes_ = 0;
  bool limit_hit_ = false;
  std::optional<Solution> incumbent_;
  Solution root_solution_;
  std::vector<BranchEvent> trace_;
  std::vector<double> history_;
};

}  // namespace

BranchResult solve_kmca_cc_search(const JoinGraph& graph, const SolverOptions& options) {
  if (!(options.penalty >= 0.0)) throw std::invalid_argument("penalty must be >= 0");
  if (graph.num_vertices() == 0) return BranchResult{};
  return BranchAndBound(graph, options).run();
}

std::string trace_to_jsonl(const BranchResult& result) {
  std::string out;
  for (const auto& ev : result.trace) {
    nlohmann::ordered_json j;
    j["node"] = ev.node;
    j["depth"] = ev.depth;
    j["kind"] = to_string(ev.kind);
    j["cost"] = ev.cost;
    if (ev.conflict) {
      j["conflict"] = {{"table", ev.conflict->table_id}, {"column", ev.conflict->col_index}};
      j["branches"] = ev.branches;
    }
    out += j.dump() + "\n";
  }
  for (std::size_t i = 0; i < result.incumbent_history.size(); ++i) {
    nlohmann::ordered_json j;
    j["incumbent"] = i;
    j["cost"] = result.incumbent_history[i];
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace joinfer
