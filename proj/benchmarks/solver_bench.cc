// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "joinfer/features.h"
#include "joinfer/mca_solver.h"
#include "joinfer/pipeline.h"
#include "joinfer/synth.h"

namespace {

using namespace joinfer;

// Dense random graph on n vertices with two source columns per vertex.
JoinGraph dense_graph(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> p(0.05, 0.95);
  JoinGraph g(n, {});
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) {
      if (a != b && rng() % 4 == 0) g.add_edge(a, b, p(rng), Cardinality::kN1, b % 2);
    }
  }
  return g;
}

void BM_EdmondsFixedRoot(benchmark::State& state) {
  const auto g = dense_graph(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(edmonds_fixed_root(g, 0));
  state.counters["edges"] = static_cast<double>(g.num_edges());
}
BENCHMARK(BM_EdmondsFixedRoot)->Arg(10)->Arg(40)->Arg(88);

void BM_Kmca(benchmark::State& state) {
  const auto g = dense_graph(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(solve_kmca(g));
}
BENCHMARK(BM_Kmca)->Arg(10)->Arg(40)->Arg(88);

// Generated 40-table schemas scored with noisy probabilities.
struct LargeCase {
  JoinGraph graph;
  std::vector<ProfiledTable> tables;
};

LargeCase large_case() {
  SchemaSpec s;
  s.n_fact = {5, 6};
  s.dims_per_fact = {4, 6};
  s.rows_fact = {60, 120};
  s.rows_dim = {12, 40};
  s.max_tables = 40;
  const auto c = generate_case(s, 9001);
  const PipelineConfig config;
  LargeCase out;
  out.tables = profile_tables(c.tables, profile_options(config));
  auto scored = oracle_candidates(out.tables, c.truth.relationships, config, 1.0, 0.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> hit(0.6, 0.95), miss(0.05, 0.7);
  for (auto& cand : scored) cand.probability = cand.probability == 1.0 ? hit(rng) : miss(rng);
  out.graph = build_graph(out.tables.size(), scored, config.min_probability);
  return out;
}

void BM_KmcaCcLargeSchema(benchmark::State& state) {
  static const auto c = large_case();
  for (auto _ : state) benchmark::DoNotOptimize(solve_kmca_cc(c.graph));
  state.counters["tables"] = static_cast<double>(c.tables.size());
  state.counters["edges"] = static_cast<double>(c.graph.num_edges());
}
BENCHMARK(BM_KmcaCcLargeSchema)->Unit(benchmark::kMillisecond);

void BM_FeaturizeCandidates(benchmark::State& state) {
  static const auto c = large_case();
  const auto candidates = enumerate_candidates(c.tables);
  const FeatureContext context;
  for (auto _ : state) {
    for (const auto& cand : candidates) benchmark::DoNotOptimize(featurize(cand, c.tables, context));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(candidates.size()));
}
BENCHMARK(BM_FeaturizeCandidates)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
