// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "joinfer/metrics.h"
#include "joinfer/recall_ems.h"
#include "test_util.h"

namespace joinfer {
namespace {

// Vertices: 0 F1, 1 D, 2 F2.
JoinGraph constellation() {
  JoinGraph g(3, {}, {"F1", "D", "F2"});
  g.add_edge(0, 1, 0.95, Cardinality::kN1, 0);  // F1 -> D
  g.add_edge(2, 1, 0.9, Cardinality::kN1, 0);   // F2 -> D
  g.add_edge(1, 2, 0.6, Cardinality::kN1, 1);   // D -> F2
  g.add_edge(0, 2, 0.4, Cardinality::kN1, 1);   // F1 -> F2
  return g;
}

TEST(RemainingCandidates, ThresholdAndOrder) {
  const auto g = constellation();
  const auto backbone = make_solution(g, {0});
  EXPECT_EQ(remaining_candidates(g, backbone, 0.5), (std::vector<EdgeId>{1, 2}));
  EXPECT_EQ(remaining_candidates(g, backbone, 0.0), (std::vector<EdgeId>{1, 2, 3}));
  const auto chain = make_solution(g, {0, 2});
  EXPECT_EQ(remaining_candidates(g, chain, 0.5), (std::vector<EdgeId>{1}));
}

TEST(RemainingCandidates, EmptyWhenBackboneHasEverything) {
  JoinGraph g(2, {});
  g.add_edge(0, 1, 0.9);
  EXPECT_TRUE(remaining_candidates(g, make_solution(g, {0})).empty());
}

TEST(EmsGreedy, RejectsCycle) {
  const auto g = constellation();
  const auto backbone = make_solution(g, {0});
  const std::vector<EdgeId> ordered{1, 2};
  EXPECT_EQ(solve_ems_greedy(g, backbone, ordered), (std::vector<EdgeId>{1}));
}

TEST(EmsGreedy, RejectsSharedSourceColumn) {
  JoinGraph g(3, {});
  g.add_edge(0, 1, 0.9, Cardinality::kN1, 0);
  g.add_edge(0, 2, 0.8, Cardinality::kN1, 0);
  const auto backbone = make_solution(g, {0});
  const std::vector<EdgeId> ordered{1};
  EXPECT_TRUE(solve_ems_greedy(g, backbone, ordered).empty());
  EXPECT_TRUE(solve_ems_greedy(g, backbone, {}).empty());
}

TEST(EmsGreedy, ResultIsAcyclicAndMaximal) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = testing::random_graph(seed, 7, 18);
    const auto backbone = solve_kmca_cc(g, 1.0);
    const auto r = remaining_candidates(g, backbone, 0.0);
    const auto s = solve_ems_greedy(g, backbone, r);
    std::vector<EdgeId> all = backbone.edges;
    all.insert(all.end(), s.begin(), s.end());
    EXPECT_TRUE(directed_acyclic(g, all)) << seed;
    EXPECT_TRUE(check_fk_once(g, all).empty()) << seed;
    for (EdgeId e : r) {
      if (std::find(s.begin(), s.end(), e) != s.end()) continue;
      auto extended = all;
      extended.push_back(e);
      EXPECT_TRUE(!directed_acyclic(g, extended) || !check_fk_once(g, extended).empty())
          << "edge " << e << " could still be added, seed " << seed;
    }
  }
}

std::vector<ProfiledTable> named_tables(const std::vector<std::string>& names) {
  std::vector<Table> tables;
  for (const auto& n : names) {
    tables.push_back(testing::table(n, {"id", "ref", "ref2"}, {{"1", "1", "1"}}));
  }
  return profile_tables(std::move(tables));
}

TEST(AssembleBiModel, BackboneOnly) {
  const auto g = constellation();
  const auto tables = named_tables({"F1", "D", "F2"});
  const auto model = assemble_bi_model(g, make_solution(g, {0}), {}, tables);
  ASSERT_EQ(model.relationships.size(), 1u);
  EXPECT_EQ(model.relationships[0].provenance, Provenance::kBackbone);
  EXPECT_EQ(model.relationships[0].from_table, "F1");
  EXPECT_EQ(model.relationships[0].to_table, "D");
  EXPECT_EQ(model.k, 2u);
}

TEST(AssembleBiModel, OneOneCollapsesAndCountsAdd) {
  JoinGraph g(3, {});
  g.add_edge(1, 0, 0.8, Cardinality::kOneOne, 0, 0);  // B.id -> A.id
  g.add_edge(0, 1, 0.8, Cardinality::kOneOne, 0, 0);  // A.id -> B.id
  g.add_edge(2, 0, 0.9, Cardinality::kN1, 1, 0);      // F.ref -> A.id
  const auto tables = named_tables({"A", "B", "F"});
  const auto backbone = make_solution(g, {1, 2});
  const std::vector<EdgeId> recall{0};
  const auto model = assemble_bi_model(g, backbone, recall, tables);
  ASSERT_EQ(model.relationships.size(), 2u);
  std::size_t one_one = 0;
  for (const auto& r : model.relationships) {
    if (r.cardinality == Cardinality::kOneOne) {
      ++one_one;
      EXPECT_EQ(r.provenance, Provenance::kBackbone);
    }
  }
  EXPECT_EQ(one_one, 1u);
}

Relationship rel(std::string from, std::string fcol, std::string to, std::string tcol,
                 Cardinality c = Cardinality::kN1) {
  Relationship r;
  r.from_table = std::move(from);
  r.from_columns = {std::move(fcol)};
  r.to_table = std::move(to);
  r.to_columns = {std::move(tcol)};
  r.cardinality = c;
  return r;
}

BIModel model_of(std::vector<Relationship> rels) {
  BIModel m;
  m.relationships = std::move(rels);
  return m;
}

TEST(EdgeMetrics, PartialMatch) {
  const auto truth = model_of({rel("F", "a", "A", "id"), rel("F", "b", "B", "id"),
                               rel("F", "c", "C", "id"), rel("F", "d", "D", "id")});
  const auto pred =
      model_of({rel("F", "a", "A", "id"), rel("F", "b", "B", "id"), rel("F", "c", "D", "id")});
  const auto m = edge_metrics(pred, truth);
  EXPECT_NEAR(m.p_edge, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(m.r_edge, 0.5, 1e-12);
  EXPECT_NEAR(m.f_edge, 4.0 / 7.0, 1e-12);
  EXPECT_EQ(m.p_case, 0);
}

TEST(EdgeMetrics, ExactMatch) {
  const auto truth = model_of({rel("F", "a", "A", "id")});
  const auto m = edge_metrics(truth, truth);
  EXPECT_DOUBLE_EQ(m.p_edge, 1.0);
  EXPECT_DOUBLE_EQ(m.r_edge, 1.0);
  EXPECT_DOUBLE_EQ(m.f_edge, 1.0);
  EXPECT_EQ(m.p_case, 1);
}

TEST(EdgeMetrics, EquivalenceThroughOneOne) {
  const auto truth = model_of(
      {rel("F", "a_id", "A", "id"), rel("A", "id", "B", "id", Cardinality::kOneOne)});
  const auto pred = model_of(
      {rel("F", "a_id", "B", "id"), rel("B", "id", "A", "id", Cardinality::kOneOne)});
  const auto on = edge_metrics(pred, truth, true);
  EXPECT_DOUBLE_EQ(on.f_edge, 1.0);
  EXPECT_EQ(on.p_case, 1);
  const auto off = edge_metrics(pred, truth, false);
  EXPECT_DOUBLE_EQ(off.p_edge, 0.5);
}

TEST(EdgeMetrics, DirectionMattersForManyToOne) {
  const auto truth = model_of({rel("F", "a", "A", "id")});
  const auto pred = model_of({rel("A", "id", "F", "a")});
  EXPECT_DOUBLE_EQ(edge_metrics(pred, truth).p_edge, 0.0);
}

TEST(EdgeMetrics, EmptyModelsAndUnknownTables) {
  const auto truth = model_of({rel("F", "a", "A", "id")});
  const auto none = model_of({});
  const auto m = edge_metrics(none, truth);
  EXPECT_DOUBLE_EQ(m.p_edge, 0.0);
  EXPECT_DOUBLE_EQ(m.f_edge, 0.0);
  const auto both = edge_metrics(none, none);
  EXPECT_DOUBLE_EQ(both.p_edge, 1.0);
  EXPECT_DOUBLE_EQ(both.r_edge, 1.0);
  EXPECT_THROW(edge_metrics(truth, truth, true, {"F"}), std::invalid_argument);
}

TEST(EdgeMetrics, Bounds) {
  std::mt19937_64 rng(2);
  const std::vector<std::string> names{"F", "A", "B", "C"};
  for (int trial = 0; trial < 100; ++trial) {
    auto random_model = [&] {
      std::vector<Relationship> rels;
      const int n = static_cast<int>(rng() % 4);
      for (int i = 0; i < n; ++i) {
        rels.push_back(rel(names[rng() % 4], "c" + std::to_string(rng() % 2), names[rng() % 4], "id"));
      }
      return model_of(rels);
    };
    const auto m = edge_metrics(random_model(), random_model());
    for (double v : {m.p_edge, m.r_edge, m.f_edge}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_LE(m.f_edge, std::max(m.p_edge, m.r_edge) + 1e-12);
    EXPECT_GE(m.f_edge, std::min(m.p_edge, m.r_edge) - 1e-12);
  }
}

TEST(Report, PercentilesAndAggregate) {
  const auto l = latency_percentiles({4.0, 1.0, 3.0, 2.0, 5.0});
  EXPECT_DOUBLE_EQ(l.p50, 3.0);
  EXPECT_NEAR(l.p90, 4.6, 1e-12);
  EXPECT_NEAR(l.p95, 4.8, 1e-12);
  EXPECT_DOUBLE_EQ(l.max, 5.0);

  MetricsReport report;
  CaseMetrics ok;
  ok.case_id = "0000";
  ok.p_edge = ok.r_edge = ok.f_edge = 1.0;
  ok.p_case = 1;
  CaseMetrics failed;
  failed.case_id = "0001";
  failed.error = "boom";
  report.cases = {ok, failed};
  report.latencies = {0.1, 0.2};
  aggregate(report);
  EXPECT_DOUBLE_EQ(report.mean_f_edge, 0.5);
  EXPECT_DOUBLE_EQ(report.mean_p_case, 0.5);
  EXPECT_EQ(report.failures, 1u);
  const auto j = nlohmann::json::parse(report_to_json(report));
  EXPECT_EQ(j.dump().find("seconds"), std::string::npos);
  EXPECT_TRUE(nlohmann::json::parse(latency_to_json(report)).contains("p50_seconds"));
  EXPECT_NE(report_to_text(report).find("P_case"), std::string::npos);
}

}  // namespace
}  // namespace joinfer
