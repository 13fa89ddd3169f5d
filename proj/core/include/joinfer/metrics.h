// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "joinfer/bi_model.h"

namespace joinfer {

struct CaseMetrics {
  std::string case_id;
  double p_edge = 0.0;
  double r_edge = 0.0;
  double f_edge = 0.0;
  // 1 when every predicted edge is correct, else 0.
  int p_case = 0;
  std::size_t predicted = 0;
  std::size_t truth = 0;
  std::size_t correct = 0;
  // Non-empty when the case failed; such cases score zero.
  std::string error;
};

/// Scores predicted relationships against the ground truth. N:1 joins match
/// directionally and 1:1 joins in either direction. With `equivalence`,
/// columns linked by 1:1 joins (from either side, transitively) form one
/// class and N:1 endpoints are compared by class. Each truth relationship
/// matches at most one prediction. When `table_names` is non-empty, a
/// relationship naming any other table throws std::invalid_argument.
CaseMetrics edge_metrics(const BIModel& predicted, const BIModel& truth, bool equivalence = true,
                         const std::vector<std::string>& table_names = {});

struct LatencySummary {
  double p50 = 0.0;
  double p90 = 0.0;
  double p95 = 0.0;
  double max = 0.0;
};

/// Linear-interpolation percentiles of `seconds`.
LatencySummary latency_percentiles(std::vector<double> seconds);

struct MetricsReport {
  std::vector<CaseMetrics> cases;
  double mean_p_edge = 0.0;
  double mean_r_edge = 0.0;
  double mean_f_edge = 0.0;
  double mean_p_case = 0.0;
  std::size_t failures = 0;
  // Per-case wall-clock seconds, parallel to `cases`.
  std::vector<double> latencies;
  LatencySummary latency;
};

/// Fills the means and latency summary from `cases` and `latencies`.
void aggregate(MetricsReport& report);

/// Metrics only; deterministic for a fixed input.
std::string report_to_json(const MetricsReport& report);
/// Timings, kept apart from the metrics because they vary run to run.
std::string latency_to_json(const MetricsReport& report);
/// Fixed-width table with P_edge, R_edge, F_edge and P_case columns.
std::string report_to_text(const MetricsReport& report);

}  // namespace joinfer
