// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <stdexcept>
#include <thread>

#include "joinfer/pipeline.h"

namespace joinfer {
namespace {

struct CaseOutcome {
  CaseMetrics metrics;
  double seconds = 0.0;
};

CaseOutcome evaluate(const GeneratedCase& c, const PipelineConfig& config,
                     const BenchmarkOptions& options) {
  CaseOutcome out;
  out.metrics.case_id = c.id;
  try {
    const auto tables = profile_tables(c.tables, profile_options(config));
    const auto start = std::chrono::steady_clock::now();
    std::vector<JoinCandidate> scored;
    if (options.source == ProbabilitySource::kOracle) {
      scored = oracle_candidates(tables, c.truth.relationships, config);
    } else {
      if (options.model == nullptr) throw std::invalid_argument("classifier source needs a model");
      const bool schema_only = options.mode == PredictionMode::kSchemaOnly;
      if (options.model->schema_only != schema_only) {
        throw SchemaMismatchError("model and prediction mode disagree on schema-only");
      }
      scored = score_candidates(tables, *options.model, config);
    }
    const auto prediction = predict_from_scored(tables, scored, config, options.mode);
    out.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::vector<std::string> names;
    for (const auto& t : tables) names.push_back(t.table.name);
    out.metrics = edge_metrics(prediction.model, c.truth, config.equivalence, names);
    out.metrics.case_id = c.id;
  } catch (const std::exception& e) {
    out.metrics = CaseMetrics{};
    out.metrics.case_id = c.id;
    out.metrics.error = e.what();
  }
  return out;
}

MetricsReport run_parallel(std::size_t count, const std::function<GeneratedCase(std::size_t)>& load,
                           const std::function<std::string(std::size_t)>& id_of,
                           const PipelineConfig& config, const BenchmarkOptions& options) {
  std::vector<CaseOutcome> outcomes(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        outcomes[i] = evaluate(load(i), config, options);
      } catch (const std::exception& e) {
        outcomes[i].metrics.case_id = id_of(i);
        outcomes[i].metrics.error = e.what();
      }
    }
  };
  const auto n_threads = std::max<std::size_t>(1, std::min(options.threads, count));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  MetricsReport report;
  for (auto& o : outcomes) {
    report.cases.push_back(std::move(o.metrics));
    report.latencies.push_back(o.seconds);
  }
  aggregate(report);
  return report;
}

}  // namespace

MetricsReport run_benchmark(const std::vector<GeneratedCase>& cases,
                            const PipelineConfig& config, const BenchmarkOptions& options) {
  return run_parallel(
      cases.size(), [&](std::size_t i) { return cases[i]; },
      [&](std::size_t i) { return cases[i].id; }, config, options);
}

MetricsReport run_benchmark(const std::filesystem::path& corpus_dir,
                            const PipelineConfig& config, const BenchmarkOptions& options) {
  const auto listed = list_cases(corpus_dir);
  LoadOptions load;
  load.row_cap = config.row_cap;
  return run_parallel(
      listed.size(), [&](std::size_t i) { return load_case(listed[i], load); },
      [&](std::size_t i) { return listed[i].id; }, config, options);
}

}  // namespace joinfer
