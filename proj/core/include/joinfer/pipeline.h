// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "joinfer/bi_model.h"
#include "joinfer/classifier.h"
#include "joinfer/config.h"
#include "joinfer/join_graph.h"
#include "joinfer/mca_solver.h"
#include "joinfer/metrics.h"
#include "joinfer/synth.h"

namespace joinfer {

/// full: backbone plus recall edges. precision-only: backbone only.
/// schema-only: full, scored by a model trained without data features.
enum class PredictionMode { kFull, kPrecisionOnly, kSchemaOnly };

std::string_view to_string(PredictionMode mode);
std::optional<PredictionMode> parse_prediction_mode(std::string_view text);

ProfileOptions profile_options(const PipelineConfig& config);
CandidateOptions candidate_options(const PipelineConfig& config);

/// Candidates with classifier probabilities. A 1:1 pair is scored once in
/// its canonical orientation and both directions share the result.
std::vector<JoinCandidate> score_candidates(const std::vector<ProfiledTable>& tables,
                                            const LocalModel& model,
                                            const PipelineConfig& config);

/// Candidates with fixed probabilities: `positive` for ground-truth joins
/// (1:1 in both directions), `negative` for everything else.
std::vector<JoinCandidate> oracle_candidates(const std::vector<ProfiledTable>& tables,
                                             const std::vector<Relationship>& truth,
                                             const PipelineConfig& config, double positive = 0.9,
                                             double negative = 0.3);

struct Prediction {
  BIModel model;
  JoinGraph graph;
  Solution backbone;
  std::vector<EdgeId> recall;
  BranchResult search;
  // The solver stopped at its node or time limit; `model` is best-effort.
  bool timed_out = false;
};

/// Graph, k-MCA-CC backbone and (unless precision-only) the recall stage.
Prediction predict_from_scored(const std::vector<ProfiledTable>& tables,
                               const std::vector<JoinCandidate>& scored,
                               const PipelineConfig& config, PredictionMode mode,
                               bool record_trace = false);

/// Scores with `model` first. schema-only mode requires a schema-only model
/// and other modes a full one; a mismatch throws SchemaMismatchError.
Prediction predict(const std::vector<ProfiledTable>& tables, const LocalModel& model,
                   const PipelineConfig& config, PredictionMode mode, bool record_trace = false);

enum class ProbabilitySource { kClassifier, kOracle };

struct BenchmarkOptions {
  ProbabilitySource source = ProbabilitySource::kClassifier;
  PredictionMode mode = PredictionMode::kFull;
  // Required for the classifier source.
  const LocalModel* model = nullptr;
  std::size_t threads = 1;
};

/// Predicts and scores every case. Failures are recorded per case. Cases
/// run in parallel; results are ordered by case id.
MetricsReport run_benchmark(const std::vector<GeneratedCase>& cases,
                            const PipelineConfig& config, const BenchmarkOptions& options);
MetricsReport run_benchmark(const std::filesystem::path& corpus_dir,
                            const PipelineConfig& config, const BenchmarkOptions& options);

/// Training cases (profiled tables plus truth) from generated cases.
std::vector<TrainingCase> to_training_cases(const std::vector<GeneratedCase>& cases,
                                            const PipelineConfig& config);

}  // namespace joinfer
