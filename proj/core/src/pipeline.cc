// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/pipeline.h"

#include <algorithm>
#include <map>
#include <set>

#include "joinfer/recall_ems.h"

namespace joinfer {

std::string_view to_string(PredictionMode mode) {
  switch (mode) {
    case PredictionMode::kFull: return "full";
    case PredictionMode::kPrecisionOnly: return "precision-only";
    case PredictionMode::kSchemaOnly: return "schema-only";
  }
  return "full";
}

std::optional<PredictionMode> parse_prediction_mode(std::string_view text) {
  if (text == "full") return PredictionMode::kFull;
  if (text == "precision-only") return PredictionMode::kPrecisionOnly;
  if (text == "schema-only") return PredictionMode::kSchemaOnly;
  return std::nullopt;
}

ProfileOptions profile_options(const PipelineConfig& config) {
  ProfileOptions o;
  o.seed = config.seed;
  o.uniq_threshold = config.uniq_threshold;
  return o;
}

CandidateOptions candidate_options(const PipelineConfig& config) {
  CandidateOptions o;
  o.containment_threshold = config.containment_threshold;
  o.uniq_threshold = config.uniq_threshold;
  return o;
}

std::vector<JoinCandidate> score_candidates(const std::vector<ProfiledTable>& tables,
                                            const LocalModel& model,
                                            const PipelineConfig& config) {
  FeatureContext ctx;
  ctx.corpus_stats = &model.corpus_stats;
  ctx.schema_only = model.schema_only;
  auto candidates = enumerate_candidates(tables, candidate_options(config));
  std::map<std::pair<ColumnRef, ColumnRef>, std::pair<double, double>> one_one;
  for (auto& c : candidates) {
    if (c.cardinality == Cardinality::kOneOne) {
      JoinCandidate canonical = c;
      if (c.target < c.source) {
        std::swap(canonical.source, canonical.target);
        std::swap(canonical.left_containment, canonical.right_containment);
      }
      const auto key = std::make_pair(canonical.source, canonical.target);
      auto it = one_one.find(key);
      if (it == one_one.end()) {
        const auto fv = featurize(canonical, tables, ctx);
        const auto& cls = model.for_cardinality(Cardinality::kOneOne);
        const double raw = cls.linear.raw_score(fv.values);
        it = one_one.emplace(key, std::make_pair(raw, score(model, fv))).first;
      }
      c.raw_score = it->second.first;
      c.probability = it->second.second;
    } else {
      const auto fv = featurize(c, tables, ctx);
      c.raw_score = model.n1.linear.raw_score(fv.values);
      c.probability = score(model, fv);
    }
  }
  return candidates;
}

std::vector<JoinCandidate> oracle_candidates(const std::vector<ProfiledTable>& tables,
                                             const std::vector<Relationship>& truth,
                                             const PipelineConfig& config, double positive,
                                             double negative) {
  std::set<std::pair<ColumnRef, ColumnRef>> positives;
  for (const auto& rel : truth) {
    auto refs = resolve_relationship(rel, tables);
    if (!refs) continue;
    positives.insert(*refs);
    if (rel.cardinality == Cardinality::kOneOne) positives.emplace(refs->second, refs->first);
  }
  auto candidates = enumerate_candidates(tables, candidate_options(config));
  for (auto& c : candidates) {
    c.probability = positives.contains({c.source, c.target}) ? positive : negative;
  }
  return candidates;
}

Prediction predict_from_scored(const std::vector<ProfiledTable>& tables,
                               const std::vector<JoinCandidate>& scored,
                               const PipelineConfig& config, PredictionMode mode,
                               bool record_trace) {
  config.validate();
  std::vector<std::string> names;
  for (const auto& t : tables) names.push_back(t.table.name);

  Prediction p;
  p.graph = build_graph(tables.size(), scored, config.min_probability, std::move(names));
  SolverOptions solver;
  solver.penalty = config.penalty;
  solver.max_nodes = config.max_nodes;
  solver.timeout = std::chrono::milliseconds(config.timeout_ms);
  solver.record_trace = record_trace;
  p.search = solve_kmca_cc_search(p.graph, solver);
  p.backbone = p.search.solution;
  p.timed_out = !p.backbone.optimal;
  if (mode != PredictionMode::kPrecisionOnly) {
    const auto remaining = remaining_candidates(p.graph, p.backbone, config.tau);
    p.recall = solve_ems_greedy(p.graph, p.backbone, remaining);
  }
  p.model = assemble_bi_model(p.graph, p.backbone, p.recall, tables, std::string(to_string(mode)));
  return p;
}

Prediction predict(const std::vector<ProfiledTable>& tables, const LocalModel& model,
                   const PipelineConfig& config, PredictionMode mode, bool record_trace) {
  const bool want_schema_only = mode == PredictionMode::kSchemaOnly;
  if (model.schema_only != want_schema_only) {
    throw SchemaMismatchError(want_schema_only
                                  ? "schema-only prediction needs a model trained with --schema-only"
                                  : "model was trained schema-only; use --schema-only");
  }
  return predict_from_scored(tables, score_candidates(tables, model, config), config, mode,
                             record_trace);
}

std::vector<TrainingCase> to_training_cases(const std::vector<GeneratedCase>& cases,
                                            const PipelineConfig& config) {
  std::vector<TrainingCase> out;
  out.reserve(cases.size());
  for (const auto& c : cases) {
    TrainingCase t;
    t.id = c.id;
    t.tables = profile_tables(c.tables, profile_options(config));
    t.truth = c.truth.relationships;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace joinfer
