// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.h"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

namespace joinfer::cli {
namespace {

using nlohmann::ordered_json;

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void emit(const std::optional<std::filesystem::path>& output, const std::string& text) {
  if (output) {
    write_text(*output, text);
  } else {
    std::cout << text;
  }
}

LoadOptions load_options(const PipelineConfig& config) {
  LoadOptions o;
  o.row_cap = config.row_cap;
  return o;
}

// Returns nullopt (after printing) when the directory has no tables.
std::optional<std::vector<ProfiledTable>> load_input(const Common& common,
                                                     const std::filesystem::path& dir) {
  auto tables = load_tables_from_dir(dir, load_options(common.config));
  if (tables.empty()) {
    std::cerr << "no tables found in " << dir << "\n";
    return std::nullopt;
  }
  return profile_tables(std::move(tables), profile_options(common.config));
}

std::string column_label(const std::vector<ProfiledTable>& tables, const ColumnRef& ref) {
  return tables[ref.table_id].table.name + "." + tables[ref.table_id].columns[ref.col_index].name;
}

std::vector<GeneratedCase> load_corpus(const Common& common, const std::filesystem::path& dir) {
  std::vector<GeneratedCase> out;
  for (const auto& c : list_cases(dir)) out.push_back(load_case(c, load_options(common.config)));
  return out;
}

}  // namespace

int cmd_profile(const Common& common, const std::filesystem::path& input,
                const std::optional<std::filesystem::path>& output) {
  auto tables = load_input(common, input);
  if (!tables) return kNoTables;
  std::string text;
  for (const auto& t : *tables) text += ordered_json::parse(profiles_to_json(t)).dump() + "\n";
  emit(output, text);
  return kOk;
}

int cmd_candidates(const Common& common, const std::filesystem::path& input, bool with_model,
                   const std::optional<std::filesystem::path>& output) {
  auto tables = load_input(common, input);
  if (!tables) return kNoTables;
  std::vector<JoinCandidate> candidates;
  if (with_model) {
    const auto model = load_model(common.config.model_path);
    candidates = score_candidates(*tables, model, common.config);
  } else {
    candidates = enumerate_candidates(*tables, candidate_options(common.config));
  }
  std::string text;
  for (const auto& c : candidates) {
    ordered_json j;
    j["source"] = column_label(*tables, c.source);
    j["target"] = column_label(*tables, c.target);
    j["cardinality"] = std::string(to_string(c.cardinality));
    j["left_containment"] = c.left_containment;
    j["right_containment"] = c.right_containment;
    if (with_model) j["probability"] = c.probability;
    text += j.dump() + "\n";
  }
  emit(output, text);
  return kOk;
}

int cmd_train(const Common& common, const TrainArgs& args) {
  const auto corpus = load_corpus(common, args.corpus);
  if (corpus.empty()) {
    std::cerr << "no case_* directories in " << args.corpus << "\n";
    return kEmptyCorpus;
  }
  TrainOptions options;
  options.seed = common.config.seed;
  options.schema_only = args.schema_only;
  options.label_transitivity = args.transitivity;
  options.candidates = candidate_options(common.config);
  const auto model = train(to_training_cases(corpus, common.config), options);
  save_model(model, common.config.model_path);
  std::cout << "trained on " << corpus.size() << " cases"
            << (model.schema_only ? " (schema-only)" : "") << "\n"
            << "  N:1  positives " << model.n1.positives << ", negatives " << model.n1.negatives
            << (model.n1.low_confidence ? " [low confidence]" : "") << "\n"
            << "  1:1  positives " << model.one_one.positives << ", negatives "
            << model.one_one.negatives << (model.one_one.low_confidence ? " [low confidence]" : "")
            << "\n"
            << "model written to " << common.config.model_path << "\n";
  return kOk;
}

int cmd_predict(const Common& common, const PredictArgs& args) {
  auto tables = load_input(common, args.input);
  if (!tables) return kNoTables;
  const bool trace = args.trace || common.config.verbosity >= 2;
  Prediction prediction;
  try {
    if (args.oracle_truth) {
      const auto truth = read_bi_model(*args.oracle_truth);
      prediction = predict_from_scored(
          *tables, oracle_candidates(*tables, truth.relationships, common.config), common.config,
          args.mode, trace);
    } else {
      const auto model = load_model(common.config.model_path);
      prediction = predict(*tables, model, common.config, args.mode, trace);
    }
  } catch (const SchemaMismatchError& e) {
    std::cerr << "schema mismatch: " << e.what() << "\n";
    return kSchemaMismatch;
  }

  if (common.config.verbosity >= 1) {
    std::cerr << prediction.graph.num_edges() << " candidate edges, " << prediction.search.nodes
              << " branch-and-bound nodes, backbone cost " << prediction.backbone.cost << ", "
              << prediction.recall.size() << " recall edges\n";
  }
  std::filesystem::create_directories(args.output_dir);
  write_bi_model(prediction.model, args.output_dir / "bi_model.json");
  if (args.dot) write_text(args.output_dir / "bi_model.dot", to_dot(prediction.model));
  if (trace) write_text(args.output_dir / "solver_trace.jsonl", trace_to_jsonl(prediction.search));

  std::cout << "mode " << prediction.model.mode << ", " << tables->size() << " tables, k = "
            << prediction.model.k << ", " << prediction.model.relationships.size()
            << " relationships\n";
  for (const auto& r : prediction.model.relationships) {
    char p[16];
    std::snprintf(p, sizeof p, "%.3f", r.probability);
    std::cout << "  " << r.from_table << "." << r.from_columns.front() << " -> " << r.to_table
              << "." << r.to_columns.front() << "  " << to_string(r.cardinality) << "  P=" << p
              << "  " << to_string(r.provenance) << "\n";
  }
  if (prediction.timed_out) {
    std::cerr << "solver limit reached; result is not proven optimal\n";
    return kTimeout;
  }
  return kOk;
}

int cmd_eval(const Common& common, const EvalArgs& args) {
  BenchmarkOptions options;
  options.mode = args.mode;
  options.threads = common.threads;
  std::optional<LocalModel> model;
  if (args.oracle) {
    options.source = ProbabilitySource::kOracle;
  } else {
    model = load_model(common.config.model_path);
    options.model = &*model;
  }
  const auto report = run_benchmark(args.corpus, common.config, options);
  if (report.cases.empty()) {
    std::cerr << "no case_* directories in " << args.corpus << "\n";
    return kEmptyCorpus;
  }
  if (common.config.verbosity >= 1) {
    for (const auto& c : report.cases) {
      if (!c.error.empty()) std::cerr << "case " << c.case_id << " failed: " << c.error << "\n";
    }
  }
  std::filesystem::create_directories(args.output_dir);
  write_text(args.output_dir / "report.json", report_to_json(report));
  write_text(args.output_dir / "report.txt", report_to_text(report));
  write_text(args.output_dir / "latency.json", latency_to_json(report));
  std::cout << report_to_text(report);
  return kOk;
}

int cmd_synth(const Common& common, const SynthArgs& args) {
  SchemaSpec spec = args.spec;
  spec.seed = common.config.seed;
  for (const auto& c : generate_corpus(spec, args.cases)) write_case(c, args.output_dir);
  std::cout << "wrote " << args.cases << " cases to " << args.output_dir.string() << "\n";
  return kOk;
}

}  // namespace joinfer::cli
