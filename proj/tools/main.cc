// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

// joinfer: predict the join relationships of a set of tables.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.h"

namespace {

using joinfer::cli::Common;

void add_range(CLI::App* app, const std::string& name, joinfer::IntRange& range,
               const std::string& help) {
  app->add_option_function<std::vector<int>>(
         name,
         [&range](const std::vector<int>& v) {
           range.lo = v.at(0);
           range.hi = v.size() > 1 ? v[1] : v[0];
         },
         help + " (one value or LO HI)")
      ->expected(1, 2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joinfer: infer join relationships between tables"};
  app.require_subcommand(1);
  app.footer("Config keys (config file lines `key = value`, or --set key=value):\n" +
             joinfer::describe_config_keys());

  std::string config_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::size_t threads = 1;
  std::string model_path;
  app.add_option("--config", config_path, "config file")->check(CLI::ExistingFile);
  app.add_option("--set", overrides, "override a config key, KEY=VALUE (repeatable)");
  app.add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t s) { seed = s, seed_given = true; }, "random seed");
  app.add_option("--threads", threads, "worker threads for corpus commands")
      ->check(CLI::PositiveNumber);
  app.add_option("--model", model_path, "model file (overrides model_path)");

  std::optional<std::filesystem::path> output;
  std::string input;

  auto* profile = app.add_subcommand("profile", "profile every table in a directory (JSON lines)");
  profile->add_option("input", input, "directory of CSV/TSV tables")->required();
  profile->add_option("-o,--output", output, "output file (default stdout)");

  bool with_model = false;
  auto* candidates = app.add_subcommand("candidates", "list candidate joins (JSON lines)");
  candidates->add_option("input", input, "directory of CSV/TSV tables")->required();
  candidates->add_flag("--score", with_model, "add classifier probabilities");
  candidates->add_option("-o,--output", output, "output file (default stdout)");

  joinfer::cli::TrainArgs train_args;
  bool no_transitivity = false;
  auto* train = app.add_subcommand("train", "train the local join classifier on a corpus");
  train->add_option("corpus", train_args.corpus, "directory of case_* folders")->required();
  train->add_flag("--schema-only", train_args.schema_only, "metadata features only");
  train->add_flag("--no-transitivity", no_transitivity, "do not close labels transitively");

  joinfer::cli::PredictArgs predict_args;
  bool precision_only = false;
  bool schema_only = false;
  std::string oracle_truth;
  auto* predict = app.add_subcommand("predict", "predict the BI model of a table directory");
  predict->add_option("input", predict_args.input, "directory of CSV/TSV tables")->required();
  predict->add_option("-o,--output", predict_args.output_dir, "output directory");
  auto* p_flag = predict->add_flag("--precision-only", precision_only, "backbone only, no recall");
  predict->add_flag("--schema-only", schema_only, "use a schema-only model")->excludes(p_flag);
  predict->add_flag("--dot", predict_args.dot, "also write bi_model.dot");
  predict->add_flag("--trace", predict_args.trace, "write solver_trace.jsonl");
  predict->add_option("--oracle", oracle_truth, "score candidates from this ground-truth file")
      ->check(CLI::ExistingFile);

  joinfer::cli::EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "predict and score every case of a corpus");
  eval->add_option("corpus", eval_args.corpus, "directory of case_* folders")->required();
  eval->add_option("-o,--output", eval_args.output_dir, "directory for report files");
  auto* e_flag = eval->add_flag("--precision-only", precision_only, "backbone only, no recall");
  eval->add_flag("--schema-only", schema_only, "use a schema-only model")->excludes(e_flag);
  eval->add_flag("--oracle", eval_args.oracle, "use ground truth as probabilities");

  joinfer::cli::SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "generate a labeled synthetic corpus");
  synth->add_option("-o,--output", synth_args.output_dir, "corpus directory")->required();
  synth->add_option("--cases", synth_args.cases, "number of cases");
  auto& spec = synth_args.spec;
  add_range(synth, "--facts", spec.n_fact, "fact tables per case");
  add_range(synth, "--dims", spec.dims_per_fact, "dimensions per fact");
  add_range(synth, "--depth", spec.snowflake_depth, "levels per dimension hierarchy");
  add_range(synth, "--fact-rows", spec.rows_fact, "rows per fact table");
  add_range(synth, "--dim-rows", spec.rows_dim, "rows per dimension table");
  synth->add_option("--noise", spec.noise_columns, "chance of each optional attribute column");
  synth->add_option("--distractor", spec.distractor_overlap, "chance of overlapping key ranges");
  synth->add_option("--shared", spec.shared_dims, "chance a later fact reuses a dimension");
  synth->add_option("--dangling", spec.dangling_rate, "maximum dangling-FK row fraction");
  synth->add_option("--one-one", spec.one_one_rate, "chance of a 1:1 companion table");
  synth->add_option("--max-tables", spec.max_tables, "table cap per case");

  app.add_subcommand("config", "print the effective config in file format");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int printed = app.exit(e);
    return printed == 0 ? joinfer::cli::kOk : joinfer::cli::kUsage;
  }

  Common common;
  try {
    if (!config_path.empty()) common.config = joinfer::load_config(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--set expects KEY=VALUE: " + kv);
      joinfer::set_config_value(common.config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed_given) common.config.seed = seed;
    if (!model_path.empty()) common.config.model_path = model_path;
    common.config.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return joinfer::cli::kUsage;
  }
  common.threads = threads;
  const auto mode = schema_only      ? joinfer::PredictionMode::kSchemaOnly
                    : precision_only ? joinfer::PredictionMode::kPrecisionOnly
                                     : joinfer::PredictionMode::kFull;

  try {
    if (*profile) return joinfer::cli::cmd_profile(common, input, output);
    if (*candidates) return joinfer::cli::cmd_candidates(common, input, with_model, output);
    if (*train) {
      train_args.transitivity = !no_transitivity;
      return joinfer::cli::cmd_train(common, train_args);
    }
    if (*predict) {
      predict_args.mode = mode;
      if (!oracle_truth.empty()) predict_args.oracle_truth = oracle_truth;
      return joinfer::cli::cmd_predict(common, predict_args);
    }
    if (*eval) {
      eval_args.mode = mode;
      return joinfer::cli::cmd_eval(common, eval_args);
    }
    if (*synth) return joinfer::cli::cmd_synth(common, synth_args);
    std::cout << joinfer::format_config(common.config);
    return joinfer::cli::kOk;
  } catch (const joinfer::SchemaMismatchError& e) {
    std::cerr << "schema mismatch: " << e.what() << "\n";
    return joinfer::cli::kSchemaMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return joinfer::cli::kUsage;
  }
}
