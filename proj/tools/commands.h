// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "joinfer/config.h"
#include "joinfer/pipeline.h"
#include "joinfer/synth.h"

namespace joinfer::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNoTables = 2,
  kSchemaMismatch = 3,
  kTimeout = 4,
  kEmptyCorpus = 5,
};

struct Common {
  PipelineConfig config;
  std::size_t threads = 1;
};

int cmd_profile(const Common& common, const std::filesystem::path& input,
                const std::optional<std::filesystem::path>& output);

int cmd_candidates(const Common& common, const std::filesystem::path& input,
                   bool with_model, const std::optional<std::filesystem::path>& output);

struct TrainArgs {
  std::filesystem::path corpus;
  bool schema_only = false;
  bool transitivity = true;
};
int cmd_train(const Common& common, const TrainArgs& args);

struct PredictArgs {
  std::filesystem::path input;
  std::filesystem::path output_dir = ".";
  PredictionMode mode = PredictionMode::kFull;
  bool dot = false;
  bool trace = false;
  // Ground-truth file to use as probability oracle instead of a model.
  std::optional<std::filesystem::path> oracle_truth;
};
int cmd_predict(const Common& common, const PredictArgs& args);

struct EvalArgs {
  std::filesystem::path corpus;
  std::filesystem::path output_dir = ".";
  PredictionMode mode = PredictionMode::kFull;
  bool oracle = false;
};
int cmd_eval(const Common& common, const EvalArgs& args);

struct SynthArgs {
  std::filesystem::path output_dir;
  std::size_t cases = 10;
  SchemaSpec spec;
};
int cmd_synth(const Common& common, const SynthArgs& args);

}  // namespace joinfer::cli
