// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "joinfer/bi_model.h"
#include "joinfer/candidate_gen.h"
#include "joinfer/features.h"

namespace joinfer {

inline constexpr double kProbabilityEpsilon = 1e-6;

class SchemaMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Logistic model over standardized features. raw_score is the log-odds.
struct LinearModel {
  std::vector<double> mean;
  std::vector<double> scale;
  std::vector<double> weights;
  double bias = 0.0;

  double raw_score(std::span<const double> x) const;
};

/// P = 1 / (1 + exp(a * s + b)); a < 0 makes P increase with s.
struct PlattCalibration {
  double a = -1.0;
  double b = 0.0;

  double apply(double raw_score) const;
};

struct ClassModel {
  LinearModel linear;
  PlattCalibration calibration;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  bool low_confidence = false;
};

struct LocalModel {
  int feature_schema_version = kFeatureSchemaVersion;
  bool schema_only = false;
  std::uint64_t seed = 0;
  ClassModel n1;
  ClassModel one_one;
  CorpusStats corpus_stats;

  const ClassModel& for_cardinality(Cardinality c) const {
    return c == Cardinality::kN1 ? n1 : one_one;
  }
};

struct LogisticOptions {
  double l2 = 1e-3;
  int iterations = 800;
};

/// Accelerated full-batch gradient descent on the L2-regularized log loss,
/// after standardizing with the statistics of `x`. Deterministic.
LinearModel fit_logistic(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                         const LogisticOptions& options = {});

/// Platt scaling fit by Newton's method with the usual smoothed targets.
PlattCalibration fit_platt(std::span<const double> raw_scores, std::span<const int> labels);

/// Calibrated probability clamped to [eps, 1 - eps].
double calibrated_probability(const ClassModel& model, std::span<const double> features);

/// Expected calibration error with equal-width bins.
double expected_calibration_error(std::span<const double> probabilities,
                                  std::span<const int> labels, std::size_t bins = 10);

struct LabeledPair {
  JoinCandidate pair;
  int label = 0;
};

/// Transitive closure of the positive labels over shared column endpoints:
/// (a,b)=1 and (b,c)=1 give (a,c)=1, overriding a 0; iterated to fixpoint.
std::vector<LabeledPair> apply_label_transitivity(std::vector<LabeledPair> pairs);

struct TrainingCase {
  std::string id;
  std::vector<ProfiledTable> tables;
  std::vector<Relationship> truth;
};

struct TrainOptions {
  std::uint64_t seed = 0;
  double holdout_fraction = 0.2;
  bool schema_only = false;
  bool label_transitivity = true;
  LogisticOptions logistic;
  CandidateOptions candidates;
  // A class with fewer positives than this is flagged low-confidence.
  std::size_t min_positives = 10;
};

LocalModel train(const std::vector<TrainingCase>& corpus, const TrainOptions& options = {});

/// Throws SchemaMismatchError when the feature vector does not match the
/// model's schema.
double score(const LocalModel& model, const FeatureVector& features);

std::string model_to_json(const LocalModel& model);
LocalModel model_from_json(const std::string& text);
void save_model(const LocalModel& model, const std::filesystem::path& path);
LocalModel load_model(const std::filesystem::path& path);

/// Positive (source, target) pairs of a case's ground truth, with 1:1 joins in
/// both directions and, optionally, closed under label transitivity.
std::vector<std::pair<ColumnRef, ColumnRef>> positive_pairs(const TrainingCase& c,
                                                            bool transitivity);

}  // namespace joinfer
