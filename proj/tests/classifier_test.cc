// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "joinfer/classifier.h"
#include "joinfer/pipeline.h"
#include "joinfer/synth.h"

namespace joinfer {
namespace {

LabeledPair labeled(ColumnRef s, ColumnRef t, int label) {
  LabeledPair lp;
  lp.pair.source = s;
  lp.pair.target = t;
  lp.label = label;
  return lp;
}

bool has_positive(const std::vector<LabeledPair>& pairs, ColumnRef s, ColumnRef t) {
  for (const auto& p : pairs) {
    if (p.pair.source == s && p.pair.target == t) return p.label == 1;
  }
  return false;
}

const ColumnRef kA{0, 0}, kB{1, 0}, kC{2, 0}, kD{3, 0};

TEST(LabelTransitivity, AddsClosure) {
  const auto out = apply_label_transitivity({labeled(kA, kB, 1), labeled(kB, kC, 1)});
  EXPECT_EQ(out.size(), 3u);
  EXPECT_TRUE(has_positive(out, kA, kC));
}

TEST(LabelTransitivity, NegativesDoNotPropagate) {
  const auto out = apply_label_transitivity({labeled(kA, kB, 1), labeled(kB, kC, 0)});
  EXPECT_EQ(out.size(), 2u);
  EXPECT_FALSE(has_positive(out, kA, kC));
}

TEST(LabelTransitivity, ChainReachesFixpoint) {
  const auto out =
      apply_label_transitivity({labeled(kA, kB, 1), labeled(kB, kC, 1), labeled(kC, kD, 1)});
  EXPECT_EQ(out.size(), 6u);
  EXPECT_TRUE(has_positive(out, kA, kC));
  EXPECT_TRUE(has_positive(out, kB, kD));
  EXPECT_TRUE(has_positive(out, kA, kD));
  EXPECT_EQ(apply_label_transitivity(out).size(), out.size());
}

TEST(Logistic, SeparableToyIsPerfect) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.3);
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  for (int i = 0; i < 400; ++i) {
    const int label = i % 2;
    x.push_back({(label ? 2.0 : -2.0) + noise(rng), noise(rng)});
    y.push_back(label);
  }
  const auto model = fit_logistic({x.begin(), x.begin() + 300}, {y.begin(), y.begin() + 300});
  int correct = 0;
  for (std::size_t i = 300; i < x.size(); ++i) {
    correct += (model.raw_score(x[i]) > 0.0) == (y[i] == 1);
  }
  EXPECT_EQ(correct, 100);
}

TEST(Calibration, IndependentLabelsGiveBaseRate) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  const double base_rate = 0.3;
  for (int i = 0; i < 1000; ++i) {
    x.push_back({u(rng), u(rng), u(rng)});
    y.push_back(u(rng) < base_rate ? 1 : 0);
  }
  ClassModel model;
  model.linear = fit_logistic(x, y);
  std::vector<double> raw;
  for (const auto& row : x) raw.push_back(model.linear.raw_score(row));
  model.calibration = fit_platt(raw, y);
  for (const auto& row : x) {
    EXPECT_NEAR(calibrated_probability(model, row), base_rate, 0.1);
  }
}

TEST(Calibration, MidpointClampAndMonotone) {
  PlattCalibration cal{-2.0, 1.0};
  EXPECT_DOUBLE_EQ(cal.apply(0.5), 0.5);
  ClassModel model;
  model.linear.mean = {0.0};
  model.linear.scale = {1.0};
  model.linear.weights = {1.0};
  model.calibration = cal;
  const std::vector<double> huge{1e6};
  EXPECT_DOUBLE_EQ(calibrated_probability(model, huge), 1.0 - kProbabilityEpsilon);
  const std::vector<double> tiny{-1e6};
  EXPECT_DOUBLE_EQ(calibrated_probability(model, tiny), kProbabilityEpsilon);
  double prev = 0.0;
  for (double s = -10.0; s <= 10.0; s += 0.25) {
    const double p = cal.apply(s);
    EXPECT_GE(p, prev);
    prev = p;
  }
}

TEST(Calibration, PlattFitIsIncreasing) {
  std::vector<double> raw;
  std::vector<int> y;
  for (int i = 0; i < 200; ++i) {
    raw.push_back(i / 20.0 - 5.0);
    y.push_back(i % 7 < (i < 100 ? 2 : 5) ? 1 : 0);
  }
  const auto cal = fit_platt(raw, y);
  EXPECT_LT(cal.apply(-5.0), cal.apply(5.0));
}

TEST(Ece, PerfectAndWorst) {
  const std::vector<double> p{1.0, 0.0, 1.0, 0.0};
  const std::vector<int> good{1, 0, 1, 0};
  const std::vector<int> bad{0, 1, 0, 1};
  EXPECT_DOUBLE_EQ(expected_calibration_error(p, good), 0.0);
  EXPECT_DOUBLE_EQ(expected_calibration_error(p, bad), 1.0);
}

class TrainedModel : public ::testing::Test {
 protected:
  static std::vector<TrainingCase> corpus() {
    SchemaSpec spec;
    spec.seed = 21;
    return to_training_cases(generate_corpus(spec, 12), PipelineConfig{});
  }
};

TEST_F(TrainedModel, DeterministicAndRoundTrips) {
  const auto cases = corpus();
  TrainOptions opt;
  opt.seed = 4;
  const auto a = train(cases, opt);
  const auto b = train(cases, opt);
  EXPECT_EQ(model_to_json(a), model_to_json(b));
  EXPECT_GT(a.n1.positives, 0u);
  const auto back = model_from_json(model_to_json(a));
  EXPECT_EQ(model_to_json(back), model_to_json(a));
}

TEST_F(TrainedModel, VersionMismatchRejected) {
  TrainOptions opt;
  auto j = nlohmann::json::parse(model_to_json(train(corpus(), opt)));
  j["feature_schema_version"] = kFeatureSchemaVersion + 1;
  EXPECT_THROW(model_from_json(j.dump()), SchemaMismatchError);
  j["feature_schema_version"] = kFeatureSchemaVersion;
  j["n1_features"][0] = "renamed";
  EXPECT_THROW(model_from_json(j.dump()), SchemaMismatchError);
}

TEST_F(TrainedModel, WrongLengthFeatureVectorRejected) {
  const auto model = train(corpus(), {});
  FeatureVector fv;
  fv.values = {1.0, 2.0};
  EXPECT_THROW(score(model, fv), SchemaMismatchError);
}

TEST_F(TrainedModel, FlagsSmallClassesLowConfidence) {
  TrainOptions opt;
  opt.min_positives = 1000000;
  const auto model = train(corpus(), opt);
  EXPECT_TRUE(model.n1.low_confidence);
  EXPECT_TRUE(model.one_one.low_confidence);
}

}  // namespace
}  // namespace joinfer
