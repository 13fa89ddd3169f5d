// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/classifier.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace joinfer {
namespace {

using ordered_json = nlohmann::ordered_json;

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

struct Dataset {
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  std::vector<std::size_t> case_index;
};

ClassModel fit_class(const Dataset& data, const std::vector<bool>& is_holdout,
                     const TrainOptions& options, std::size_t dims) {
  ClassModel model;
  Dataset fit, cal;
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    auto& dst = is_holdout[data.case_index[i]] ? cal : fit;
    dst.x.push_back(data.x[i]);
    dst.y.push_back(data.y[i]);
  }
  model.positives = static_cast<std::size_t>(std::count(data.y.begin(), data.y.end(), 1));
  model.negatives = data.y.size() - model.positives;
  model.low_confidence = model.positives < options.min_positives;
  if (fit.x.empty()) std::swap(fit, cal);
  if (fit.x.empty()) {
    // No pairs at all for this class; the model scores everything at the
    // prior of an uninformed coin.
    model.linear.mean.assign(dims, 0.0);
    model.linear.scale.assign(dims, 1.0);
    model.linear.weights.assign(dims, 0.0);
    model.low_confidence = true;
    return model;
  }
  model.linear = fit_logistic(fit.x, fit.y, options.logistic);
  const Dataset& calib = cal.x.empty() ? fit : cal;
  std::vector<double> scores;
  scores.reserve(calib.x.size());
  for (const auto& row : calib.x) scores.push_back(model.linear.raw_score(row));
  model.calibration = fit_platt(scores, calib.y);
  return model;
}

ordered_json class_to_json(const ClassModel& m) {
  ordered_json j;
  j["weights"] = m.linear.weights;
  j["bias"] = m.linear.bias;
  j["mean"] = m.linear.mean;
  j["scale"] = m.linear.scale;
  j["calibration"] = {{"a", m.calibration.a}, {"b", m.calibration.b}};
  j["positives"] = m.positives;
  j["negatives"] = m.negatives;
  j["low_confidence"] = m.low_confidence;
  return j;
}

ClassModel class_from_json(const ordered_json& j) {
  ClassModel m;
  m.linear.weights = j.at("weights").get<std::vector<double>>();
  m.linear.bias = j.at("bias").get<double>();
  m.linear.mean = j.at("mean").get<std::vector<double>>();
  m.linear.scale = j.at("scale").get<std::vector<double>>();
  m.calibration.a = j.at("calibration").at("a").get<double>();
  m.calibration.b = j.at("calibration").at("b").get<double>();
  m.positives = j.at("positives").get<std::size_t>();
  m.negatives = j.at("negatives").get<std::size_t>();
  m.low_confidence = j.at("low_confidence").get<bool>();
  if (m.linear.weights.size() != m.linear.mean.size() ||
      m.linear.weights.size() != m.linear.scale.size()) {
    throw SchemaMismatchError("model weight/standardization lengths differ");
  }
  return m;
}

}  // namespace

double LinearModel::raw_score(std::span<const double> x) const {
  if (x.size() != weights.size()) {
    throw SchemaMismatchError("feature vector has " + std::to_string(x.size()) +
                              " entries, model expects " + std::to_string(weights.size()));
  }
  double z = bias;
  for (std::size_t k = 0; k < x.size(); ++k) z += weights[k] * (x[k] - mean[k]) / scale[k];
  return z;
}

double PlattCalibration::apply(double raw_score) const { return sigmoid(-(a * raw_score + b)); }

LinearModel fit_logistic(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                         const LogisticOptions& options) {
  LinearModel m;
  const std::size_t n = x.size();
  const std::size_t d = n ? x.front().size() : 0;
  m.mean.assign(d, 0.0);
  m.scale.assign(d, 1.0);
  m.weights.assign(d, 0.0);
  if (n == 0) return m;

  for (const auto& row : x) {
    for (std::size_t k = 0; k < d; ++k) m.mean[k] += row[k];
  }
  for (auto& v : m.mean) v /= static_cast<double>(n);
  std::vector<double> var(d, 0.0);
  for (const auto& row : x) {
    for (std::size_t k = 0; k < d; ++k) var[k] += (row[k] - m.mean[k]) * (row[k] - m.mean[k]);
  }
  for (std::size_t k = 0; k < d; ++k) {
    const double sd = std::sqrt(var[k] / static_cast<double>(n));
    m.scale[k] = sd > 1e-12 ? sd : 1.0;
  }
  std::vector<std::vector<double>> z(n, std::vector<double>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) z[i][k] = (x[i][k] - m.mean[k]) / m.scale[k];
  }

  // Lipschitz bound of the gradient: 0.25 * max row norm^2 + l2.
  double max_norm = 1.0;
  for (const auto& row : z) {
    double s = 1.0;  // bias column
    for (double v : row) s += v * v;
    max_norm = std::max(max_norm, s);
  }
  const double step = 1.0 / (0.25 * max_norm + options.l2);

  // Nesterov-accelerated gradient descent; parameter vector = [w..., bias].
  std::vector<double> theta(d + 1, 0.0), prev(d + 1, 0.0), look(d + 1, 0.0), grad(d + 1);
  for (int it = 1; it <= options.iterations; ++it) {
    const double momentum = static_cast<double>(it - 1) / static_cast<double>(it + 2);
    for (std::size_t k = 0; k <= d; ++k) look[k] = theta[k] + momentum * (theta[k] - prev[k]);
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = look[d];
      for (std::size_t k = 0; k < d; ++k) s += look[k] * z[i][k];
      const double r = sigmoid(s) - static_cast<double>(y[i]);
      for (std::size_t k = 0; k < d; ++k) grad[k] += r * z[i][k];
      grad[d] += r;
    }
    prev = theta;
    for (std::size_t k = 0; k <= d; ++k) {
      double g = grad[k] / static_cast<double>(n);
      if (k < d) g += options.l2 * look[k];
      theta[k] = look[k] - step * g;
    }
  }
  for (std::size_t k = 0; k < d; ++k) m.weights[k] = theta[k];
  m.bias = theta[d];
  return m;
}

PlattCalibration fit_platt(std::span<const double> raw_scores, std::span<const int> labels) {
  const std::size_t n = raw_scores.size();
  double prior1 = 0, prior0 = 0;
  for (int l : labels) (l ? prior1 : prior0) += 1.0;
  const double hi = (prior1 + 1.0) / (prior1 + 2.0);
  const double lo = 1.0 / (prior0 + 2.0);
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = labels[i] ? hi : lo;

  double a = 0.0;
  double b = std::log((prior0 + 1.0) / (prior1 + 1.0));
  auto objective = [&](double aa, double bb) {
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = raw_scores[i] * aa + bb;
      f += v >= 0 ? t[i] * v + std::log1p(std::exp(-v)) : (t[i] - 1.0) * v + std::log1p(std::exp(v));
    }
    return f;
  };
  double fval = objective(a, b);
  constexpr double kSigma = 1e-12;
  constexpr double kMinStep = 1e-10;
  for (int it = 0; it < 100; ++it) {
    double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = raw_scores[i] * a + b;
      double p, q;
      if (v >= 0) {
        p = std::exp(-v) / (1.0 + std::exp(-v));
        q = 1.0 / (1.0 + std::exp(-v));
      } else {
        p = 1.0 / (1.0 + std::exp(v));
        q = std::exp(v) / (1.0 + std::exp(v));
      }
      const double d2 = p * q;
      h11 += raw_scores[i] * raw_scores[i] * d2;
      h22 += d2;
      h21 += raw_scores[i] * d2;
      const double d1 = t[i] - p;
      g1 += raw_scores[i] * d1;
      g2 += d1;
    }
    if (std::fabs(g1) < 1e-5 && std::fabs(g2) < 1e-5) break;
    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;
    double step = 1.0;
    bool moved = false;
    while (step >= kMinStep) {
      const double na = a + step * da, nb = b + step * db;
      const double nf = objective(na, nb);
      if (nf < fval + 1e-4 * step * gd) {
        a = na;
        b = nb;
        fval = nf;
        moved = true;
        break;
      }
      step /= 2.0;
    }
    if (!moved) break;
  }
  // A calibration map decreasing in the raw score would invert the
  // classifier; fall back to the base rate.
  if (a > 0.0) {
    a = 0.0;
    b = std::log((prior0 + 1.0) / (prior1 + 1.0));
  }
  return {a, b};
}

double calibrated_probability(const ClassModel& model, std::span<const double> features) {
  const double p = model.calibration.apply(model.linear.raw_score(features));
  return std::clamp(p, kProbabilityEpsilon, 1.0 - kProbabilityEpsilon);
}

double expected_calibration_error(std::span<const double> probabilities,
                                  std::span<const int> labels, std::size_t bins) {
  if (probabilities.empty()) return 0.0;
  std::vector<double> conf(bins, 0.0), acc(bins, 0.0), count(bins, 0.0);
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    auto bin = static_cast<std::size_t>(probabilities[i] * static_cast<double>(bins));
    bin = std::min(bin, bins - 1);
    conf[bin] += probabilities[i];
    acc[bin] += labels[i];
    count[bin] += 1.0;
  }
  double ece = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    if (count[b] == 0) continue;
    ece += std::fabs(acc[b] - conf[b]) / static_cast<double>(probabilities.size());
  }
  return ece;
}

std::vector<LabeledPair> apply_label_transitivity(std::vector<LabeledPair> pairs) {
  std::map<std::pair<ColumnRef, ColumnRef>, std::size_t> index;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    index.emplace(std::make_pair(pairs[i].pair.source, pairs[i].pair.target), i);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    // Positive edges grouped by source column.
    std::map<ColumnRef, std::vector<std::size_t>> out_edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i].label == 1) out_edges[pairs[i].pair.source].push_back(i);
    }
    const std::size_t n = pairs.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (pairs[i].label != 1) continue;
      auto it = out_edges.find(pairs[i].pair.target);
      if (it == out_edges.end()) continue;
      for (std::size_t j : it->second) {
        const ColumnRef a = pairs[i].pair.source;
        const ColumnRef c = pairs[j].pair.target;
        if (a.table_id == c.table_id) continue;
        auto key = std::make_pair(a, c);
        auto found = index.find(key);
        if (found != index.end()) {
          if (pairs[found->second].label != 1) {
            pairs[found->second].label = 1;
            changed = true;
          }
          continue;
        }
        LabeledPair lp;
        lp.pair.source = a;
        lp.pair.target = c;
        lp.pair.cardinality = pairs[i].pair.cardinality == Cardinality::kOneOne &&
                                      pairs[j].pair.cardinality == Cardinality::kOneOne
                                  ? Cardinality::kOneOne
                                  : Cardinality::kN1;
        lp.label = 1;
        index.emplace(key, pairs.size());
        pairs.push_back(lp);
        changed = true;
      }
    }
  }
  return pairs;
}

std::vector<std::pair<ColumnRef, ColumnRef>> positive_pairs(const TrainingCase& c,
                                                            bool transitivity) {
  std::vector<LabeledPair> pairs;
  for (const auto& rel : c.truth) {
    auto refs = resolve_relationship(rel, c.tables);
    if (!refs) continue;
    LabeledPair lp;
    lp.pair.source = refs->first;
    lp.pair.target = refs->second;
    lp.pair.cardinality = rel.cardinality;
    lp.label = 1;
    pairs.push_back(lp);
    if (rel.cardinality == Cardinality::kOneOne) {
      std::swap(lp.pair.source, lp.pair.target);
      pairs.push_back(lp);
    }
  }
  if (transitivity) pairs = apply_label_transitivity(std::move(pairs));
  std::set<std::pair<ColumnRef, ColumnRef>> out;
  for (const auto& p : pairs) {
    if (p.label == 1) out.emplace(p.pair.source, p.pair.target);
  }
  return {out.begin(), out.end()};
}

LocalModel train(const std::vector<TrainingCase>& corpus, const TrainOptions& options) {
  LocalModel model;
  model.seed = options.seed;
  model.schema_only = options.schema_only;
  for (const auto& c : corpus) model.corpus_stats.add_model(c.tables);

  // Case-level 80/20 split.
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(rng)]);
  }
  const auto n_holdout = static_cast<std::size_t>(
      std::floor(options.holdout_fraction * static_cast<double>(corpus.size())));
  std::vector<bool> is_holdout(corpus.size(), false);
  for (std::size_t i = 0; i < n_holdout; ++i) is_holdout[order[i]] = true;

  FeatureContext ctx;
  ctx.corpus_stats = &model.corpus_stats;
  ctx.schema_only = options.schema_only;

  Dataset n1, one_one;
  for (std::size_t ci = 0; ci < corpus.size(); ++ci) {
    const auto& c = corpus[ci];
    const auto positives = positive_pairs(c, options.label_transitivity);
    const std::set<std::pair<ColumnRef, ColumnRef>> pos(positives.begin(), positives.end());
    for (const auto& cand : enumerate_candidates(c.tables, options.candidates)) {
      // 1:1 pairs are featurized once, in canonical orientation.
      if (cand.cardinality == Cardinality::kOneOne && cand.target < cand.source) continue;
      const int label = pos.count({cand.source, cand.target}) ||
                                (cand.cardinality == Cardinality::kOneOne &&
                                 pos.count({cand.target, cand.source}))
                            ? 1
                            : 0;
      auto fv = featurize(cand, c.tables, ctx);
      auto& ds = cand.cardinality == Cardinality::kN1 ? n1 : one_one;
      ds.x.push_back(std::move(fv.values));
      ds.y.push_back(label);
      ds.case_index.push_back(ci);
    }
  }
  model.n1 = fit_class(n1, is_holdout, options, feature_schema(Cardinality::kN1).size());
  model.one_one =
      fit_class(one_one, is_holdout, options, feature_schema(Cardinality::kOneOne).size());
  return model;
}

double score(const LocalModel& model, const FeatureVector& features) {
  const auto& schema = feature_schema(features.cardinality);
  if (features.values.size() != schema.size()) {
    throw SchemaMismatchError("feature vector length does not match schema");
  }
  return calibrated_probability(model.for_cardinality(features.cardinality), features.values);
}

std::string model_to_json(const LocalModel& model) {
  ordered_json j;
  j["format"] = "joinfer-local-model";
  j["feature_schema_version"] = model.feature_schema_version;
  j["schema_only"] = model.schema_only;
  j["seed"] = model.seed;
  j["n1_features"] = feature_schema(Cardinality::kN1);
  j["one_one_features"] = feature_schema(Cardinality::kOneOne);
  j["n1"] = class_to_json(model.n1);
  j["one_one"] = class_to_json(model.one_one);
  ordered_json stats;
  stats["num_models"] = model.corpus_stats.num_models;
  ordered_json freq = ordered_json::object();
  for (const auto& [name, count] : model.corpus_stats.name_frequency) freq[name] = count;
  stats["name_frequency"] = std::move(freq);
  j["corpus_stats"] = std::move(stats);
  return j.dump(2) + "\n";
}

LocalModel model_from_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  LocalModel m;
  m.feature_schema_version = j.at("feature_schema_version").get<int>();
  if (m.feature_schema_version != kFeatureSchemaVersion) {
    throw SchemaMismatchError("model feature schema version " +
                              std::to_string(m.feature_schema_version) + " != " +
                              std::to_string(kFeatureSchemaVersion));
  }
  if (j.at("n1_features").get<std::vector<std::string>>() != feature_schema(Cardinality::kN1) ||
      j.at("one_one_features").get<std::vector<std::string>>() !=
          feature_schema(Cardinality::kOneOne)) {
    throw SchemaMismatchError("model feature names do not match this build");
  }
  m.schema_only = j.at("schema_only").get<bool>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.n1 = class_from_json(j.at("n1"));
  m.one_one = class_from_json(j.at("one_one"));
  const auto& stats = j.at("corpus_stats");
  m.corpus_stats.num_models = stats.at("num_models").get<std::size_t>();
  for (const auto& [name, count] : stats.at("name_frequency").items()) {
    m.corpus_stats.name_frequency[name] = count.get<std::size_t>();
  }
  return m;
}

void save_model(const LocalModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model file " + path.string());
  out << model_to_json(model);
}

LocalModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace joinfer
