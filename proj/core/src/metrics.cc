// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/metrics.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace joinfer {
namespace {

std::string endpoint(const std::string& table, const std::vector<std::string>& columns) {
  std::string key = table + ".";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) key += ",";
    key += columns[i];
  }
  return key;
}

class UnionFind {
 public:
  std::string find(const std::string& x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) return x;
    if (it->second == x) return x;
    auto root = find(it->second);
    parent_[x] = root;
    return root;
  }

  void unite(const std::string& a, const std::string& b) {
    auto ra = find(a);
    auto rb = find(b);
    parent_.try_emplace(ra, ra);
    parent_.try_emplace(rb, rb);
    if (ra == rb) return;
    // Smaller key becomes the root so classes do not depend on input order.
    if (rb < ra) std::swap(ra, rb);
    parent_[rb] = ra;
  }

 private:
  std::map<std::string, std::string> parent_;
};

void check_tables(const BIModel& model, const std::set<std::string>& known) {
  for (const auto& r : model.relationships) {
    for (const auto* t : {&r.from_table, &r.to_table}) {
      if (!known.contains(*t)) throw std::invalid_argument("unknown table in relationship: " + *t);
    }
  }
}

double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

}  // namespace

CaseMetrics edge_metrics(const BIModel& predicted, const BIModel& truth, bool equivalence,
                         const std::vector<std::string>& table_names) {
  if (!table_names.empty()) {
    const std::set<std::string> known(table_names.begin(), table_names.end());
    check_tables(predicted, known);
    check_tables(truth, known);
  }

  UnionFind classes;
  if (equivalence) {
    for (const auto* model : {&predicted, &truth}) {
      for (const auto& r : model->relationships) {
        if (r.cardinality == Cardinality::kOneOne) {
          classes.unite(endpoint(r.from_table, r.from_columns), endpoint(r.to_table, r.to_columns));
        }
      }
    }
  }

  auto matches = [&](const Relationship& p, const Relationship& t) {
    if (p.cardinality != t.cardinality) return false;
    const auto pf = endpoint(p.from_table, p.from_columns);
    const auto pt = endpoint(p.to_table, p.to_columns);
    const auto tf = endpoint(t.from_table, t.from_columns);
    const auto tt = endpoint(t.to_table, t.to_columns);
    if (p.cardinality == Cardinality::kOneOne) {
      return (pf == tf && pt == tt) || (pf == tt && pt == tf);
    }
    if (!equivalence) return pf == tf && pt == tt;
    return classes.find(pf) == classes.find(tf) && classes.find(pt) == classes.find(tt);
  };

  CaseMetrics m;
  m.predicted = predicted.relationships.size();
  m.truth = truth.relationships.size();
  std::vector<bool> used(m.truth, false);
  for (const auto& p : predicted.relationships) {
    for (std::size_t i = 0; i < m.truth; ++i) {
      if (!used[i] && matches(p, truth.relationships[i])) {
        used[i] = true;
        ++m.correct;
        break;
      }
    }
  }

  const auto c = static_cast<double>(m.correct);
  if (m.predicted == 0) {
    m.p_edge = m.truth == 0 ? 1.0 : 0.0;
  } else {
    m.p_edge = c / static_cast<double>(m.predicted);
  }
  m.r_edge = m.truth == 0 ? 1.0 : c / static_cast<double>(m.truth);
  const double sum = m.p_edge + m.r_edge;
  m.f_edge = sum > 0.0 ? 2.0 * m.p_edge * m.r_edge / sum : 0.0;
  m.p_case = m.p_edge == 1.0 ? 1 : 0;
  return m;
}

LatencySummary latency_percentiles(std::vector<double> seconds) {
  std::sort(seconds.begin(), seconds.end());
  LatencySummary s;
  s.p50 = percentile(seconds, 0.50);
  s.p90 = percentile(seconds, 0.90);
  s.p95 = percentile(seconds, 0.95);
  s.max = seconds.empty() ? 0.0 : seconds.back();
  return s;
}

void aggregate(MetricsReport& report) {
  report.failures = 0;
  double p = 0, r = 0, f = 0, pc = 0;
  for (const auto& c : report.cases) {
    if (!c.error.empty()) ++report.failures;
    p += c.p_edge;
    r += c.r_edge;
    f += c.f_edge;
    pc += c.p_case;
  }
  const auto n = static_cast<double>(report.cases.size());
  if (n > 0) {
    report.mean_p_edge = p / n;
    report.mean_r_edge = r / n;
    report.mean_f_edge = f / n;
    report.mean_p_case = pc / n;
  }
  report.latency = latency_percentiles(report.latencies);
}

std::string report_to_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  j["num_cases"] = report.cases.size();
  j["failures"] = report.failures;
  j["p_edge"] = report.mean_p_edge;
  j["r_edge"] = report.mean_r_edge;
  j["f_edge"] = report.mean_f_edge;
  j["p_case"] = report.mean_p_case;
  auto& cases = j["cases"] = nlohmann::ordered_json::array();
  for (const auto& c : report.cases) {
    nlohmann::ordered_json o;
    o["case"] = c.case_id;
    o["p_edge"] = c.p_edge;
    o["r_edge"] = c.r_edge;
    o["f_edge"] = c.f_edge;
    o["p_case"] = c.p_case;
    o["predicted"] = c.predicted;
    o["truth"] = c.truth;
    o["correct"] = c.correct;
    if (!c.error.empty()) o["error"] = c.error;
    cases.push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

std::string latency_to_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  j["p50_seconds"] = report.latency.p50;
  j["p90_seconds"] = report.latency.p90;
  j["p95_seconds"] = report.latency.p95;
  j["max_seconds"] = report.latency.max;
  auto& per_case = j["cases"] = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < report.cases.size() && i < report.latencies.size(); ++i) {
    per_case[report.cases[i].case_id] = report.latencies[i];
  }
  return j.dump(2) + "\n";
}

std::string report_to_text(const MetricsReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-24s %8s %8s %8s %8s\n", "case", "P_edge", "R_edge", "F_edge",
                "P_case");
  out += line;
  for (const auto& c : report.cases) {
    std::snprintf(line, sizeof line, "%-24s %8.4f %8.4f %8.4f %8d%s\n", c.case_id.c_str(),
                  c.p_edge, c.r_edge, c.f_edge, c.p_case, c.error.empty() ? "" : "  (failed)");
    out += line;
  }
  std::snprintf(line, sizeof line, "%-24s %8.4f %8.4f %8.4f %8.4f\n", "mean", report.mean_p_edge,
                report.mean_r_edge, report.mean_f_edge, report.mean_p_case);
  out += line;
  return out;
}

}  // namespace joinfer
