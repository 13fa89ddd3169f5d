// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#include "joinfer/synth.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace joinfer {
namespace {

struct Entity {
  const char* name;
  const char* abbrev;  // empty when none is used
  std::vector<const char*> parents;
};

// Hierarchies are disjoint so a parent table belongs to one chain only.
const std::vector<Entity>& entity_pool() {
  static const std::vector<Entity> pool = {
      {"customer", "cust", {"city", "country"}},
      {"product", "prod", {"subcategory", "category"}},
      {"store", "", {"district", "region"}},
      {"supplier", "supp", {"supplier_type"}},
      {"employee", "emp", {"office", "site"}},
      {"promotion", "promo", {"promo_type"}},
      {"calendar", "cal", {}},
      {"warehouse", "wh", {"warehouse_zone"}},
      {"carrier", "", {"carrier_group"}},
      {"account", "acct", {"account_type", "account_class"}},
      {"channel", "chan", {}},
      {"currency", "curr", {}},
      {"campaign", "camp", {"marketing_program"}},
      {"device", "dev", {"device_model", "manufacturer"}},
      {"agent", "", {"agency", "agency_group"}},
      {"project", "proj", {"portfolio"}},
      {"contract", "", {"contract_type"}},
      {"ship_mode", "", {}},
      {"return_reason", "reason", {}},
      {"household", "hh", {"income_band"}},
      {"vendor", "vend", {"vendor_tier"}},
      {"course", "", {"program", "faculty"}},
  };
  return pool;
}

const std::vector<const char*>& fact_pool() {
  static const std::vector<const char*> pool = {
      "sales",    "orders",   "returns",      "inventory", "shipments", "payments",
      "web_visits", "budget", "claims",       "invoices",  "transactions", "deliveries"};
  return pool;
}

enum class Style { kSnake, kCamel, kWarehouse };

std::string camel(std::string_view snake) {
  std::string out;
  bool upper = true;
  for (char ch : snake) {
    if (ch == '_') {
      upper = true;
      continue;
    }
    out += upper ? static_cast<char>(std::toupper(static_cast<unsigned char>(ch))) : ch;
    upper = false;
  }
  return out;
}

std::string format_date(long days) {
  // Civil-from-days (proleptic Gregorian).
  days += 719468;
  const long era = (days >= 0 ? days : days - 146096) / 146097;
  const long doe = days - era * 146097;
  const long yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  long y = yoe + era * 400;
  const long doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const long mp = (5 * doy + 2) / 153;
  const long d = doy - (153 * mp + 2) / 5 + 1;
  const long m = mp < 10 ? mp + 3 : mp - 9;
  if (m <= 2) ++y;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04ld-%02ld-%02ld", y, m, d);
  return buf;
}

std::string compact_date(long days) {
  auto s = format_date(days);
  s.erase(std::remove(s.begin(), s.end(), '-'), s.end());
  return s;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  int uniform(IntRange r) { return uniform(r.lo, r.hi); }
  double real(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  bool chance(double p) { return p > 0.0 && real() < p; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), gen_);
  }

 private:
  std::mt19937_64 gen_;
};

std::string pseudo_word(Rng& rng) {
  static const std::vector<std::string> syllables = {
      "ka", "lo", "mi", "ra", "ten", "vo", "zu", "bel", "dor", "fin", "gar", "hal", "jon",
      "kri", "lum", "mar", "nor", "pel", "quin", "ros", "sal", "tor", "ul", "ven", "wil"};
  std::string w;
  const int n = rng.uniform(2, 3);
  for (int i = 0; i < n; ++i) w += rng.pick(syllables);
  w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
  return w;
}

std::string random_code(Rng& rng, int length) {
  static const std::string alphabet = "ABCDEFGHJKLMNPQRSTUVWXYZ23456789";
  std::string s;
  for (int i = 0; i < length; ++i) {
    s += alphabet[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(alphabet.size()) - 1))];
  }
  return s;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Draft {
  std::string name;
  std::string entity;
  bool is_fact = false;
  int rows = 0;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> columns;
  // Dimension key column and its values, in row order.
  std::string key_column;
  std::vector<std::string> keys;
  std::string dangling_key;

  const std::string& add_column(std::string name, std::vector<std::string> cells) {
    std::string unique = name;
    for (int i = 2; std::find(header.begin(), header.end(), unique) != header.end(); ++i) {
      unique = name + "_" + std::to_string(i);
    }
    header.push_back(unique);
    columns.push_back(std::move(cells));
    return header.back();
  }
};

class Builder {
 public:
  Builder(const SchemaSpec& spec, std::uint64_t seed) : spec_(spec), rng_(seed) {
    style_ = static_cast<Style>(rng_.uniform(0, 2));
    key_suffix_ = rng_.chance(0.5) ? "ID" : "Key";
    lower_warehouse_ = rng_.chance(0.5);
    fact_prefix_ = rng_.chance(0.3);
  }

  GeneratedCase build(std::string id) {
    std::vector<const Entity*> available;
    for (const auto& e : entity_pool()) available.push_back(&e);
    rng_.shuffle(available);
    std::vector<const char*> facts = fact_pool();
    rng_.shuffle(facts);

    const int n_fact = rng_.uniform(spec_.n_fact);
    std::vector<std::string> top_dims;
    for (int f = 0; f < n_fact && f < static_cast<int>(facts.size()); ++f) {
      const bool can_add_dim = static_cast<int>(drafts_.size()) + 2 <= spec_.max_tables;
      if (!can_add_dim && (top_dims.empty() || !room())) break;
      const auto fact_index = new_fact(facts[static_cast<std::size_t>(f)]);
      const int slots = rng_.uniform(spec_.dims_per_fact);
      std::set<std::string> used;
      for (int s = 0; s < slots; ++s) {
        std::string dim;
        std::vector<std::string> reusable;
        for (const auto& d : top_dims) {
          if (!used.contains(d)) reusable.push_back(d);
        }
        if (f > 0 && !reusable.empty() && rng_.chance(spec_.shared_dims)) {
          dim = rng_.pick(reusable);
        } else if (!available.empty() && room()) {
          const Entity* e = available.back();
          available.pop_back();
          dim = add_dimension_chain(*e);
          top_dims.push_back(dim);
        } else {
          continue;
        }
        used.insert(dim);
        link_fact(fact_index, dim);
      }
      if (used.empty()) {
        if (top_dims.empty()) throw std::logic_error("fact table without dimensions");
        used.insert(top_dims.front());
        link_fact(fact_index, top_dims.front());
      }
      add_fact_attributes(fact_index);
    }

    GeneratedCase out;
    out.id = std::move(id);
    std::sort(drafts_.begin(), drafts_.end(),
              [](const Draft& a, const Draft& b) { return a.name < b.name; });
    for (const auto& d : drafts_) {
      std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(d.rows));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& col : d.columns) rows[r].push_back(col[r]);
      }
      out.tables.push_back(make_table(d.name, d.header, rows));
      if (d.is_fact) out.fact_tables.push_back(d.name);
    }
    std::sort(truth_.begin(), truth_.end(), [](const Relationship& a, const Relationship& b) {
      return std::tie(a.from_table, a.from_columns, a.to_table, a.to_columns) <
             std::tie(b.from_table, b.from_columns, b.to_table, b.to_columns);
    });
    out.truth.mode = "ground_truth";
    out.truth.relationships = std::move(truth_);
    return out;
  }

 private:
  bool room() const { return static_cast<int>(drafts_.size()) < spec_.max_tables; }

  std::string table_name(const std::string& entity, bool fact) {
    switch (style_) {
      case Style::kSnake: return fact && fact_prefix_ ? "fact_" + entity : entity;
      case Style::kCamel: return camel(entity);
      case Style::kWarehouse:
        if (lower_warehouse_) return (fact ? "fact_" : "dim_") + entity;
        return (fact ? "Fact" : "Dim") + camel(entity);
    }
    return entity;
  }

  std::string key_name(const std::string& entity, bool primary) {
    const std::string base = entity;
    switch (style_) {
      case Style::kSnake:
        if (primary && rng_.chance(0.4)) return "id";
        return base + "_id";
      case Style::kCamel: return camel(base) + key_suffix_;
      case Style::kWarehouse: return lower_warehouse_ ? base + "_key" : camel(base) + "Key";
    }
    return base + "_id";
  }

  std::string reference_name(const Entity* e, const std::string& entity) {
    if (e != nullptr && e->abbrev[0] != '\0' && rng_.chance(0.15)) {
      return key_name(e->abbrev, false);
    }
    return key_name(entity, false);
  }

  std::string attr_name(const std::string& entity, const std::string& attr) {
    if (style_ == Style::kSnake || (style_ == Style::kWarehouse && lower_warehouse_)) {
      return entity.empty() ? attr : entity + "_" + attr;
    }
    return camel(entity) + camel(attr);
  }

  std::size_t new_fact(const std::string& entity) {
    Draft d;
    d.entity = entity;
    d.name = table_name(entity, true);
    d.is_fact = true;
    d.rows = rng_.uniform(spec_.rows_fact);
    if (rng_.chance(0.5)) {
      std::vector<std::string> ids;
      for (int r = 1; r <= d.rows; ++r) ids.push_back(std::to_string(r));
      d.add_column(style_ == Style::kSnake ? "id" : camel(entity) + "Id", std::move(ids));
    }
    drafts_.push_back(std::move(d));
    return drafts_.size() - 1;
  }

  Draft* find(const std::string& entity) {
    for (auto& d : drafts_) {
      if (d.entity == entity && !d.is_fact) return &d;
    }
    return nullptr;
  }

  // Adds a dimension and its parent levels; returns the dimension entity.
  std::string add_dimension_chain(const Entity& e) {
    const int depth = rng_.uniform(spec_.snowflake_depth);
    int rows = rng_.uniform(spec_.rows_dim);
    new_dimension(e.name, rows);
    std::string child = e.name;
    for (int level = 1; level < depth && level <= static_cast<int>(e.parents.size()); ++level) {
      if (!room()) break;
      const std::string parent = e.parents[static_cast<std::size_t>(level - 1)];
      rows = std::max(3, rows / rng_.uniform(2, 4));
      if (find(parent) == nullptr) new_dimension(parent, rows);
      link(*find(child), *find(parent), nullptr, Cardinality::kN1);
      child = parent;
    }
    if (room() && rng_.chance(spec_.one_one_rate)) add_companion(*find(e.name));
    add_dimension_attributes(*find(e.name));
    return e.name;
  }

  void new_dimension(const std::string& entity, int rows) {
    Draft d;
    d.entity = entity;
    d.name = table_name(entity, false);
    d.rows = rows;
    if (entity == "calendar") {
      const long first = 17897 + rng_.uniform(0, 1500);  // 2019-01-01 onward
      for (int r = 0; r < rows; ++r) d.keys.push_back(compact_date(first + r));
      d.dangling_key = "19000101";
    } else if (rng_.chance(0.15)) {
      std::string prefix = entity.substr(0, std::min<std::size_t>(4, entity.size()));
      for (auto& ch : prefix) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      const int start = rng_.uniform(1, 5000);
      char buf[32];
      for (int r = 0; r < rows; ++r) {
        std::snprintf(buf, sizeof buf, "%s-%05d", prefix.c_str(), start + r);
        d.keys.push_back(buf);
      }
      d.dangling_key = prefix + "-99999";
    } else {
      const long start = rng_.chance(spec_.distractor_overlap) ? 1 : 1 + 100L * rng_.uniform(1, 300);
      for (int r = 0; r < rows; ++r) d.keys.push_back(std::to_string(start + r));
      d.dangling_key = "-1";
    }
    d.key_column = d.add_column(key_name(entity, true), d.keys);
    drafts_.push_back(std::move(d));
  }

  // FK column in `from` holding keys of `to`, plus the truth relationship.
  void link(Draft& from, const Draft& to, const Entity* entity, Cardinality cardinality) {
    std::vector<std::string> cells;
    const int n = static_cast<int>(to.keys.size());
    for (int r = 0; r < from.rows; ++r) {
      cells.push_back(to.keys[static_cast<std::size_t>(rng_.uniform(0, n - 1))]);
    }
    // Dangling rows only where enough distinct keys keep containment high.
    if (n >= 20 && from.is_fact && rng_.chance(0.5)) {
      const double frac = rng_.real(0.0, spec_.dangling_rate);
      for (auto& c : cells) {
        if (rng_.real() < frac) c = to.dangling_key;
      }
    }
    const auto& column = from.add_column(reference_name(entity, to.entity), std::move(cells));
    truth_.push_back({from.name, {column}, to.name, {to.key_column}, cardinality, 1.0,
                      Provenance::kGroundTruth});
  }

  void link_fact(std::size_t fact_index, const std::string& dim_entity) {
    const Entity* e = nullptr;
    for (const auto& cand : entity_pool()) {
      if (dim_entity == cand.name) e = &cand;
    }
    link(drafts_[fact_index], *find(dim_entity), e, Cardinality::kN1);
  }

  void add_companion(const Draft& base) {
    Draft d;
    d.entity = base.entity + "_details";
    d.name = table_name(d.entity, false);
    d.rows = base.rows;
    std::vector<std::string> keys = base.keys;
    rng_.shuffle(keys);
    const auto& column = d.add_column(base.key_column, std::move(keys));
    truth_.push_back({d.name, {column}, base.name, {base.key_column}, Cardinality::kOneOne, 1.0,
                      Provenance::kGroundTruth});
    std::vector<std::string> notes, scores;
    for (int r = 0; r < d.rows; ++r) {
      notes.push_back(pseudo_word(rng_) + " " + pseudo_word(rng_));
      scores.push_back(fixed2(rng_.real(0, 100)));
    }
    d.add_column(attr_name("", "notes"), std::move(notes));
    d.add_column(attr_name("", "score"), std::move(scores));
    drafts_.push_back(std::move(d));
  }

  void add_dimension_attributes(Draft& d) {
    std::vector<std::string> names;
    for (int r = 0; r < d.rows; ++r) names.push_back(pseudo_word(rng_) + " " + pseudo_word(rng_));
    d.add_column(attr_name(d.entity, "name"), std::move(names));
    const double p = spec_.noise_columns;
    if (rng_.chance(p)) {
      std::vector<std::string> codes;
      for (int r = 0; r < d.rows; ++r) codes.push_back(random_code(rng_, 6));
      d.add_column(attr_name("", "code"), std::move(codes));
    }
    if (rng_.chance(p)) {
      std::vector<std::string> ratings;
      for (int r = 0; r < d.rows; ++r) ratings.push_back(std::to_string(rng_.uniform(1, 5)));
      d.add_column(attr_name("", "rating"), std::move(ratings));
    }
    if (rng_.chance(p)) {
      std::vector<std::string> dates;
      for (int r = 0; r < d.rows; ++r) dates.push_back(format_date(16000 + rng_.uniform(0, 3000)));
      d.add_column(attr_name("", "created_date"), std::move(dates));
    }
    if (rng_.chance(p)) {
      std::vector<std::string> flags;
      for (int r = 0; r < d.rows; ++r) flags.push_back(rng_.chance(0.7) ? "true" : "false");
      d.add_column(attr_name("", "is_active"), std::move(flags));
    }
  }

  void add_fact_attributes(std::size_t fact_index) {
    Draft& d = drafts_[fact_index];
    const double p = spec_.noise_columns;
    std::vector<std::string> amounts;
    for (int r = 0; r < d.rows; ++r) amounts.push_back(fixed2(rng_.real(1, 500)));
    d.add_column(attr_name("", "amount"), std::move(amounts));
    if (rng_.chance(p)) {
      std::vector<std::string> qty;
      for (int r = 0; r < d.rows; ++r) qty.push_back(std::to_string(rng_.uniform(1, 20)));
      d.add_column(attr_name("", "quantity"), std::move(qty));
    }
    if (rng_.chance(spec_.distractor_overlap)) {
      // Generic integer code overlapping small key ranges.
      std::vector<std::string> codes;
      const int hi = rng_.uniform(10, 60);
      for (int r = 0; r < d.rows; ++r) codes.push_back(std::to_string(rng_.uniform(1, hi)));
      d.add_column(attr_name("", "code"), std::move(codes));
    }
    if (rng_.chance(p)) {
      std::vector<std::string> dates;
      for (int r = 0; r < d.rows; ++r) dates.push_back(format_date(17897 + rng_.uniform(0, 1500)));
      d.add_column(attr_name(d.entity, "date"), std::move(dates));
    }
    if (rng_.chance(p)) {
      static const std::vector<std::string> statuses = {"open", "closed", "pending", "void"};
      std::vector<std::string> st;
      for (int r = 0; r < d.rows; ++r) st.push_back(rng_.pick(statuses));
      d.add_column(attr_name("", "status"), std::move(st));
    }
  }

  const SchemaSpec& spec_;
  Rng rng_;
  Style style_ = Style::kSnake;
  std::string key_suffix_;
  bool lower_warehouse_ = false;
  bool fact_prefix_ = false;
  std::vector<Draft> drafts_;
  std::vector<Relationship> truth_;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::string> derive_fact_tables(const BIModel& truth) {
  std::set<std::string> targets, sources;
  for (const auto& r : truth.relationships) {
    targets.insert(r.to_table);
    if (r.cardinality == Cardinality::kN1) sources.insert(r.from_table);
  }
  std::vector<std::string> out;
  for (const auto& s : sources) {
    if (!targets.contains(s)) out.push_back(s);
  }
  return out;
}

}  // namespace

void SchemaSpec::validate() const {
  for (const auto* r : {&n_fact, &dims_per_fact, &snowflake_depth, &rows_fact, &rows_dim}) {
    if (r->lo > r->hi || r->lo < 1) throw std::invalid_argument("schema spec range is empty");
  }
  for (double rate :
       {noise_columns, distractor_overlap, shared_dims, dangling_rate, one_one_rate}) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("schema spec rate not in [0,1]");
  }
  if (rows_dim.lo < 3) throw std::invalid_argument("dimensions need at least 3 rows");
  if (max_tables < 2) throw std::invalid_argument("max_tables must be >= 2");
}

std::string validate_truth(const BIModel& truth) {
  std::set<std::pair<std::string, std::vector<std::string>>> sources;
  std::map<std::string, std::vector<std::string>> out_edges;
  std::map<std::string, int> indegree;
  for (const auto& r : truth.relationships) {
    if (!sources.insert({r.from_table, r.from_columns}).second) {
      return "FK-once violated at " + r.from_table;
    }
    out_edges[r.from_table].push_back(r.to_table);
    indegree.try_emplace(r.from_table, 0);
    ++indegree[r.to_table];
  }
  std::vector<std::string> ready;
  for (const auto& [t, d] : indegree) {
    if (d == 0) ready.push_back(t);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const auto t = ready.back();
    ready.pop_back();
    ++visited;
    for (const auto& next : out_edges[t]) {
      if (--indegree[next] == 0) ready.push_back(next);
    }
  }
  if (visited != indegree.size()) return "ground truth contains a cycle";
  return {};
}

GeneratedCase generate_case(const SchemaSpec& spec, std::uint64_t seed, std::string id) {
  spec.validate();
  auto c = Builder(spec, seed).build(std::move(id));
  if (auto problem = validate_truth(c.truth); !problem.empty()) {
    throw std::logic_error("generator produced invalid ground truth: " + problem);
  }
  return c;
}

std::vector<GeneratedCase> generate_corpus(const SchemaSpec& spec, std::size_t count) {
  std::vector<GeneratedCase> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    char id[24];
    std::snprintf(id, sizeof id, "%04zu", i);
    out.push_back(generate_case(spec, splitmix64(spec.seed + i), id));
  }
  return out;
}

void write_case(const GeneratedCase& c, const std::filesystem::path& root) {
  const auto dir = root / ("case_" + c.id);
  std::filesystem::create_directories(dir);
  for (const auto& t : c.tables) write_table_csv(t, dir / (t.name + ".csv"));
  write_bi_model(c.truth, dir / "ground_truth.json");
}

std::vector<CaseOnDisk> list_cases(const std::filesystem::path& root) {
  std::vector<CaseOnDisk> out;
  if (!std::filesystem::is_directory(root)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    const auto name = entry.path().filename().string();
    if (entry.is_directory() && name.starts_with("case_")) {
      out.push_back({name.substr(5), entry.path()});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CaseOnDisk& a, const CaseOnDisk& b) { return a.id < b.id; });
  return out;
}

GeneratedCase load_case(const CaseOnDisk& c, const LoadOptions& options) {
  GeneratedCase out;
  out.id = c.id;
  out.tables = load_tables_from_dir(c.dir, options);
  const auto truth_path = c.dir / "ground_truth.json";
  if (std::filesystem::exists(truth_path)) out.truth = read_bi_model(truth_path);
  out.fact_tables = derive_fact_tables(out.truth);
  return out;
}

std::vector<Relationship> shared_dimension_edges(const GeneratedCase& c) {
  const auto facts = c.fact_tables.empty() ? derive_fact_tables(c.truth) : c.fact_tables;
  const std::set<std::string> fact_set(facts.begin(), facts.end());
  std::map<std::string, std::set<std::string>> referencing_facts;
  for (const auto& r : c.truth.relationships) {
    if (fact_set.contains(r.from_table)) referencing_facts[r.to_table].insert(r.from_table);
  }
  std::vector<Relationship> out;
  for (const auto& r : c.truth.relationships) {
    if (fact_set.contains(r.from_table) && referencing_facts[r.to_table].size() > 1) {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace joinfer
