// Copyright 2026 The FactEdit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Per-record scoring and corpus reports.
//
// Report columns, in order:
//   E-P_src BS-P_src D_arc QAFE E-R_ref BS-F1_ref R1 R2 RL R1-c CoLA Edit%
// BS-P_src, BS-F1_ref, D_arc, QAFE and CoLA are produced by external tools
// and merged from {id, metric, value} lines.

#pragma once

#include <array>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "factedit/corpus.hpp"
#include "factedit/metrics.hpp"

namespace factedit {

struct ReportColumn {
  std::string_view key;
  std::string_view header;
  bool external;
};

inline constexpr std::array<ReportColumn, 12> kReportColumns = {{
    {"e_p_src", "E-P_src", false},
    {"bs_p_src", "BS-P_src", true},
    {"d_arc", "D_arc", true},
    {"qafe", "QAFE", true},
    {"e_r_ref", "E-R_ref", false},
    {"bs_f1_ref", "BS-F1_ref", true},
    {"r1", "R1", false},
    {"r2", "R2", false},
    {"rl", "RL", false},
    {"r1_c", "R1-c", false},
    {"cola", "CoLA", true},
    {"edit_percent", "Edit%", false},
}};

inline bool IsExternalMetric(std::string_view key) {
  for (const auto& c : kReportColumns) {
    if (c.external && c.key == key) return true;
  }
  return false;
}

// One scored record. Percentages throughout; ROUGE values are F1 x 100.
struct RecordScores {
  std::string id;
  double e_p_src = 100.0;
  EntityCount e_p_counts;
  std::optional<double> e_r_ref;
  EntityCount e_r_counts;
  std::optional<double> r1;
  std::optional<double> r2;
  std::optional<double> rl;
  std::optional<double> r1_c;
  std::optional<bool> changed;
  std::map<std::string, double> external;
};

struct ScoreOptions {
  MatcherConfig matcher;
  RougeOptions rouge;
};

struct ScoreInput {
  std::string id;
  std::string hypothesis;
  std::string source;
  std::optional<std::string> reference;
  const std::vector<EntityMention>* hypothesis_ann = nullptr;
  const std::vector<EntityMention>* source_ann = nullptr;
  const std::vector<EntityMention>* reference_ann = nullptr;
};

inline RecordScores ScoreRecord(const ScoreInput& in, const EntityExtractor& extractor,
                                const ScoreOptions& options = {}) {
  RecordScores s;
  s.id = in.id;
  s.e_p_counts = EntityPrecisionCounts(in.hypothesis, in.source, extractor, options.matcher,
                                       in.hypothesis_ann, in.source_ann);
  s.e_p_src = s.e_p_counts.Percent();
  if (in.reference) {
    const std::string& ref = *in.reference;
    s.e_r_counts = EntityRecallCounts(ref, in.hypothesis, extractor, options.matcher,
                                      in.reference_ann, in.hypothesis_ann);
    s.e_r_ref = s.e_r_counts.Percent();
    s.r1 = 100.0 * RougeN(in.hypothesis, ref, 1, options.rouge).f1;
    s.r2 = 100.0 * RougeN(in.hypothesis, ref, 2, options.rouge).f1;
    s.rl = 100.0 * RougeL(in.hypothesis, ref, options.rouge).f1;
    s.r1_c = 100.0 * R1Clean(in.hypothesis, ref, in.source, extractor, options.matcher,
                             options.rouge, in.reference_ann, in.source_ann)
                         .f1;
  }
  return s;
}

struct ExternalValue {
  std::string id;
  std::string metric;
  double value = 0.0;
};

inline ExternalValue ExternalValueFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("id") || !j["id"].is_string() || !j.contains("metric") ||
      !j["metric"].is_string() || !j.contains("value") || !j["value"].is_number()) {
    throw Error(ErrorCode::kInvalidInput, "external value must be {id, metric, value}");
  }
  ExternalValue v{j["id"].get<std::string>(), j["metric"].get<std::string>(),
                  j["value"].get<double>()};
  if (!IsExternalMetric(v.metric)) {
    throw Error(ErrorCode::kInvalidInput, "unknown external metric '" + v.metric + "'");
  }
  return v;
}

enum class Aggregation { kMacro, kMicro };

struct EvalReport {
  std::vector<RecordScores> rows;
  std::map<std::string, double> aggregates;  // keyed by column key
  Aggregation entity_aggregation = Aggregation::kMacro;
};

// Corpus means of every column present on at least one row. Edit% is only
// reported when every row says whether it changed.
inline EvalReport BuildReport(std::vector<RecordScores> rows,
                              const std::vector<ExternalValue>& external = {},
                              Aggregation entity_aggregation = Aggregation::kMacro) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyCorpus, "report over zero records");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!index.emplace(rows[i].id, i).second) {
      throw Error(ErrorCode::kAlignmentError, "duplicate row id '" + rows[i].id + "'");
    }
  }
  for (const auto& v : external) {
    if (!IsExternalMetric(v.metric)) {
      throw Error(ErrorCode::kInvalidInput, "unknown external metric '" + v.metric + "'");
    }
    auto it = index.find(v.id);
    if (it == index.end()) {
      throw Error(ErrorCode::kAlignmentError, "external value for unknown id '" + v.id + "'");
    }
    if (!rows[it->second].external.emplace(v.metric, v.value).second) {
      throw Error(ErrorCode::kInvalidInput,
                  "duplicate external value " + v.metric + " for id '" + v.id + "'");
    }
  }
  SortById(&rows);

  EvalReport report;
  report.entity_aggregation = entity_aggregation;
  std::map<std::string, std::pair<double, std::size_t>> sums;
  auto add = [&sums](std::string_view key, std::optional<double> v) {
    if (!v) return;
    auto& [sum, n] = sums[std::string(key)];
    sum += *v;
    ++n;
  };
  EntityCount ep_pool;
  EntityCount er_pool;
  std::size_t changed = 0;
  std::size_t with_changed = 0;
  for (const auto& r : rows) {
    add("e_p_src", r.e_p_src);
    add("e_r_ref", r.e_r_ref);
    add("r1", r.r1);
    add("r2", r.r2);
    add("rl", r.rl);
    add("r1_c", r.r1_c);
    for (const auto& [k, v] : r.external) add(k, v);
    ep_pool.matched += r.e_p_counts.matched;
    ep_pool.total += r.e_p_counts.total;
    if (r.e_r_ref) {
      er_pool.matched += r.e_r_counts.matched;
      er_pool.total += r.e_r_counts.total;
    }
    if (r.changed) {
      ++with_changed;
      if (*r.changed) ++changed;
    }
  }
  for (const auto& [key, acc] : sums) {
    report.aggregates[key] = acc.first / static_cast<double>(acc.second);
  }
  if (entity_aggregation == Aggregation::kMicro) {
    report.aggregates["e_p_src"] = ep_pool.Percent();
    if (report.aggregates.count("e_r_ref")) report.aggregates["e_r_ref"] = er_pool.Percent();
  }
  if (with_changed == rows.size()) {
    report.aggregates["edit_percent"] =
        100.0 * static_cast<double>(changed) / static_cast<double>(rows.size());
  }
  report.rows = std::move(rows);
  return report;
}

inline Json RecordScoresToJson(const RecordScores& r) {
  Json j;
  j["id"] = r.id;
  j["e_p_src"] = r.e_p_src;
  auto put = [&j](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  put("e_r_ref", r.e_r_ref);
  put("r1", r.r1);
  put("r2", r.r2);
  put("rl", r.rl);
  put("r1_c", r.r1_c);
  if (r.changed) j["changed"] = *r.changed;
  for (const auto& [k, v] : r.external) j[k] = v;
  return j;
}

inline Json ReportToJson(const EvalReport& report, const Json& conventions = Json::object()) {
  Json rows = Json::array();
  for (const auto& r : report.rows) rows.push_back(RecordScoresToJson(r));
  Json aggregate = Json::object();
  for (const auto& c : kReportColumns) {
    auto it = report.aggregates.find(std::string(c.key));
    aggregate[std::string(c.header)] = it == report.aggregates.end() ? Json() : Json(it->second);
  }
  Json columns = Json::array();
  for (const auto& c : kReportColumns) columns.push_back(std::string(c.header));
  Json conv = conventions;
  conv["entity_aggregation"] =
      report.entity_aggregation == Aggregation::kMacro ? "macro" : "micro";
  conv["rouge_value"] = "f1x100";
  return Json{{"columns", columns},
              {"aggregate", aggregate},
              {"records", report.rows.size()},
              {"rows", rows},
              {"conventions", conv}};
}

inline std::string FormatFixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// Header line plus one aggregate line, tab separated; "-" marks absent values.
inline std::string ReportToTsv(const EvalReport& report) {
  std::string header;
  std::string values;
  for (std::size_t i = 0; i < kReportColumns.size(); ++i) {
    if (i > 0) {
      header += '\t';
      values += '\t';
    }
    header += kReportColumns[i].header;
    auto it = report.aggregates.find(std::string(kReportColumns[i].key));
    values += it == report.aggregates.end() ? std::string("-") : FormatFixed2(it->second);
  }
  return header + "\n" + values + "\n";
}

}  // namespace factedit
