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

// The factedit command line. Run() is the whole program; tools/factedit.cpp
// only forwards argv.
//
// Exit status: 0 on success, 1 on invalid input or usage, 2 on other errors.
// Every subcommand that writes --out also writes <out>.manifest.json.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "factedit/config.hpp"
#include "factedit/corpus.hpp"
#include "factedit/editors.hpp"
#include "factedit/entity.hpp"
#include "factedit/exchange.hpp"
#include "factedit/markup.hpp"
#include "factedit/metrics.hpp"
#include "factedit/parallel.hpp"
#include "factedit/report.hpp"
#include "factedit/synthesis.hpp"

namespace factedit::cli {

struct Options {
  std::map<std::string, std::string> config_flags;
  std::string config_file;
  std::string in;
  std::string out;
  std::string manifest;
  std::size_t workers = 1;
  // Subcommand specific.
  std::string tasks;
  std::string responses;
  std::string parse;
  std::string exchange_dir;
  std::string command;
  long timeout_ms = 30000;
  std::string hyp;
  std::string ref;
  std::string tsv;
  std::string rows;
  std::string external;
};

class Context {
 public:
  Context(std::string name, const Options& opts, std::ostream& out)
      : name_(std::move(name)), opts_(opts), stdout_(out) {
    std::map<std::string, std::string> file;
    if (!opts.config_file.empty()) file = ReadConfigFile(opts.config_file);
    config_ = ResolveConfig(opts.config_flags, file);
    extractor_ = config_.MakeExtractor();
  }

  const PipelineConfig& config() const { return config_; }
  const EntityExtractor& extractor() const { return extractor_; }
  const Options& opts() const { return opts_; }
  Json& counts() { return counts_; }

  void AddInput(const std::string& role, const std::string& path) { inputs_[role] = path; }

  std::vector<JsonLine> ReadLines(const std::string& path) {
    if (path.empty()) throw Error(ErrorCode::kInvalidArgument, "missing input path");
    if (path == "-") {
      try {
        return ParseJsonLines(std::cin);
      } catch (Error& e) {
        throw Error(e.code(), "<stdin>:" + std::to_string(e.line()) + ": " + e.message())
            .at_line(e.line());
      }
    }
    return ReadJsonLines(path);
  }

  std::vector<CorpusRecord> ReadRecords(const std::string& path, std::vector<std::size_t>* lines) {
    const auto json = ReadLines(path);
    auto records = ConvertLines(DisplayPath(path), json, RecordFromJson);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (!seen.insert(records[i].id).second) {
        throw Error(ErrorCode::kInvalidInput, DisplayPath(path) + ":" +
                                                  std::to_string(json[i].line) +
                                                  ": duplicate id '" + records[i].id + "'")
            .at_line(json[i].line);
      }
    }
    if (lines) {
      lines->clear();
      for (const auto& l : json) lines->push_back(l.line);
    }
    return records;
  }

  // Runs fn over [0, n) on the configured workers; failures name the line.
  template <typename Fn>
  auto PerRecord(const std::string& path, const std::vector<std::size_t>& lines, Fn fn) {
    return ParallelMap(lines.size(), opts_.workers, [&](std::size_t i) {
      try {
        return fn(i);
      } catch (const Error& e) {
        throw Error(e.code(), DisplayPath(path) + ":" + std::to_string(lines[i]) + ": " +
                                  e.message(),
                    e.ids())
            .at_line(lines[i]);
      }
    });
  }

  void WriteText(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
      stdout_ << content;
      return;
    }
    AtomicWrite(path, content);
    outputs_.push_back(path);
  }

  void WriteLines(std::vector<Json> lines, const char* id_key = "id") {
    std::stable_sort(lines.begin(), lines.end(), [id_key](const Json& a, const Json& b) {
      return a[id_key].get<std::string>() < b[id_key].get<std::string>();
    });
    counts_["written"] = lines.size();
    WriteText(opts_.out, ToJsonLines(lines));
  }

  void Finish() {
    std::string path = opts_.manifest;
    if (path.empty() && !opts_.out.empty() && opts_.out != "-") path = opts_.out + ".manifest.json";
    if (path.empty()) return;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_.Hash()));
    Json manifest{{"command", name_},
                  {"config", config_.ToJson()},
                  {"config_hash", hash},
                  {"seed", config_.seed},
                  {"inputs", inputs_},
                  {"outputs", outputs_},
                  {"counts", counts_}};
    AtomicWrite(path, manifest.dump(2) + "\n");
  }

  static std::string DisplayPath(const std::string& path) {
    return path == "-" ? std::string("<stdin>") : path;
  }

 private:
  std::string name_;
  Options opts_;
  std::ostream& stdout_;
  PipelineConfig config_;
  EntityExtractor extractor_;
  Json counts_ = Json::object();
  std::map<std::string, std::string> inputs_;
  std::vector<std::string> outputs_;
};

// ---------------------------------------------------------------------------
// Shared record helpers

struct SummaryField {
  std::string name;
  std::string text;
};

inline SummaryField PickSummary(const CorpusRecord& r, const std::string& field) {
  if (field == "hypothesis" || (field == "auto" && r.hypothesis)) {
    if (!r.hypothesis) {
      throw Error(ErrorCode::kInvalidInput, "record '" + r.id + "' has no hypothesis");
    }
    return {"hypothesis", *r.hypothesis};
  }
  if (!r.reference) throw Error(ErrorCode::kInvalidInput, "record '" + r.id + "' has no reference");
  return {"reference", *r.reference};
}

inline std::string RequireField(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string()) {
    throw Error(ErrorCode::kInvalidInput, std::string("missing or non-string field '") + key + "'");
  }
  return j[key].get<std::string>();
}

inline Json SpansToJson(const std::vector<CharSpan>& spans) {
  Json out = Json::array();
  for (const auto& s : spans) out.push_back(Json::array({s.start, s.end}));
  return out;
}

inline Json EditResultToJson(const EditResult& r) {
  Json cuts = Json::array();
  for (const auto& c : r.cuts) {
    cuts.push_back(
        {{"start", c.span.start}, {"end", c.span.end}, {"reason", CutReasonName(c.reason)}});
  }
  return Json{{"id", r.record_id},   {"original", r.original}, {"edited", r.edited},
              {"changed", r.changed}, {"policy", r.policy},     {"removed", SpansToJson(r.removed)},
              {"cuts", cuts}};
}

inline Json TrainingPairToJson(const TrainingPair& p) {
  Json j{{"id", p.id},
         {"direction", std::string(DirectionName(p.direction))},
         {"input", p.input},
         {"target", p.target}};
  if (p.direction == Direction::kPostEditor || !p.inserted_entities.empty()) {
    j["inserted_entities"] = p.inserted_entities;
  }
  return j;
}

inline CompressionPair CompressionPairFromJson(const Json& j) {
  CompressionPair p{RequireField(j, "id"), RequireField(j, "uncompressed"),
                    RequireField(j, "compressed")};
  if (p.id.empty()) throw Error(ErrorCode::kInvalidInput, "empty id");
  return p;
}

inline InsertionTask InsertionTaskFromJson(const Json& j) {
  InsertionTask t;
  t.task_id = RequireField(j, "task_id");
  t.record_id = RequireField(j, "record_id");
  if (!j.contains("entities") || !j["entities"].is_array()) {
    throw Error(ErrorCode::kInvalidInput, "task needs an 'entities' array");
  }
  for (const auto& e : j["entities"]) {
    if (!e.is_string()) throw Error(ErrorCode::kInvalidInput, "task entities must be strings");
    t.entities.push_back(e.get<std::string>());
  }
  t.k = static_cast<int>(t.entities.size());
  if (j.contains("seed") && j["seed"].is_number_unsigned()) t.seed = j["seed"].get<std::uint64_t>();
  return t;
}

inline RecordScores RecordScoresFromJson(const Json& j) {
  RecordScores r;
  r.id = RequireField(j, "id");
  auto num = [&j](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_number()) {
      throw Error(ErrorCode::kInvalidInput, std::string("field '") + key + "' must be a number");
    }
    return j[key].get<double>();
  };
  auto count = [&j](const char* key) -> std::size_t {
    return j.contains(key) && j[key].is_number_unsigned() ? j[key].get<std::size_t>() : 0;
  };
  const auto ep = num("e_p_src");
  if (!ep) throw Error(ErrorCode::kInvalidInput, "row needs 'e_p_src'");
  r.e_p_src = *ep;
  r.e_p_counts = {count("e_p_matched"), count("e_p_total")};
  r.e_r_ref = num("e_r_ref");
  r.e_r_counts = {count("e_r_matched"), count("e_r_total")};
  r.r1 = num("r1");
  r.r2 = num("r2");
  r.rl = num("rl");
  r.r1_c = num("r1_c");
  if (j.contains("changed")) {
    if (!j["changed"].is_boolean()) throw Error(ErrorCode::kInvalidInput, "'changed' must be bool");
    r.changed = j["changed"].get<bool>();
  }
  for (const auto& c : kReportColumns) {
    if (c.external) {
      if (auto v = num(std::string(c.key).c_str())) r.external[std::string(c.key)] = *v;
    }
  }
  return r;
}

inline Json RowToJson(const RecordScores& r) {
  Json j = RecordScoresToJson(r);
  j["e_p_matched"] = r.e_p_counts.matched;
  j["e_p_total"] = r.e_p_counts.total;
  if (r.e_r_ref) {
    j["e_r_matched"] = r.e_r_counts.matched;
    j["e_r_total"] = r.e_r_counts.total;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Subcommands

inline void CmdNer(Context& ctx) {
  ctx.AddInput("in", ctx.opts().in);
  std::vector<std::size_t> lines;
  auto records = ctx.ReadRecords(ctx.opts().in, &lines);
  auto out = ctx.PerRecord(ctx.opts().in, lines, [&](std::size_t i) {
    CorpusRecord r = records[i];
    auto run = [&](const std::string& field, const std::string& text) {
      r.annotations[field] = ctx.extractor().Extract(text, records[i].Annotation(field));
    };
    run("source", r.source);
    if (r.reference) run("reference", *r.reference);
    if (r.hypothesis) run("hypothesis", *r.hypothesis);
    return r;
  });
  std::vector<Json> json;
  std::size_t mentions = 0;
  for (const auto& r : out) {
    for (const auto& [f, m] : r.annotations) mentions += m.size();
    json.push_back(RecordToJson(r));
  }
  ctx.counts()["records"] = out.size();
  ctx.counts()["mentions"] = mentions;
  ctx.WriteLines(std::move(json));
}

inline void CmdDetect(Context& ctx) {
  ctx.AddInput("in", ctx.opts().in);
  std::vector<std::size_t> lines;
  const auto records = ctx.ReadRecords(ctx.opts().in, &lines);
  const auto& cfg = ctx.config();
  auto out = ctx.PerRecord(ctx.opts().in, lines, [&](std::size_t i) {
    const CorpusRecord& r = records[i];
    const SummaryField s = PickSummary(r, cfg.field);
    const auto flagged = DetectExtrinsic(s.text, r.source, cfg.matcher, ctx.extractor(),
                                         r.Annotation(s.name), r.Annotation("source"));
    Json j = RecordToJson(r);
    j["field"] = s.name;
    j["flagged"] = MentionsToJson(flagged);
    j["marked"] = Mark(s.text, flagged, cfg.tokens).Serialize();
    return j;
  });
  std::size_t flagged_records = 0;
  std::size_t flagged_mentions = 0;
  for (const auto& j : out) {
    flagged_mentions += j["flagged"].size();
    flagged_records += j["flagged"].empty() ? 0 : 1;
  }
  ctx.counts()["records"] = out.size();
  ctx.counts()["flagged_records"] = flagged_records;
  ctx.counts()["flagged_mentions"] = flagged_mentions;
  ctx.WriteLines(std::move(out));
}

inline void CmdMark(Context& ctx) {
  ctx.AddInput("in", ctx.opts().in);
  std::vector<std::size_t> lines;
  const auto records = ctx.ReadRecords(ctx.opts().in, &lines);
  const auto& cfg = ctx.config();
  auto out = ctx.PerRecord(ctx.opts().in, lines, [&](std::size_t i) {
    const CorpusRecord& r = records[i];
    std::string field = cfg.field;
    if (field == "auto" && r.extra.contains("field") && r.extra["field"].is_string()) {
      field = r.extra["field"].get<std::string>();
    }
    const SummaryField s = PickSummary(r, field);
    if (!r.extra.contains("flagged")) {
      throw Error(ErrorCode::kInvalidInput, "record '" + r.id + "' has no 'flagged' list");
    }
    auto flagged = MentionsFromJson(r.extra["flagged"]);
    ValidateMentions(utf8::Decode(s.text), &flagged);
    Json j = RecordToJson(r);
    j["field"] = s.name;
    j["marked"] = Mark(s.text, flagged, cfg.tokens).Serialize();
    return j;
  });
  ctx.counts()["records"] = out.size();
  ctx.WriteLines(std::move(out));
}

inline void CmdMask(Context& ctx) {
  ctx.AddInput("in", ctx.opts().in);
  std::vector<std::size_t> lines;
  const auto records = ctx.ReadRecords(ctx.opts().in, &lines);
  const auto& cfg = ctx.config();
  std::size_t masks = 0;
  auto out = ctx.PerRecord(ctx.opts().in, lines, [&](std::size_t i) {
    const CorpusRecord& r = records[i];
    const SummaryField s = PickSummary(r, cfg.field);
    const auto mentions = ctx.extractor().Extract(s.text, r.Annotation(s.name));
    Json j = RecordToJson(r);
    j["field"] = s.name;
    j["masked"] = MaskSlots(s.text, mentions);
    j["masked_mentions"] = MentionsToJson(mentions);
    return j;
  });
  for (const auto& j : out) masks += j["masked_mentions"].size();
  ctx.counts()["records"] = out.size();
  ctx.counts()["masks"] = masks;
  ctx.WriteLines(std::move(out));
}

inline std::vector<CompressionPair> ReadPairs(Context& ctx, std::vector<std::size_t>* lines) {
  const auto json = ctx.ReadLines(ctx.opts().in);
  auto pairs = ConvertLines(Context::DisplayPath(ctx.opts().in), json, CompressionPairFromJson);
  lines->clear();
  for (const auto& l : json) lines->push_back(l.line);
  return pairs;
}

inline Json PairToJson(const CompressionPair& p) {
  return Json{{"id", p.id}, {"uncompressed", p.uncompressed}, {"compressed", p.compressed}};
}

inline void CmdFilterCompression(Context& ctx) {
  ctx.AddInput("in", ctx.opts().in);
  std::vector<std::size_t> lines;
  const auto pairs = ReadPairs(ctx, &lines);
  FilterStats stats;
  const auto kept = FilterCompression(pairs, ctx.config().min_ratio, &stats);
  std::vector<Json> out;
  for (const auto& p : kept) out.push_back(PairToJson(p));
  ctx.counts()["input"] = pairs.size();
  ctx.counts()["kept"] = stats.kept;
  ctx.counts()["dropped"] = stats.dropped;
  ctx.counts()["skipped_empty"] = stats.skipped_empty;
  if (stats.skipped_empty > 0) {
    std::cerr << "factedit: warning: skipped " << stats.skipped_empty
              << " pairs with an empty uncompressed sentence\n";
  }
  ctx.WriteLines(std::move(out));
}

inline void CmdPerturberData(Context& ctx) {
  ctx.AddInput("in", ctx.opts().in);
  std::vector<std::size_t> lines;
  const auto pairs = ReadPairs(ctx, &lines);
  const auto& cfg = ctx.config();
  auto emitted = ctx.PerRecord(ctx.opts().in, lines, [&](std::size_t i) {
    return EmitPerturberPairs({pairs[i]}, ctx.extractor(), cfg.matcher, cfg.sep);
  });
  std::vector<Json> out;
  for (const auto& e : emitted) {
    for (const auto& p : e) out.push_back(TrainingPairToJson(p));
  }
  ctx.counts()["input"] = pairs.size();
  ctx.counts()["emitted"] = out.size();
  ctx.counts()["dropped_empty_diff"] = pairs.size() - out.size();
  ctx.WriteLines(std::move(out));
}

inline void CmdCleanSubset(Context& ctx) {
  ctx.AddInput("in", ctx.opts().in);
  std::vector<std::size_t> lines;
  const auto records = ctx.ReadRecords(ctx.opts().in, &lines);
  const auto& cfg = ctx.config();
  auto verdict = ctx.PerRecord(ctx.opts().in, lines, [&](std::size_t i) {
    CleanStats stats;
    CleanSubset({records[i]}, ctx.extractor(), cfg.matcher, &stats);
    return stats;
  });
  std::vector<Json> out;
  CleanStats total;
  for (std::size_t i = 0; i < records.size(); ++i) {
    total.kept += verdict[i].kept;
    total.dropped += verdict[i].dropped;
    total.skipped_missing_reference += verdict[i].skipped_missing_reference;
    if (verdict[i].kept) out.push_back(RecordToJson(records[i]));
  }
  ctx.counts()["input"] = records.size();
  ctx.counts()["kept"] = total.kept;
  ctx.counts()["dropped"] = total.dropped;
  ctx.counts()["skipped_missing_reference"] = total.skipped_missing_reference;
  if (total.skipped_missing_reference > 0) {
    std::cerr << "factedit: warning: skipped " << total.skipped_missing_reference
              << " records without a reference\n";
  }
  ctx.WriteLines(std::move(out));
}

inline void CmdInsertionTasks(Context& ctx) {
  ctx.AddInput("in", ctx.opts().in);
  std::vector<std::size_t> lines;
  const auto records = ctx.ReadRecords(ctx.opts().in, &lines);
  const auto& cfg = ctx.config();
  auto tasks = ctx.PerRecord(ctx.opts().in, lines, [&](std::size_t i) {
    return MakeInsertionTasks(records[i], cfg.seed, ctx.extractor(), cfg.matcher);
  });
  std::vector<Json> out;
  std::size_t empty_pool = 0;
  for (const auto& list : tasks) {
    if (list.empty()) ++empty_pool;
    for (const auto& t : list) {
      out.push_back(Json{{"task_id", t.task_id},
                         {"record_id", t.record_id},
                         {"k", t.k},
                         {"entities", t.entities},
                         {"seed", t.seed},
                         {"input", PerturberRequestInput(t, cfg.sep)}});
    }
  }
  ctx.counts()["records"] = records.size();
  ctx.counts()["tasks"] = out.size();
  ctx.counts()["records_without_candidates"] = empty_pool;
  ctx.WriteLines(std::move(out), "task_id");
}

inline void CmdEditorData(Context& ctx) {
  const auto& o = ctx.opts();
  ctx.AddInput("in", o.in);
  ctx.AddInput("tasks", o.tasks);
  ctx.AddInput("responses", o.responses);
  std::vector<std::size_t> lines;
  const auto records = ctx.ReadRecords(o.in, &lines);
  std::map<std::string, const CorpusRecord*> by_id;
  for (const auto& r : records) by_id[r.id] = &r;

  const auto task_lines = ctx.ReadLines(o.tasks);
  const auto tasks = ConvertLines(Context::DisplayPath(o.tasks), task_lines, InsertionTaskFromJson);
  std::map<std::string, std::size_t> task_index;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!by_id.count(tasks[i].record_id)) {
      throw Error(ErrorCode::kInvalidInput, Context::DisplayPath(o.tasks) + ":" +
                                                std::to_string(task_lines[i].line) +
                                                ": unknown record '" + tasks[i].record_id + "'")
          .at_line(task_lines[i].line);
    }
    if (!task_index.emplace(tasks[i].task_id, i).second) {
      throw Error(ErrorCode::kInvalidInput, Context::DisplayPath(o.tasks) + ":" +
                                                std::to_string(task_lines[i].line) +
                                                ": duplicate task id '" + tasks[i].task_id + "'")
          .at_line(task_lines[i].line);
    }
  }

  const auto resp_lines = ctx.ReadLines(o.responses);
  std::map<std::string, std::string> outputs;
  std::vector<std::string> duplicates;
  std::vector<std::string> unknown;
  std::vector<std::size_t> resp_line_of;
  for (const auto& l : resp_lines) {
    std::string id;
    std::string output;
    try {
      id = RequireField(l.value, "task_id");
      output = RequireField(l.value, "output");
    } catch (const Error& e) {
      throw Error(e.code(), Context::DisplayPath(o.responses) + ":" + std::to_string(l.line) +
                                ": " + e.message())
          .at_line(l.line);
    }
    if (!task_index.count(id)) {
      unknown.push_back(id);
    } else if (!outputs.emplace(id, output).second) {
      duplicates.push_back(id);
    }
  }
  if (!duplicates.empty()) {
    throw Error(ErrorCode::kDuplicateResponse, "duplicate response task ids", duplicates);
  }
  if (!unknown.empty()) {
    throw Error(ErrorCode::kUnknownResponse, "responses for unknown task ids", unknown);
  }

  const auto& cfg = ctx.config();
  EditorPairOptions options{cfg.matcher, cfg.sep, cfg.tokens};
  std::vector<std::size_t> answered;
  std::vector<std::size_t> answered_lines;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (outputs.count(tasks[i].task_id)) {
      answered.push_back(i);
      answered_lines.push_back(task_lines[i].line);
    }
  }
  auto results = ctx.PerRecord(o.tasks, answered_lines, [&](std::size_t a) {
    const InsertionTask& t = tasks[answered[a]];
    return EmitEditorPair(*by_id.at(t.record_id), t, outputs.at(t.task_id), options);
  });
  std::vector<Json> out;
  std::size_t not_found = 0;
  std::size_t residual = 0;
  std::size_t overlaps = 0;
  for (const auto& r : results) {
    overlaps += r.overlaps_dropped;
    if (r.rejection == EditorRejection::kEntityNotFound) ++not_found;
    if (r.rejection == EditorRejection::kResidualEntity) ++residual;
    if (r.pair) out.push_back(TrainingPairToJson(*r.pair));
  }
  ctx.counts()["tasks"] = tasks.size();
  ctx.counts()["missing_response"] = tasks.size() - answered.size();
  ctx.counts()["emitted"] = out.size();
  ctx.counts()["rejected_entity_not_found"] = not_found;
  ctx.counts()["rejected_residual_entity"] = residual;
  ctx.counts()["overlaps_dropped"] = overlaps;
  ctx.WriteLines(std::move(out));
}

struct IdJson {
  std::string id;
  Json value;
};

inline void CmdSample(Context& ctx) {
  ctx.AddInput("in", ctx.opts().in);
  const auto json = ctx.ReadLines(ctx.opts().in);
  auto items = ConvertLines(Context::DisplayPath(ctx.opts().in), json, [](const Json& j) {
    return IdJson{RequireField(j, "id"), j};
  });
  const std::size_t input = items.size();
  auto sampled = Sample(std::move(items), ctx.config().sample_size, ctx.config().seed);
  std::vector<Json> out;
  for (auto& s : sampled) out.push_back(std::move(s.value));
  ctx.counts()["input"] = input;
  ctx.counts()["sampled"] = out.size();
  ctx.WriteLines(std::move(out));
}

inline void CmdEdit(Context& ctx) {
  const auto& o = ctx.opts();
  ctx.AddInput("in", o.in);
  const auto json = ctx.ReadLines(o.in);
  std::vector<std::size_t> lines;
  for (const auto& l : json) lines.push_back(l.line);
  std::map<std::string, DependencyParse> parses;
  if (!o.parse.empty()) {
    ctx.AddInput("parse", o.parse);
    std::ifstream in(o.parse);
    if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + o.parse);
    try {
      parses = ReadParseSidecar(in);
    } catch (const Error& e) {
      throw Error(e.code(), o.parse + ": " + e.message()).at_line(e.line());
    }
  }
  const auto& cfg = ctx.config();
  auto results = ctx.PerRecord(o.in, lines, [&](std::size_t i) {
    const std::string id = RequireField(json[i].value, "id");
    const std::string marked = RequireField(json[i].value, "marked");
    DeleteOptions options;
    options.policy = cfg.policy;
    options.cleanup = cfg.cleanup;
    if (auto it = parses.find(id); it != parses.end()) options.parse = &it->second;
    return DeleteCorrect(marked, cfg.tokens, options, id);
  });
  std::set<std::string> seen;
  std::vector<Json> out;
  std::size_t changed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!seen.insert(results[i].record_id).second) {
      throw Error(ErrorCode::kInvalidInput, Context::DisplayPath(o.in) + ":" +
                                                std::to_string(lines[i]) + ": duplicate id '" +
                                                results[i].record_id + "'")
          .at_line(lines[i]);
    }
    changed += results[i].changed ? 1 : 0;
    out.push_back(EditResultToJson(results[i]));
  }
  ctx.counts()["records"] = results.size();
  ctx.counts()["changed"] = changed;
  if (!results.empty()) ctx.counts()["edit_percent"] = EditPercent(results);
  ctx.WriteLines(std::move(out));
}

inline void CmdSwaps(Context& ctx) {
  ctx.AddInput("in", ctx.opts().in);
  std::vector<std::size_t> lines;
  const auto records = ctx.ReadRecords(ctx.opts().in, &lines);
  const auto& cfg = ctx.config();
  auto out = ctx.PerRecord(ctx.opts().in, lines, [&](std::size_t i) {
    const CorpusRecord& r = records[i];
    const SummaryField s = PickSummary(r, cfg.field);
    const auto flagged = DetectExtrinsic(s.text, r.source, cfg.matcher, ctx.extractor(),
                                         r.Annotation(s.name), r.Annotation("source"));
    const auto source_mentions = ctx.extractor().Extract(r.source, r.Annotation("source"));
    const CandidateSet set = EnumerateSwaps(s.text, flagged, source_mentions, cfg.cap, r.id);
    Json subs = Json::array();
    for (const auto& list : set.substitutions) {
      Json row = Json::array();
      for (const auto& sub : list) {
        row.push_back({{"original", sub.original},
                       {"replacement", sub.replacement},
                       {"type", std::string(EntityTypeName(sub.etype))},
                       {"start", sub.span.start},
                       {"end", sub.span.end}});
      }
      subs.push_back(row);
    }
    return Json{{"id", r.id},
                {"field", s.name},
                {"candidates", set.candidates},
                {"substitutions", subs},
                {"without_options", MentionsToJson(set.without_options)},
                {"total", set.total},
                {"ranking", RankByEntityPrecision(set, r.source, ctx.extractor(), cfg.matcher)}};
  });
  std::size_t candidates = 0;
  for (const auto& j : out) candidates += j["candidates"].size();
  ctx.counts()["records"] = out.size();
  ctx.counts()["candidates"] = candidates;
  ctx.WriteLines(std::move(out));
}

inline void CmdExternalEdit(Context& ctx) {
  const auto& o = ctx.opts();
  ctx.AddInput("in", o.in);
  if (o.exchange_dir.empty()) throw Error(ErrorCode::kInvalidArgument, "--exchange-dir is required");
  std::vector<std::size_t> lines;
  const auto records = ctx.ReadRecords(o.in, &lines);
  std::vector<ExchangeRequest> requests;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (!r.extra.contains("marked") || !r.extra["marked"].is_string()) {
      throw Error(ErrorCode::kInvalidInput, Context::DisplayPath(o.in) + ":" +
                                                std::to_string(lines[i]) + ": record '" + r.id +
                                                "' has no 'marked' field")
          .at_line(lines[i]);
    }
    requests.push_back({r.id, r.source, r.extra["marked"].get<std::string>()});
  }
  ExchangeOptions options;
  options.sep = ctx.config().sep;
  options.tokens = ctx.config().tokens;
  options.command = o.command;
  options.timeout = std::chrono::milliseconds(o.timeout_ms);
  const auto results = RunExternalEditor(std::move(requests), o.exchange_dir, options);
  std::vector<Json> out;
  std::size_t changed = 0;
  for (const auto& r : results) {
    changed += r.changed ? 1 : 0;
    out.push_back(EditResultToJson(r));
  }
  ctx.counts()["records"] = results.size();
  ctx.counts()["changed"] = changed;
  ctx.WriteLines(std::move(out));
}

inline std::vector<ExternalValue> ReadExternal(Context& ctx, const std::string& path) {
  if (path.empty()) return {};
  ctx.AddInput("external", path);
  return ConvertLines(Context::DisplayPath(path), ctx.ReadLines(path), ExternalValueFromJson);
}

inline void WriteReport(Context& ctx, const EvalReport& report) {
  const auto& cfg = ctx.config();
  Json conventions{{"tokenizer", "rule-based"},
                   {"casefold", true},
                   {"stem", cfg.rouge.stem},
                   {"rouge_l", cfg.rouge.lsum ? "summary-level" : "single-lcs"},
                   {"vacuous_entity_metric", 100}};
  for (const auto& [k, v] : report.aggregates) ctx.counts()[k] = v;
  ctx.counts()["records"] = report.rows.size();
  ctx.WriteText(ctx.opts().out, ReportToJson(report, conventions).dump(2) + "\n");
  if (!ctx.opts().tsv.empty()) ctx.WriteText(ctx.opts().tsv, ReportToTsv(report));
  if (!ctx.opts().rows.empty()) {
    std::vector<Json> rows;
    for (const auto& r : report.rows) rows.push_back(RowToJson(r));
    ctx.WriteText(ctx.opts().rows, ToJsonLines(rows));
  }
}

inline void CmdEval(Context& ctx) {
  const auto& o = ctx.opts();
  ctx.AddInput("hyp", o.hyp);
  ctx.AddInput("ref", o.ref);
  const auto hyp_lines = ctx.ReadLines(o.hyp);
  struct Hyp {
    std::string text;
    std::string field;
    std::optional<bool> changed;
    std::vector<EntityMention> mentions;
    bool annotated = false;
  };
  std::map<std::string, Hyp> hyps;
  for (const auto& l : hyp_lines) {
    try {
      const std::string id = RequireField(l.value, "id");
      Hyp h;
      h.field = l.value.contains("edited") ? "edited" : "hypothesis";
      h.text = RequireField(l.value, h.field.c_str());
      if (l.value.contains("changed") && l.value["changed"].is_boolean()) {
        h.changed = l.value["changed"].get<bool>();
      } else if (l.value.contains("original") && l.value["original"].is_string()) {
        h.changed = ChangedText(l.value["original"].get<std::string>(), h.text);
      }
      if (l.value.contains("entities") && l.value["entities"].is_object() &&
          l.value["entities"].contains(h.field)) {
        h.mentions = MentionsFromJson(l.value["entities"][h.field]);
        ValidateMentions(utf8::Decode(h.text), &h.mentions);
        h.annotated = true;
      }
      if (!hyps.emplace(id, std::move(h)).second) {
        throw Error(ErrorCode::kInvalidInput, "duplicate id '" + id + "'");
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidInput, Context::DisplayPath(o.hyp) + ":" +
                                                std::to_string(l.line) + ": " + e.message())
          .at_line(l.line);
    }
  }
  std::vector<std::size_t> lines;
  const auto records = ctx.ReadRecords(o.ref, &lines);
  std::vector<std::string> missing;
  for (const auto& r : records) {
    if (!hyps.count(r.id)) missing.push_back(r.id);
  }
  if (!missing.empty() || hyps.size() != records.size()) {
    std::vector<std::string> extra;
    std::set<std::string> ids;
    for (const auto& r : records) ids.insert(r.id);
    for (const auto& [id, h] : hyps) {
      if (!ids.count(id)) extra.push_back(id);
    }
    std::vector<std::string> all = missing;
    all.insert(all.end(), extra.begin(), extra.end());
    throw Error(ErrorCode::kAlignmentError,
                std::to_string(missing.size()) + " reference ids without hypothesis, " +
                    std::to_string(extra.size()) + " hypothesis ids without reference",
                all);
  }
  const auto& cfg = ctx.config();
  ScoreOptions options{cfg.matcher, cfg.rouge};
  auto rows = ctx.PerRecord(o.ref, lines, [&](std::size_t i) {
    const CorpusRecord& r = records[i];
    const Hyp& h = hyps.at(r.id);
    ScoreInput in;
    in.id = r.id;
    in.hypothesis = h.text;
    in.source = r.source;
    in.reference = r.reference;
    in.hypothesis_ann = h.annotated ? &h.mentions : nullptr;
    in.source_ann = r.Annotation("source");
    in.reference_ann = r.Annotation("reference");
    RecordScores s = ScoreRecord(in, ctx.extractor(), options);
    s.changed = h.changed;
    return s;
  });
  WriteReport(ctx, BuildReport(std::move(rows), ReadExternal(ctx, o.external), cfg.aggregation));
}

inline void CmdReport(Context& ctx) {
  const auto& o = ctx.opts();
  ctx.AddInput("in", o.in);
  const auto json = ctx.ReadLines(o.in);
  auto rows = ConvertLines(Context::DisplayPath(o.in), json, RecordScoresFromJson);
  WriteReport(ctx, BuildReport(std::move(rows), ReadExternal(ctx, o.external),
                               ctx.config().aggregation));
}

// ---------------------------------------------------------------------------
// Entry point

struct Subcommand {
  const char* name;
  const char* help;
  void (*run)(Context&);
};

inline constexpr Subcommand kSubcommands[] = {
    {"ner", "extract entity mentions for every text field", CmdNer},
    {"detect", "flag extrinsic summary entities and mark them", CmdDetect},
    {"mark", "wrap a given 'flagged' list in special tokens", CmdMark},
    {"mask", "replace summary entities with typed mask slots", CmdMask},
    {"filter-compression", "keep compression pairs above the token ratio", CmdFilterCompression},
    {"perturber-data", "build perturber training pairs", CmdPerturberData},
    {"insertion-tasks", "draw source entities for the perturber to insert", CmdInsertionTasks},
    {"editor-data", "build post-editor training pairs from perturber output", CmdEditorData},
    {"clean-subset", "keep records whose reference is fully grounded", CmdCleanSubset},
    {"sample", "seeded uniform sample of records", CmdSample},
    {"edit", "delete marked spans", CmdEdit},
    {"swaps", "enumerate same-type entity swaps", CmdSwaps},
    {"external-edit", "exchange marked records with an external editor", CmdExternalEdit},
    {"eval", "score hypotheses against references and sources", CmdEval},
    {"report", "aggregate per-record rows into a report", CmdReport},
};

inline int Run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"factedit: entity error detection, post-editing data and metrics", "factedit"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");
  std::map<std::string, Options> options;
  std::map<std::string, std::map<std::string, std::string>> raw_config;
  for (const auto& sc : kSubcommands) {
    CLI::App* sub = app.add_subcommand(sc.name, sc.help);
    Options& o = options[sc.name];
    auto& raw = raw_config[sc.name];
    const std::string name = sc.name;
    const bool eval_like = name == "eval";
    if (!eval_like) sub->add_option("--in", o.in, "input file ('-' for stdin)");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--manifest", o.manifest, "manifest path (default <out>.manifest.json)");
    sub->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--config", o.config_file, "key = value config file");
    for (const auto& k : kConfigKeys) {
      const std::string key(k.name);
      sub->add_option_function<std::string>(
             "--" + key, [&raw, key](const std::string& v) { raw[key] = v; },
             std::string(k.help))
          ->default_str(std::string(k.default_value));
    }
    if (name == "editor-data") {
      sub->add_option("--tasks", o.tasks, "insertion tasks file")->required();
      sub->add_option("--responses", o.responses, "perturber responses {task_id, output}")
          ->required();
    }
    if (name == "edit") sub->add_option("--parse", o.parse, "dependency parse sidecar");
    if (name == "external-edit") {
      sub->add_option("--exchange-dir", o.exchange_dir, "exchange directory")->required();
      sub->add_option("--command", o.command, "editor command; receives the directory");
      sub->add_option("--timeout-ms", o.timeout_ms, "response wait limit");
    }
    if (eval_like) {
      sub->add_option("--hyp", o.hyp, "hypotheses {id, edited|hypothesis}")->required();
      sub->add_option("--ref", o.ref, "corpus with source and reference")->required();
      sub->add_option("--rows", o.rows, "per-record rows output");
    }
    if (eval_like || name == "report") {
      sub->add_option("--tsv", o.tsv, "tab-separated summary row output");
      sub->add_option("--external", o.external, "external metric values {id, metric, value}");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    Options o = options[name];
    o.config_flags = raw_config[name];
    if (name != "eval" && o.in.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "--in is required");
    }
    Context ctx(name, o, out);
    for (const auto& sc : kSubcommands) {
      if (name == sc.name) sc.run(ctx);
    }
    ctx.Finish();
    return 0;
  } catch (const Error& e) {
    err << "factedit " << name << ": " << e.what() << "\n";
    if (!e.ids().empty()) {
      err << "  ids:";
      for (const auto& id : e.ids()) err << " " << id;
      err << "\n";
    }
    return e.is_validation() ? 1 : 2;
  } catch (const std::exception& e) {
    err << "factedit " << name << ": internal error: " << e.what() << "\n";
    return 2;
  }
}

inline int Main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return Run(args);
}

}  // namespace factedit::cli
