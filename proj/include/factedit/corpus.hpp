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

// Line-delimited JSON corpus records and file helpers.
//
// Corpus line:
//   {"id": "...", "source": "...", "reference": "...", "hypothesis": "...",
//    "entities": {"source": [{"surface", "type", "start", "end"}, ...], ...}}
//
// Fields this library does not model are carried through untouched.

#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "factedit/entity.hpp"
#include "factedit/error.hpp"

namespace factedit {

using Json = nlohmann::json;

struct CorpusRecord {
  std::string id;
  std::string source;
  std::optional<std::string> reference;
  std::optional<std::string> hypothesis;
  // Precomputed mentions keyed by field name ("source", "reference", ...).
  std::map<std::string, std::vector<EntityMention>> annotations;
  Json extra = Json::object();

  const std::vector<EntityMention>* Annotation(std::string_view field) const {
    auto it = annotations.find(std::string(field));
    return it == annotations.end() ? nullptr : &it->second;
  }
};

inline Json MentionToJson(const EntityMention& m) {
  return Json{{"surface", m.surface},
              {"type", std::string(EntityTypeName(m.etype))},
              {"start", m.span.start},
              {"end", m.span.end}};
}

inline Json MentionsToJson(const std::vector<EntityMention>& mentions) {
  Json out = Json::array();
  for (const auto& m : mentions) out.push_back(MentionToJson(m));
  return out;
}

inline EntityMention MentionFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("surface") || !j.contains("type") ||
      !j.contains("start") || !j.contains("end") || !j["surface"].is_string() ||
      !j["type"].is_string() || !j["start"].is_number_unsigned() ||
      !j["end"].is_number_unsigned()) {
    throw Error(ErrorCode::kInvalidInput,
                "entity must be an object with surface, type, start, end");
  }
  const auto type = ParseEntityType(j["type"].get<std::string>());
  if (!type) {
    throw Error(ErrorCode::kInvalidInput, "unknown entity type '" +
                                              j["type"].get<std::string>() + "'");
  }
  return EntityMention{j["surface"].get<std::string>(), *type,
                       CharSpan{j["start"].get<std::size_t>(), j["end"].get<std::size_t>()}};
}

inline std::vector<EntityMention> MentionsFromJson(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kInvalidInput, "entity list must be an array");
  std::vector<EntityMention> out;
  for (const auto& item : j) out.push_back(MentionFromJson(item));
  return out;
}

namespace internal {

inline std::string RequireString(const Json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string()) {
    throw Error(ErrorCode::kInvalidInput, std::string("missing or non-string field '") +
                                              field + "'");
  }
  return j[field].get<std::string>();
}

inline std::optional<std::string> OptionalString(const Json& j, const char* field) {
  if (!j.contains(field) || j[field].is_null()) return std::nullopt;
  if (!j[field].is_string()) {
    throw Error(ErrorCode::kInvalidInput, std::string("field '") + field + "' must be a string");
  }
  return j[field].get<std::string>();
}

}  // namespace internal

inline CorpusRecord RecordFromJson(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidInput, "record must be a JSON object");
  CorpusRecord r;
  r.id = internal::RequireString(j, "id");
  if (r.id.empty()) throw Error(ErrorCode::kInvalidInput, "empty id");
  r.source = internal::RequireString(j, "source");
  r.reference = internal::OptionalString(j, "reference");
  r.hypothesis = internal::OptionalString(j, "hypothesis");
  if (!r.reference && !r.hypothesis) {
    throw Error(ErrorCode::kInvalidInput,
                "record '" + r.id + "' has neither reference nor hypothesis");
  }
  if (j.contains("entities") && !j["entities"].is_null()) {
    const Json& ents = j["entities"];
    if (!ents.is_object()) throw Error(ErrorCode::kInvalidInput, "'entities' must be an object");
    for (const auto& [field, list] : ents.items()) {
      auto mentions = MentionsFromJson(list);
      std::string host;
      if (field == "source") {
        host = r.source;
      } else if (field == "reference" && r.reference) {
        host = *r.reference;
      } else if (field == "hypothesis" && r.hypothesis) {
        host = *r.hypothesis;
      } else if (j.contains(field) && j[field].is_string()) {
        host = j[field].get<std::string>();
      } else {
        throw Error(ErrorCode::kInvalidInput, "entities given for absent field '" + field + "'");
      }
      try {
        ValidateMentions(utf8::Decode(host), &mentions);
      } catch (const Error& e) {
        throw Error(ErrorCode::kInvalidInput, "entities." + field + ": " + e.message());
      }
      r.annotations[field] = std::move(mentions);
    }
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "id" && key != "source" && key != "reference" && key != "hypothesis" &&
        key != "entities") {
      r.extra[key] = value;
    }
  }
  return r;
}

inline Json RecordToJson(const CorpusRecord& r) {
  Json j = r.extra;
  j["id"] = r.id;
  j["source"] = r.source;
  if (r.reference) j["reference"] = *r.reference;
  if (r.hypothesis) j["hypothesis"] = *r.hypothesis;
  if (!r.annotations.empty()) {
    Json ents = Json::object();
    for (const auto& [field, mentions] : r.annotations) ents[field] = MentionsToJson(mentions);
    j["entities"] = ents;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Files

struct JsonLine {
  std::size_t line = 0;  // 1-based
  Json value;
};

inline std::vector<JsonLine> ParseJsonLines(std::istream& in) {
  std::vector<JsonLine> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.push_back({line, Json::parse(text)});
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kInvalidInput, std::string("malformed JSON: ") + e.what())
          .at_line(line);
    }
  }
  return out;
}

inline std::vector<JsonLine> ReadJsonLines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path.string());
  try {
    return ParseJsonLines(in);
  } catch (Error& e) {
    throw Error(e.code(), path.string() + ":" + std::to_string(e.line()) + ": " + e.message())
        .at_line(e.line());
  }
}

// Applies `convert` to each line, tagging failures with the file and line.
template <typename Convert>
auto ConvertLines(const std::filesystem::path& path, const std::vector<JsonLine>& lines,
                  Convert convert) {
  using T = decltype(convert(lines.front().value));
  std::vector<T> out;
  out.reserve(lines.size());
  for (const auto& l : lines) {
    try {
      out.push_back(convert(l.value));
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidInput,
                  path.string() + ":" + std::to_string(l.line) + ": " + e.message())
          .at_line(l.line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidInput,
                  path.string() + ":" + std::to_string(l.line) + ": " + e.what())
          .at_line(l.line);
    }
  }
  return out;
}

// Records must carry unique ids; the first duplicate is reported by line.
inline std::vector<CorpusRecord> ReadCorpus(const std::filesystem::path& path) {
  const auto lines = ReadJsonLines(path);
  if (lines.empty()) return {};
  auto records = ConvertLines(path, lines, RecordFromJson);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!seen.insert(records[i].id).second) {
      throw Error(ErrorCode::kInvalidInput, path.string() + ":" + std::to_string(lines[i].line) +
                                                ": duplicate id '" + records[i].id + "'")
          .at_line(lines[i].line);
    }
  }
  return records;
}

inline std::string ToJsonLines(const std::vector<Json>& values) {
  std::string out;
  for (const auto& v : values) {
    out += v.dump();
    out += '\n';
  }
  return out;
}

// Writes through a sibling temporary file and renames it into place.
inline void AtomicWrite(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename " + tmp.string() + ": " + ec.message());
}

template <typename T>
void SortById(std::vector<T>* items) {
  std::stable_sort(items->begin(), items->end(),
                   [](const T& a, const T& b) { return a.id < b.id; });
}

}  // namespace factedit
