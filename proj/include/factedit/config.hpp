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

// Pipeline configuration.
//
// Every setting has a default and may be overridden, in increasing priority,
// by a key=value config file, a FACTEDIT_<KEY> environment variable and a
// command line flag. Keys use dashes; the environment form uppercases them
// and uses underscores (min-ratio -> FACTEDIT_MIN_RATIO).

#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "factedit/corpus.hpp"
#include "factedit/editors.hpp"
#include "factedit/entity.hpp"
#include "factedit/markup.hpp"
#include "factedit/report.hpp"
#include "factedit/rng.hpp"
#include "factedit/text.hpp"

namespace factedit {

struct ConfigKey {
  std::string_view name;
  std::string_view default_value;
  std::string_view help;
};

inline constexpr std::array<ConfigKey, 17> kConfigKeys = {{
    {"matcher-mode", "none", "none | casefold | casefold-strip-punct"},
    {"scope", "source-text", "source-text | source-entities"},
    {"backend", "rules", "rules | precomputed"},
    {"gazetteer", "", "directory of <TYPE>.txt gazetteer files"},
    {"open-token", "<rm>", "opening special token"},
    {"close-token", "</rm>", "closing special token"},
    {"sep", "<sep>", "separator between input segments"},
    {"field", "auto", "summary field: auto | hypothesis | reference"},
    {"min-ratio", "0.75", "minimum compressed/uncompressed token ratio"},
    {"sample-size", "200000", "number of items kept by sample"},
    {"seed", "0", "random seed"},
    {"cap", "64", "maximum swap candidates per record"},
    {"policy", "phrase", "deletion policy: token | phrase"},
    {"cleanup", "true", "remove orphaned function words after deletion"},
    {"stem", "false", "Porter-stem ROUGE tokens"},
    {"lsum", "false", "summary-level ROUGE-L over sentences"},
    {"aggregation", "macro", "entity metric aggregation: macro | micro"},
}};

inline std::string EnvName(std::string_view key) {
  std::string out = "FACTEDIT_";
  for (char c : key) out += c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return out;
}

inline bool IsConfigKey(std::string_view key) {
  for (const auto& k : kConfigKeys) {
    if (k.name == key) return true;
  }
  return false;
}

// "key = value" lines; '#' starts a comment line.
inline std::map<std::string, std::string> ReadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open config file " + path.string());
  std::map<std::string, std::string> values;
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, where + "expected key = value").at_line(line_no);
    }
    const std::string key = trim(line.substr(0, eq));
    if (!IsConfigKey(key)) {
      throw Error(ErrorCode::kInvalidArgument, where + "unknown key '" + key + "'")
          .at_line(line_no);
    }
    values[key] = trim(line.substr(eq + 1));
  }
  return values;
}

struct PipelineConfig {
  MatcherConfig matcher;
  Backend backend = Backend::kRules;
  std::string gazetteer;
  SpecialTokens tokens;
  std::string sep = "<sep>";
  std::string field = "auto";
  double min_ratio = 0.75;
  std::size_t sample_size = 200000;
  std::uint64_t seed = 0;
  std::size_t cap = 64;
  DeletePolicy policy = DeletePolicy::kPhrase;
  bool cleanup = true;
  RougeOptions rouge;
  Aggregation aggregation = Aggregation::kMacro;

  std::map<std::string, std::string> resolved;  // every key, as text

  EntityExtractor MakeExtractor() const {
    std::shared_ptr<const Gazetteer> gaz;
    if (!gazetteer.empty()) gaz = std::make_shared<Gazetteer>(Gazetteer::LoadDirectory(gazetteer));
    return EntityExtractor(backend, gaz);
  }

  Json ToJson() const {
    Json j = Json::object();
    for (const auto& [k, v] : resolved) j[k] = v;
    return j;
  }

  std::uint64_t Hash() const { return rng::Fnv1a(ToJson().dump()); }
};

namespace config_internal {

inline bool ParseBool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error(ErrorCode::kInvalidArgument, key + ": expected true or false, got '" + v + "'");
}

inline std::uint64_t ParseUnsigned(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, key + ": expected a non-negative integer, got '" +
                                                 v + "'");
  }
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidArgument, key + ": value out of range");
  }
}

inline double ParseDouble(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidArgument, key + ": expected a number, got '" + v + "'");
  }
}

}  // namespace config_internal

// Resolves every key from flags, then the environment, then the config file,
// then the default.
inline PipelineConfig ResolveConfig(const std::map<std::string, std::string>& flags,
                                    const std::map<std::string, std::string>& file = {},
                                    bool use_env = true) {
  using namespace config_internal;
  PipelineConfig c;
  for (const auto& k : kConfigKeys) {
    const std::string key(k.name);
    std::string value(k.default_value);
    if (auto it = file.find(key); it != file.end()) value = it->second;
    if (use_env) {
      if (const char* env = std::getenv(EnvName(key).c_str())) value = env;
    }
    if (auto it = flags.find(key); it != flags.end()) value = it->second;
    c.resolved[key] = value;
  }
  const auto& r = c.resolved;
  const std::string& mode = r.at("matcher-mode");
  if (mode == "none") {
    c.matcher.mode = NormalizationMode::kNone;
  } else if (mode == "casefold") {
    c.matcher.mode = NormalizationMode::kCasefold;
  } else if (mode == "casefold-strip-punct") {
    c.matcher.mode = NormalizationMode::kCasefoldStripPunct;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "matcher-mode: unknown value '" + mode + "'");
  }
  const std::string& scope = r.at("scope");
  if (scope == "source-text") {
    c.matcher.scope = MatchScope::kSourceText;
  } else if (scope == "source-entities") {
    c.matcher.scope = MatchScope::kSourceEntitySurfaces;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "scope: unknown value '" + scope + "'");
  }
  const std::string& backend = r.at("backend");
  if (backend == "rules") {
    c.backend = Backend::kRules;
  } else if (backend == "precomputed") {
    c.backend = Backend::kPrecomputed;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "backend: unknown value '" + backend + "'");
  }
  c.gazetteer = r.at("gazetteer");
  c.tokens.open = r.at("open-token");
  c.tokens.close = r.at("close-token");
  c.tokens.Validate();
  c.sep = r.at("sep");
  if (c.sep.empty()) throw Error(ErrorCode::kInvalidArgument, "sep must be non-empty");
  c.field = r.at("field");
  if (c.field != "auto" && c.field != "hypothesis" && c.field != "reference") {
    throw Error(ErrorCode::kInvalidArgument, "field: unknown value '" + c.field + "'");
  }
  c.min_ratio = ParseDouble("min-ratio", r.at("min-ratio"));
  if (!(c.min_ratio > 0.0 && c.min_ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "min-ratio must lie in (0, 1]");
  }
  c.sample_size = static_cast<std::size_t>(ParseUnsigned("sample-size", r.at("sample-size")));
  c.seed = ParseUnsigned("seed", r.at("seed"));
  c.cap = static_cast<std::size_t>(ParseUnsigned("cap", r.at("cap")));
  if (c.cap < 1) throw Error(ErrorCode::kInvalidArgument, "cap must be at least 1");
  const auto policy = ParseDeletePolicy(r.at("policy"));
  if (!policy) throw Error(ErrorCode::kInvalidArgument, "policy: unknown value '" +
                                                            r.at("policy") + "'");
  c.policy = *policy;
  c.cleanup = ParseBool("cleanup", r.at("cleanup"));
  c.rouge.stem = ParseBool("stem", r.at("stem"));
  c.rouge.lsum = ParseBool("lsum", r.at("lsum"));
  const std::string& agg = r.at("aggregation");
  if (agg == "macro") {
    c.aggregation = Aggregation::kMacro;
  } else if (agg == "micro") {
    c.aggregation = Aggregation::kMicro;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "aggregation: unknown value '" + agg + "'");
  }
  return c;
}

}  // namespace factedit
