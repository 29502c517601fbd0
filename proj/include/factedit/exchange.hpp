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

// File exchange with an external editor process.
//
//   <dir>/requests.jsonl    {"id": ..., "input": "source <sep> marked summary"}
//   <dir>/responses.jsonl   {"id": ..., "output": "edited summary"}
//   <dir>/exchange.lock     held for the duration of one exchange
//
// The responder should write responses.jsonl in one step (write elsewhere,
// then rename).

#pragma once

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "factedit/corpus.hpp"
#include "factedit/editors.hpp"
#include "factedit/markup.hpp"

namespace factedit {

struct ExchangeRequest {
  std::string id;
  std::string source;
  std::string marked;  // serialized MarkedText
};

struct ExchangeOptions {
  std::string sep = "<sep>";
  SpecialTokens tokens;
  // Run with the exchange directory appended as the last argument. When
  // empty, responses are awaited from a process started elsewhere.
  std::string command;
  std::chrono::milliseconds timeout{30000};
  std::chrono::milliseconds poll{50};
};

inline constexpr const char* kRequestFile = "requests.jsonl";
inline constexpr const char* kResponseFile = "responses.jsonl";
inline constexpr const char* kLockFile = "exchange.lock";

class ExchangeLock {
 public:
  explicit ExchangeLock(std::filesystem::path path) : path_(std::move(path)) {
    std::FILE* f = std::fopen(path_.string().c_str(), "wx");
    if (f == nullptr) {
      throw Error(ErrorCode::kIo, "exchange directory is busy (" + path_.string() + " exists)");
    }
    std::fclose(f);
  }
  ~ExchangeLock() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  ExchangeLock(const ExchangeLock&) = delete;
  ExchangeLock& operator=(const ExchangeLock&) = delete;

 private:
  std::filesystem::path path_;
};

inline std::string ShellQuote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

// Maps response lines to outputs by id, checking them against the request ids.
inline std::map<std::string, std::string> ValidateResponses(
    const std::filesystem::path& path, const std::vector<JsonLine>& lines,
    const std::set<std::string>& requested) {
  std::map<std::string, std::string> outputs;
  std::vector<std::string> duplicates;
  std::vector<std::string> unknown;
  for (const auto& l : lines) {
    const Json& j = l.value;
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() || !j.contains("output") ||
        !j["output"].is_string()) {
      throw Error(ErrorCode::kInvalidInput, path.string() + ":" + std::to_string(l.line) +
                                                ": response must be {id, output}")
          .at_line(l.line);
    }
    const std::string id = j["id"].get<std::string>();
    if (!requested.count(id)) {
      unknown.push_back(id);
      continue;
    }
    if (!outputs.emplace(id, j["output"].get<std::string>()).second) duplicates.push_back(id);
  }
  auto join = [](const std::vector<std::string>& ids) {
    std::string s;
    for (const auto& id : ids) s += (s.empty() ? "" : ", ") + id;
    return s;
  };
  if (!duplicates.empty()) {
    throw Error(ErrorCode::kDuplicateResponse, "duplicate response ids: " + join(duplicates),
                duplicates);
  }
  if (!unknown.empty()) {
    throw Error(ErrorCode::kUnknownResponse, "responses for unknown ids: " + join(unknown),
                unknown);
  }
  std::vector<std::string> missing;
  for (const auto& id : requested) {
    if (!outputs.count(id)) missing.push_back(id);
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::kMissingResponse, "no response for ids: " + join(missing), missing);
  }
  return outputs;
}

// Writes the requests, waits for the responses and returns one EditResult per
// request, ordered by id.
inline std::vector<EditResult> RunExternalEditor(std::vector<ExchangeRequest> requests,
                                                 const std::filesystem::path& dir,
                                                 const ExchangeOptions& options = {}) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  ExchangeLock lock(dir / kLockFile);

  SortById(&requests);
  std::set<std::string> ids;
  std::vector<Json> lines;
  std::vector<MarkedText> marked;
  for (const auto& r : requests) {
    if (!ids.insert(r.id).second) {
      throw Error(ErrorCode::kInvalidInput, "duplicate request id '" + r.id + "'");
    }
    marked.push_back(StripMarks(r.marked, options.tokens));
    lines.push_back(Json{{"id", r.id}, {"input", r.source + " " + options.sep + " " + r.marked}});
  }

  const auto response_path = dir / kResponseFile;
  std::filesystem::remove(response_path, ec);
  AtomicWrite(dir / kRequestFile, ToJsonLines(lines));

  if (!options.command.empty()) {
    const std::string cmd = options.command + " " + ShellQuote(dir.string());
    const int status = std::system(cmd.c_str());
    if (status != 0) {
      throw Error(ErrorCode::kIo, "external editor exited with status " + std::to_string(status));
    }
  }
  const auto deadline = std::chrono::steady_clock::now() + options.timeout;
  while (!std::filesystem::exists(response_path)) {
    if (std::chrono::steady_clock::now() >= deadline) {
      throw Error(ErrorCode::kTimeout, "no " + std::string(kResponseFile) + " in " +
                                           dir.string() + " after " +
                                           std::to_string(options.timeout.count()) + " ms");
    }
    std::this_thread::sleep_for(options.poll);
  }

  const auto outputs = ValidateResponses(response_path, ReadJsonLines(response_path), ids);
  std::vector<EditResult> results;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    EditResult r;
    r.record_id = requests[i].id;
    r.original = marked[i].base;
    r.edited = outputs.at(requests[i].id);
    r.changed = ChangedText(r.original, r.edited);
    r.removed = marked[i].removal_spans;
    r.policy = "external";
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace factedit
