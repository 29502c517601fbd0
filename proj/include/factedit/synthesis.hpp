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

// Training-data synthesis for the perturber and the post-editor.
//
//   compression pairs --FilterCompression--> EmitPerturberPairs
//        (perturber learns: compressed + entity list -> uncompressed)
//
//   corpus --CleanSubset--> MakeInsertionTasks --(external perturber)-->
//        EmitEditorPair
//        (post-editor learns: source + marked perturbed summary -> reference)

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "factedit/corpus.hpp"
#include "factedit/entity.hpp"
#include "factedit/markup.hpp"
#include "factedit/rng.hpp"
#include "factedit/text.hpp"

namespace factedit {

struct CompressionPair {
  std::string id;
  std::string uncompressed;
  std::string compressed;
};

enum class Direction { kPerturber, kPostEditor };

inline std::string_view DirectionName(Direction d) {
  return d == Direction::kPerturber ? "perturber" : "post-editor";
}

struct TrainingPair {
  std::string id;
  Direction direction = Direction::kPerturber;
  std::string input;
  std::string target;
  std::vector<std::string> inserted_entities;  // post-editor only
};

struct InsertionTask {
  std::string task_id;
  std::string record_id;
  std::string reference;
  int k = 1;
  std::vector<std::string> entities;
  std::uint64_t seed = 0;
};

inline std::size_t TokenCount(std::string_view text) {
  return TokenizeSpans(utf8::Decode(text)).size();
}

// "<input> <sep> e1; e2; ..."
inline std::string JoinWithEntities(std::string_view text, const std::vector<std::string>& entities,
                                    std::string_view sep) {
  std::string out(text);
  out += ' ';
  out += sep;
  out += ' ';
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (i > 0) out += "; ";
    out += entities[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Compression data

struct FilterStats {
  std::size_t kept = 0;
  std::size_t dropped = 0;
  std::size_t skipped_empty = 0;  // uncompressed side has no tokens
};

// Keeps pairs whose compressed/uncompressed token ratio is at least
// `min_ratio` (boundary inclusive). Input order is preserved.
inline std::vector<CompressionPair> FilterCompression(const std::vector<CompressionPair>& pairs,
                                                      double min_ratio = 0.75,
                                                      FilterStats* stats = nullptr) {
  if (!(min_ratio > 0.0 && min_ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "min_ratio must lie in (0, 1]");
  }
  FilterStats local;
  std::vector<CompressionPair> kept;
  for (const auto& pair : pairs) {
    const std::size_t long_count = TokenCount(pair.uncompressed);
    if (long_count == 0) {
      ++local.skipped_empty;
      continue;
    }
    const double ratio =
        static_cast<double>(TokenCount(pair.compressed)) / static_cast<double>(long_count);
    if (ratio >= min_ratio) {
      kept.push_back(pair);
      ++local.kept;
    } else {
      ++local.dropped;
    }
  }
  if (stats) *stats = local;
  return kept;
}

// Surfaces of uncompressed-side mentions that do not occur in the compressed
// sentence; deduplicated, in order of first appearance.
inline std::vector<std::string> EntityDiff(const CompressionPair& pair,
                                           const EntityExtractor& extractor,
                                           const MatcherConfig& matcher = {}) {
  const auto mentions = extractor.Extract(pair.uncompressed);
  const GroundingTarget target = MakeTarget(pair.compressed, matcher, extractor);
  std::vector<std::string> diff;
  std::set<std::string> seen;
  for (const auto& m : mentions) {
    if (IsGrounded(m.surface, target, matcher)) continue;
    if (seen.insert(m.surface).second) diff.push_back(m.surface);
  }
  return diff;
}

// One perturber pair per compression pair with a non-empty entity diff.
inline std::vector<TrainingPair> EmitPerturberPairs(const std::vector<CompressionPair>& pairs,
                                                    const EntityExtractor& extractor,
                                                    const MatcherConfig& matcher = {},
                                                    std::string_view sep = "<sep>",
                                                    std::size_t* dropped_empty_diff = nullptr) {
  std::vector<TrainingPair> out;
  std::size_t dropped = 0;
  for (const auto& pair : pairs) {
    auto diff = EntityDiff(pair, extractor, matcher);
    if (diff.empty()) {
      ++dropped;
      continue;
    }
    TrainingPair tp;
    tp.id = pair.id;
    tp.direction = Direction::kPerturber;
    tp.input = JoinWithEntities(pair.compressed, diff, sep);
    tp.target = pair.uncompressed;
    tp.inserted_entities = std::move(diff);
    out.push_back(std::move(tp));
  }
  if (dropped_empty_diff) *dropped_empty_diff = dropped;
  return out;
}

// ---------------------------------------------------------------------------
// Summarization data

struct CleanStats {
  std::size_t kept = 0;
  std::size_t dropped = 0;
  std::size_t skipped_missing_reference = 0;
};

// Records whose reference has no extrinsic entity with respect to the source.
inline std::vector<CorpusRecord> CleanSubset(const std::vector<CorpusRecord>& records,
                                             const EntityExtractor& extractor,
                                             const MatcherConfig& matcher = {},
                                             CleanStats* stats = nullptr) {
  CleanStats local;
  std::vector<CorpusRecord> kept;
  for (const auto& r : records) {
    if (!r.reference) {
      ++local.skipped_missing_reference;
      continue;
    }
    const auto flagged = DetectExtrinsic(*r.reference, r.source, matcher, extractor,
                                         r.Annotation("reference"), r.Annotation("source"));
    if (flagged.empty()) {
      kept.push_back(r);
      ++local.kept;
    } else {
      ++local.dropped;
    }
  }
  if (stats) *stats = local;
  return kept;
}

inline std::string InsertionTaskId(std::string_view record_id, int k) {
  return std::string(record_id) + "#" + std::to_string(k);
}

// Candidate pool: distinct source mention surfaces absent from the reference,
// in source order.
inline std::vector<std::string> InsertionPool(const CorpusRecord& record,
                                              const EntityExtractor& extractor,
                                              const MatcherConfig& matcher = {}) {
  if (!record.reference) {
    throw Error(ErrorCode::kInvalidArgument, "record '" + record.id + "' has no reference");
  }
  const auto source_mentions = extractor.Extract(record.source, record.Annotation("source"));
  const GroundingTarget target =
      MakeTarget(*record.reference, matcher, extractor, record.Annotation("reference"));
  std::vector<std::string> pool;
  std::set<std::string> seen;
  for (const auto& m : source_mentions) {
    if (IsGrounded(m.surface, target, matcher)) continue;
    if (seen.insert(m.surface).second) pool.push_back(m.surface);
  }
  return pool;
}

// Up to three tasks (k = 1, 2, 3), each drawing k pool entries without
// replacement from a stream seeded by (seed, record id, k). Selected entities
// are listed in source order.
inline std::vector<InsertionTask> MakeInsertionTasks(const CorpusRecord& record, std::uint64_t seed,
                                                     const EntityExtractor& extractor,
                                                     const MatcherConfig& matcher = {}) {
  const auto pool = InsertionPool(record, extractor, matcher);
  std::vector<InsertionTask> tasks;
  for (int k = 1; k <= 3; ++k) {
    if (pool.size() < static_cast<std::size_t>(k)) break;
    rng::Generator gen(rng::DeriveSeed(seed, record.id, static_cast<std::uint64_t>(k)));
    auto picked = rng::SampleIndices(pool.size(), static_cast<std::size_t>(k), gen);
    std::sort(picked.begin(), picked.end());
    InsertionTask task;
    task.task_id = InsertionTaskId(record.id, k);
    task.record_id = record.id;
    task.reference = *record.reference;
    task.k = k;
    task.seed = seed;
    for (std::size_t idx : picked) task.entities.push_back(pool[idx]);
    tasks.push_back(std::move(task));
  }
  return tasks;
}

inline std::string PerturberRequestInput(const InsertionTask& task, std::string_view sep = "<sep>") {
  return JoinWithEntities(task.reference, task.entities, sep);
}

enum class EditorRejection {
  kNone,
  kEntityNotFound,  // the perturber did not insert every requested entity
  kResidualEntity,  // an inserted entity survives outside the marked spans
};

struct EditorPairResult {
  std::optional<TrainingPair> pair;
  EditorRejection rejection = EditorRejection::kNone;
  std::size_t overlaps_dropped = 0;
};

struct EditorPairOptions {
  MatcherConfig matcher;
  std::string sep = "<sep>";
  SpecialTokens tokens;
};

// Marks the first occurrence of each task entity in the perturbed text and
// pairs "source <sep> marked" with the reference. Overlapping located spans
// keep the earlier one.
inline EditorPairResult EmitEditorPair(const CorpusRecord& record, const InsertionTask& task,
                                       std::string_view perturbed,
                                       const EditorPairOptions& options = {}) {
  EditorPairResult result;
  if (!record.reference) {
    throw Error(ErrorCode::kInvalidArgument, "record '" + record.id + "' has no reference");
  }
  const std::u32string text = utf8::Decode(perturbed);
  std::vector<CharSpan> spans;
  for (const auto& entity : task.entities) {
    const auto found = Locate(text, utf8::Decode(entity), options.matcher.mode);
    if (found.empty()) {
      result.rejection = EditorRejection::kEntityNotFound;
      return result;
    }
    spans.push_back(found.front());
  }
  std::sort(spans.begin(), spans.end());
  std::vector<CharSpan> kept;
  for (const auto& s : spans) {
    if (!kept.empty() && kept.back().overlaps(s)) {
      ++result.overlaps_dropped;
      continue;
    }
    kept.push_back(s);
  }

  // Post-editor targets must be reachable by deleting the marked spans.
  std::u32string remainder;
  std::size_t pos = 0;
  for (const auto& s : kept) {
    remainder.append(text, pos, s.start - pos);
    remainder.push_back(U' ');
    pos = s.end;
  }
  remainder.append(text, pos, std::u32string::npos);
  for (const auto& entity : task.entities) {
    if (Occurs(remainder, utf8::Decode(entity), options.matcher.mode)) {
      result.rejection = EditorRejection::kResidualEntity;
      return result;
    }
  }

  const MarkedText marked = Mark(perturbed, kept, options.tokens);
  TrainingPair tp;
  tp.id = task.task_id;
  tp.direction = Direction::kPostEditor;
  tp.input = record.source + " " + options.sep + " " + marked.Serialize();
  tp.target = *record.reference;
  tp.inserted_entities = task.entities;
  result.pair = std::move(tp);
  return result;
}

// ---------------------------------------------------------------------------
// Sampling

// Uniform sample of n items without replacement, deterministic under `seed`.
// The result is ordered by id.
template <typename T>
std::vector<T> Sample(std::vector<T> items, std::size_t n, std::uint64_t seed) {
  if (items.size() > n) {
    rng::Generator gen(rng::DeriveSeed(seed, "sample"));
    auto picked = rng::SampleIndices(items.size(), n, gen);
    std::sort(picked.begin(), picked.end());
    std::vector<T> chosen;
    chosen.reserve(n);
    for (std::size_t idx : picked) chosen.push_back(std::move(items[idx]));
    items = std::move(chosen);
  }
  SortById(&items);
  return items;
}

}  // namespace factedit
