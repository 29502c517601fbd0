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

// Automatic evaluation: ROUGE-1/2/L, entity precision and recall against the
// source and reference, R1 against a cleaned reference, and Edit%.
//
// Scores are fractions in [0, 1] internally; reports scale them by 100.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "factedit/entity.hpp"
#include "factedit/error.hpp"
#include "factedit/stem.hpp"
#include "factedit/text.hpp"

namespace factedit {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static RougeScore FromCounts(double overlap, double hyp_total, double ref_total) {
    RougeScore s;
    if (hyp_total <= 0.0 || ref_total <= 0.0) return s;
    s.precision = overlap / hyp_total;
    s.recall = overlap / ref_total;
    s.f1 = s.precision + s.recall > 0.0
               ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
               : 0.0;
    return s;
  }
};

struct RougeOptions {
  bool stem = false;
  bool lsum = false;  // RL as summary-level union LCS over sentences
};

// Tokens as scored: casefolded, punctuation-only tokens removed.
inline std::vector<std::string> RougeTokens(std::string_view text, bool stem = false) {
  const std::u32string decoded = utf8::Decode(text);
  std::vector<std::string> out;
  for (const CharSpan& span : TokenizeSpans(decoded)) {
    const std::u32string_view token = std::u32string_view(decoded).substr(span.start, span.size());
    if (IsPunctToken(token)) continue;
    std::string folded = utf8::Encode(Lowercase(token));
    out.push_back(stem ? PorterStem(folded) : std::move(folded));
  }
  return out;
}

namespace internal {

inline std::map<std::vector<std::string>, int> NGramCounts(const std::vector<std::string>& tokens,
                                                           int n) {
  std::map<std::vector<std::string>, int> counts;
  if (tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

inline std::vector<std::vector<int>> LcsTable(const std::vector<std::string>& a,
                                              const std::vector<std::string>& b) {
  std::vector<std::vector<int>> t(a.size() + 1, std::vector<int>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t;
}

// Indices into `ref` of one LCS between ref and hyp.
inline std::vector<std::size_t> LcsRefIndices(const std::vector<std::string>& ref,
                                              const std::vector<std::string>& hyp) {
  const auto t = LcsTable(ref, hyp);
  std::vector<std::size_t> idx;
  std::size_t i = ref.size();
  std::size_t j = hyp.size();
  while (i > 0 && j > 0) {
    if (ref[i - 1] == hyp[j - 1]) {
      idx.push_back(i - 1);
      --i;
      --j;
    } else if (t[i - 1][j] >= t[i][j - 1]) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(idx.begin(), idx.end());
  return idx;
}

}  // namespace internal

inline std::size_t LcsLength(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return static_cast<std::size_t>(internal::LcsTable(a, b)[a.size()][b.size()]);
}

inline RougeScore RougeNTokens(const std::vector<std::string>& hyp,
                               const std::vector<std::string>& ref, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "ROUGE-N order must be >= 1");
  const auto h = internal::NGramCounts(hyp, n);
  const auto r = internal::NGramCounts(ref, n);
  double overlap = 0;
  double h_total = 0;
  double r_total = 0;
  for (const auto& [gram, c] : h) {
    h_total += c;
    auto it = r.find(gram);
    if (it != r.end()) overlap += std::min(c, it->second);
  }
  for (const auto& [gram, c] : r) r_total += c;
  return RougeScore::FromCounts(overlap, h_total, r_total);
}

inline RougeScore RougeLTokens(const std::vector<std::string>& hyp,
                               const std::vector<std::string>& ref) {
  return RougeScore::FromCounts(static_cast<double>(LcsLength(hyp, ref)),
                                static_cast<double>(hyp.size()), static_cast<double>(ref.size()));
}

// Summary-level LCS: for each reference sentence, the union of its LCS hits
// against every hypothesis sentence, with hits clipped by token counts.
inline RougeScore RougeLsumTokens(const std::vector<std::vector<std::string>>& hyp_sentences,
                                  const std::vector<std::vector<std::string>>& ref_sentences) {
  std::unordered_map<std::string, int> hyp_counts;
  std::unordered_map<std::string, int> ref_counts;
  double hyp_total = 0;
  double ref_total = 0;
  for (const auto& s : hyp_sentences) {
    for (const auto& t : s) ++hyp_counts[t];
    hyp_total += static_cast<double>(s.size());
  }
  for (const auto& s : ref_sentences) {
    for (const auto& t : s) ++ref_counts[t];
    ref_total += static_cast<double>(s.size());
  }
  double hits = 0;
  for (const auto& ref : ref_sentences) {
    std::set<std::size_t> union_idx;
    for (const auto& hyp : hyp_sentences) {
      for (std::size_t i : internal::LcsRefIndices(ref, hyp)) union_idx.insert(i);
    }
    for (std::size_t i : union_idx) {
      const std::string& t = ref[i];
      if (hyp_counts[t] > 0 && ref_counts[t] > 0) {
        hits += 1;
        --hyp_counts[t];
        --ref_counts[t];
      }
    }
  }
  return RougeScore::FromCounts(hits, hyp_total, ref_total);
}

inline RougeScore RougeN(std::string_view hyp, std::string_view ref, int n,
                         const RougeOptions& options = {}) {
  return RougeNTokens(RougeTokens(hyp, options.stem), RougeTokens(ref, options.stem), n);
}

inline RougeScore RougeL(std::string_view hyp, std::string_view ref,
                         const RougeOptions& options = {}) {
  if (!options.lsum) {
    return RougeLTokens(RougeTokens(hyp, options.stem), RougeTokens(ref, options.stem));
  }
  auto split = [&](std::string_view text) {
    const std::u32string decoded = utf8::Decode(text);
    std::vector<std::vector<std::string>> sentences;
    for (const CharSpan& s : SplitSentences(decoded)) {
      sentences.push_back(RougeTokens(utf8::Encode(std::u32string_view(decoded).substr(
                                          s.start, s.size())),
                                      options.stem));
    }
    return sentences;
  };
  return RougeLsumTokens(split(hyp), split(ref));
}

// ---------------------------------------------------------------------------
// Entity metrics

struct EntityCount {
  std::size_t matched = 0;
  std::size_t total = 0;

  // Percentage; 100 when there is nothing to match.
  double Percent() const {
    return total == 0 ? 100.0 : 100.0 * static_cast<double>(matched) / static_cast<double>(total);
  }
};

// Summary mentions grounded in the source.
inline EntityCount EntityPrecisionCounts(std::string_view summary, std::string_view source,
                                         const EntityExtractor& extractor,
                                         const MatcherConfig& matcher = {},
                                         const std::vector<EntityMention>* summary_ann = nullptr,
                                         const std::vector<EntityMention>* source_ann = nullptr) {
  const auto mentions = extractor.Extract(summary, summary_ann);
  EntityCount c;
  c.total = mentions.size();
  if (mentions.empty()) return c;
  const GroundingTarget target = MakeTarget(source, matcher, extractor, source_ann);
  for (const auto& m : mentions) {
    if (IsGrounded(m.surface, target, matcher)) ++c.matched;
  }
  return c;
}

inline double EntityPrecision(std::string_view summary, std::string_view source,
                              const EntityExtractor& extractor, const MatcherConfig& matcher = {},
                              const std::vector<EntityMention>* summary_ann = nullptr,
                              const std::vector<EntityMention>* source_ann = nullptr) {
  return EntityPrecisionCounts(summary, source, extractor, matcher, summary_ann, source_ann)
      .Percent();
}

// Reference mentions found in the summary.
inline EntityCount EntityRecallCounts(std::string_view reference, std::string_view summary,
                                      const EntityExtractor& extractor,
                                      const MatcherConfig& matcher = {},
                                      const std::vector<EntityMention>* reference_ann = nullptr,
                                      const std::vector<EntityMention>* summary_ann = nullptr) {
  return EntityPrecisionCounts(reference, summary, extractor, matcher, reference_ann, summary_ann);
}

inline double EntityRecall(std::string_view reference, std::string_view summary,
                           const EntityExtractor& extractor, const MatcherConfig& matcher = {},
                           const std::vector<EntityMention>* reference_ann = nullptr,
                           const std::vector<EntityMention>* summary_ann = nullptr) {
  return EntityRecallCounts(reference, summary, extractor, matcher, reference_ann, summary_ann)
      .Percent();
}

// The reference with every mention not grounded in the source deleted, and
// whitespace collapsed. Further occurrences of a deleted surface are removed
// as well, so the result never contains an ungrounded surface.
inline std::string CleanReference(std::string_view reference, std::string_view source,
                                  const EntityExtractor& extractor,
                                  const MatcherConfig& matcher = {},
                                  const std::vector<EntityMention>* reference_ann = nullptr,
                                  const std::vector<EntityMention>* source_ann = nullptr) {
  const std::vector<EntityMention> ungrounded =
      DetectExtrinsic(reference, source, matcher, extractor, reference_ann, source_ann);
  if (ungrounded.empty()) return std::string(reference);
  std::u32string text = utf8::Decode(reference);
  auto cut = [&text](std::vector<CharSpan> spans) {
    std::sort(spans.begin(), spans.end());
    std::u32string out;
    std::size_t pos = 0;
    for (const CharSpan& s : spans) {
      if (s.start < pos) continue;
      out.append(text, pos, s.start - pos);
      out.push_back(U' ');
      pos = s.end;
    }
    out.append(text, pos, std::u32string::npos);
    text = std::move(out);
  };
  std::vector<CharSpan> spans;
  for (const auto& m : ungrounded) spans.push_back(m.span);
  cut(std::move(spans));
  for (bool again = true; again;) {
    again = false;
    for (const auto& m : ungrounded) {
      auto found = Locate(text, utf8::Decode(m.surface), matcher.mode);
      if (!found.empty()) {
        cut(std::move(found));
        again = true;
      }
    }
  }
  return CollapseWhitespace(utf8::Encode(text));
}

inline RougeScore R1Clean(std::string_view hyp, std::string_view reference,
                          std::string_view source, const EntityExtractor& extractor,
                          const MatcherConfig& matcher = {}, const RougeOptions& options = {},
                          const std::vector<EntityMention>* reference_ann = nullptr,
                          const std::vector<EntityMention>* source_ann = nullptr) {
  return RougeN(hyp, CleanReference(reference, source, extractor, matcher, reference_ann,
                                    source_ann),
                1, options);
}

// ---------------------------------------------------------------------------
// Edit%

struct IdText {
  std::string id;
  std::string text;
};

inline bool ChangedText(std::string_view original, std::string_view edited) {
  return CollapseWhitespace(original) != CollapseWhitespace(edited);
}

// Percentage of records whose edited text differs from the original, ignoring
// whitespace. Both sides must carry the same set of unique ids.
inline double EditPercent(const std::vector<IdText>& originals, const std::vector<IdText>& edited) {
  if (originals.empty() && edited.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "edit_percent over zero records");
  }
  std::map<std::string, const std::string*> by_id;
  for (const auto& o : originals) {
    if (!by_id.emplace(o.id, &o.text).second) {
      throw Error(ErrorCode::kAlignmentError, "duplicate original id '" + o.id + "'");
    }
  }
  if (edited.size() != originals.size()) {
    throw Error(ErrorCode::kAlignmentError, "original and edited record counts differ");
  }
  std::set<std::string> seen;
  std::size_t changed = 0;
  for (const auto& e : edited) {
    auto it = by_id.find(e.id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kAlignmentError, "edited id '" + e.id + "' has no original");
    }
    if (!seen.insert(e.id).second) {
      throw Error(ErrorCode::kAlignmentError, "duplicate edited id '" + e.id + "'");
    }
    if (ChangedText(*it->second, e.text)) ++changed;
  }
  return 100.0 * static_cast<double>(changed) / static_cast<double>(edited.size());
}

}  // namespace factedit
