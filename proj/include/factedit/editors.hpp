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

// Deterministic post-editors.
//
// DeleteCorrect removes marked spans from a summary:
//
//   "oil prices languished at <rm> $28 </rm> a barrel for much of the year"
//     token  (no cleanup)  "oil prices languished at a for much of the year"
//     phrase               "oil prices languished for much of the year"
//
// EnumerateSwaps builds every replacement of flagged mentions by same-typed
// source mentions.

#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "factedit/entity.hpp"
#include "factedit/error.hpp"
#include "factedit/lexicon.hpp"
#include "factedit/markup.hpp"
#include "factedit/metrics.hpp"
#include "factedit/text.hpp"

namespace factedit {

// ---------------------------------------------------------------------------
// Dependency parse sidecar
//
//   # id = rec-1
//   1<TAB>oil<TAB>2<TAB>compound
//   2<TAB>prices<TAB>3<TAB>nsubj
//   ...
//   <blank line>

struct ParseToken {
  int index = 0;  // 1-based
  std::string surface;
  int head = 0;  // 0 = root
  std::string label;
};

struct DependencyParse {
  std::vector<ParseToken> tokens;
};

inline std::map<std::string, DependencyParse> ReadParseSidecar(std::istream& in) {
  std::map<std::string, DependencyParse> out;
  std::string line;
  std::size_t line_no = 0;
  std::string current;
  bool have_current = false;
  auto fail = [&line_no](const std::string& what) {
    return Error(ErrorCode::kInvalidInput, "parse line " + std::to_string(line_no) + ": " + what)
        .at_line(line_no);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      have_current = false;
      continue;
    }
    if (line.rfind("# id = ", 0) == 0) {
      current = line.substr(7);
      if (current.empty()) throw fail("empty record id");
      if (out.count(current)) throw fail("duplicate parse block for '" + current + "'");
      out[current];
      have_current = true;
      continue;
    }
    if (line[0] == '#') continue;
    if (!have_current) throw fail("token row outside an '# id = ' block");
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() != 4) throw fail("expected 4 tab-separated columns");
    ParseToken t;
    try {
      std::size_t used = 0;
      t.index = std::stoi(cols[0], &used);
      if (used != cols[0].size()) throw std::invalid_argument("index");
      t.head = std::stoi(cols[2], &used);
      if (used != cols[2].size()) throw std::invalid_argument("head");
    } catch (const std::exception&) {
      throw fail("non-integer index or head");
    }
    t.surface = cols[1];
    t.label = cols[3];
    out[current].tokens.push_back(std::move(t));
  }
  return out;
}

// Character span of each parse token, matched left to right against `text`.
inline std::vector<CharSpan> AlignParse(std::u32string_view text, const DependencyParse& parse) {
  const int n = static_cast<int>(parse.tokens.size());
  std::vector<CharSpan> spans;
  std::size_t pos = 0;
  for (int i = 0; i < n; ++i) {
    const ParseToken& t = parse.tokens[i];
    if (t.index != i + 1) {
      throw Error(ErrorCode::kParseAlignment, "parse token " + std::to_string(i + 1) +
                                                  " has index " + std::to_string(t.index));
    }
    if (t.head < 0 || t.head > n || t.head == t.index) {
      throw Error(ErrorCode::kParseAlignment,
                  "parse token " + std::to_string(t.index) + " has invalid head");
    }
    while (pos < text.size() && chars::IsSpace(text[pos])) ++pos;
    const std::u32string surface = utf8::Decode(t.surface);
    if (surface.empty() || text.substr(pos, surface.size()) != surface) {
      throw Error(ErrorCode::kParseAlignment,
                  "parse token " + std::to_string(t.index) + " '" + t.surface +
                      "' does not match the text at offset " + std::to_string(pos));
    }
    spans.push_back({pos, pos + surface.size()});
    pos += surface.size();
  }
  while (pos < text.size() && chars::IsSpace(text[pos])) ++pos;
  if (pos != text.size()) {
    throw Error(ErrorCode::kParseAlignment, "parse does not cover the text past offset " +
                                                std::to_string(pos));
  }
  return spans;
}

// ---------------------------------------------------------------------------
// Deletion editor

enum class DeletePolicy { kToken, kPhrase };

inline std::string_view DeletePolicyName(DeletePolicy p) {
  return p == DeletePolicy::kToken ? "token" : "phrase";
}

inline std::optional<DeletePolicy> ParseDeletePolicy(std::string_view name) {
  if (name == "token") return DeletePolicy::kToken;
  if (name == "phrase") return DeletePolicy::kPhrase;
  return std::nullopt;
}

// Why a range of the original was removed.
enum class CutReason {
  kMarked,        // inside a marked span
  kUnit,          // measure noun after a marked amount ("a barrel")
  kPhrase,        // phrase extension (preposition, determiner, parse subtree)
  kFunctionWord,  // orphaned article, preposition, conjunction or possessive
  kPunct,         // punctuation repair
};

inline std::string_view CutReasonName(CutReason r) {
  switch (r) {
    case CutReason::kMarked: return "marked";
    case CutReason::kUnit: return "unit";
    case CutReason::kPhrase: return "phrase";
    case CutReason::kFunctionWord: return "function-word";
    case CutReason::kPunct: return "punct";
  }
  return "unknown";
}

struct Cut {
  CharSpan span;
  CutReason reason = CutReason::kMarked;
};

struct EditResult {
  std::string record_id;
  std::string original;
  std::string edited;
  bool changed = false;
  std::vector<CharSpan> removed;  // the marked spans, into `original`
  std::string policy;
  std::vector<Cut> cuts;  // everything removed, by reason
};

struct DeleteOptions {
  DeletePolicy policy = DeletePolicy::kPhrase;
  bool cleanup = true;
  const DependencyParse* parse = nullptr;
};

namespace edit_internal {

struct Unit {
  CharSpan span;
  std::u32string lower;
  bool punct = false;
  bool word = false;  // starts with a letter
  bool sentence_start = false;
};

inline bool IsTerminal(const Unit& u) {
  return u.punct && std::all_of(u.lower.begin(), u.lower.end(),
                                [](char32_t c) { return c == U'.' || c == U'!' || c == U'?'; });
}

inline bool IsOneOf(const Unit& u, std::u32string_view set) {
  return u.lower.size() == 1 && set.find(u.lower[0]) != std::u32string_view::npos;
}

inline bool IsFunctionWord(const Unit& u) {
  using namespace lexicon;
  return Contains(Articles(), u.lower) || Contains(Prepositions(), u.lower) ||
         Contains(Conjunctions(), u.lower) || Contains(PossessiveMarkers(), u.lower);
}

// Tokens split further at every boundary in `cuts_at`.
inline std::vector<Unit> BuildUnits(std::u32string_view text, const std::set<std::size_t>& cuts_at) {
  std::vector<Unit> units;
  for (const CharSpan& token : TokenizeSpans(text)) {
    std::size_t start = token.start;
    auto it = cuts_at.upper_bound(token.start);
    for (; it != cuts_at.end() && *it < token.end; ++it) {
      units.push_back({{start, *it}, {}, false, false, false});
      start = *it;
    }
    units.push_back({{start, token.end}, {}, false, false, false});
  }
  for (std::size_t i = 0; i < units.size(); ++i) {
    Unit& u = units[i];
    const std::u32string_view s = text.substr(u.span.start, u.span.size());
    u.lower = Lowercase(s);
    u.punct = IsPunctToken(s);
    u.word = chars::IsLetter(s[0]);
    u.sentence_start = i == 0 || IsTerminal(units[i - 1]);
  }
  return units;
}

inline bool HasDigit(std::u32string_view s) {
  return std::any_of(s.begin(), s.end(), chars::IsDigit);
}

class Deleter {
 public:
  Deleter(std::u32string_view text, const std::vector<CharSpan>& marked,
          const DeleteOptions& options)
      : text_(text), marked_(marked), options_(options) {
    std::set<std::size_t> bounds;
    for (const CharSpan& s : marked_) {
      bounds.insert(s.start);
      bounds.insert(s.end);
    }
    if (options_.policy == DeletePolicy::kPhrase && options_.parse != nullptr) {
      parse_spans_ = AlignParse(text_, *options_.parse);
      for (const CharSpan& s : parse_spans_) {
        bounds.insert(s.start);
        bounds.insert(s.end);
      }
    }
    units_ = BuildUnits(text_, bounds);
    reason_.assign(units_.size(), std::nullopt);
  }

  EditResult Run() {
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    for (const CharSpan& s : marked_) {
      std::size_t first = units_.size();
      std::size_t last = 0;
      for (std::size_t i = 0; i < units_.size(); ++i) {
        if (s.contains(units_[i].span)) {
          Set(i, CutReason::kMarked);
          first = std::min(first, i);
          last = std::max(last, i);
        }
      }
      if (first < units_.size()) groups.emplace_back(first, last);
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const CharSpan span = marked_[g];
      const bool numeric = HasDigit(text_.substr(span.start, span.size()));
      if (options_.policy == DeletePolicy::kPhrase && options_.parse != nullptr) {
        ExtendByParse(span);
        continue;
      }
      std::size_t last = groups[g].second;
      if (numeric) last = ExtendMeasure(last);
      if (options_.policy == DeletePolicy::kPhrase) ExtendPreposition(groups[g].first, last);
    }
    if (options_.cleanup) {
      CleanFunctionWords();
      RepairPunctuation();
    }
    return Render();
  }

 private:
  bool IsCut(std::size_t i) const { return reason_[i].has_value(); }

  void Set(std::size_t i, CutReason r) {
    if (!reason_[i]) reason_[i] = r;
  }

  // "<amount> a barrel": the measure noun goes with the amount; under the
  // phrase policy the determiner does too.
  std::size_t ExtendMeasure(std::size_t last) {
    const std::size_t det = last + 1;
    const std::size_t noun = last + 2;
    if (noun >= units_.size()) return last;
    if (IsCut(det) || IsCut(noun)) return last;
    if (!lexicon::Contains(lexicon::MeasureDeterminers(), units_[det].lower)) return last;
    if (!units_[noun].word || IsFunctionWord(units_[noun])) return last;
    Set(noun, CutReason::kUnit);
    if (options_.policy == DeletePolicy::kPhrase) Set(det, CutReason::kPhrase);
    return noun;
  }

  // A preposition (and articles) governing the cut, unless a content word
  // follows the cut directly.
  void ExtendPreposition(std::size_t first, std::size_t last) {
    const std::size_t next = last + 1;
    if (next < units_.size() && !IsCut(next) && !units_[next].punct &&
        !IsFunctionWord(units_[next])) {
      return;
    }
    std::size_t k = first;
    while (k > 0 && !IsCut(k - 1) && lexicon::Contains(lexicon::Articles(), units_[k - 1].lower)) {
      --k;
    }
    if (k == 0 || IsCut(k - 1) ||
        !lexicon::Contains(lexicon::Prepositions(), units_[k - 1].lower)) {
      return;
    }
    for (std::size_t i = k - 1; i < first; ++i) Set(i, CutReason::kPhrase);
  }

  void ExtendByParse(const CharSpan& span) {
    const auto& tokens = options_.parse->tokens;
    std::set<int> inside;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (parse_spans_[i].overlaps(span)) inside.insert(static_cast<int>(i) + 1);
    }
    int head = 0;
    for (int idx : inside) {
      const int h = tokens[idx - 1].head;
      if (h == 0 || !inside.count(h)) {
        head = idx;
        break;
      }
    }
    if (head == 0) return;
    int root = head;
    const ParseToken& ht = tokens[head - 1];
    if (Lowercase(utf8::Decode(ht.label)) == U"pobj" && ht.head != 0 &&
        Lowercase(utf8::Decode(tokens[ht.head - 1].label)) == U"prep") {
      root = ht.head;
    }
    if (tokens[root - 1].head == 0) return;
    std::vector<std::vector<int>> children(tokens.size() + 1);
    for (const auto& t : tokens) children[t.head].push_back(t.index);
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      const CharSpan cover = parse_spans_[t - 1];
      for (std::size_t i = 0; i < units_.size(); ++i) {
        if (cover.contains(units_[i].span)) Set(i, CutReason::kPhrase);
      }
      for (int c : children[t]) stack.push_back(c);
    }
  }

  // Runs of cut units and function words within a clause. Function words
  // between two cuts go; a possessive marker right after the last cut goes;
  // a conjunction right after the last cut goes (keeping what precedes);
  // otherwise the leading function words go when the run ends the clause or
  // continues with function words, and a dangling trailing conjunction goes.
  void CleanFunctionWords() {
    const std::size_t n = units_.size();
    std::size_t i = 0;
    while (i < n) {
      if (!IsCut(i) && !IsFunctionWord(units_[i])) {
        ++i;
        continue;
      }
      std::size_t end = i;
      bool any_cut = false;
      while (end < n && (IsCut(end) || IsFunctionWord(units_[end]))) {
        any_cut = any_cut || IsCut(end);
        ++end;
      }
      if (any_cut) CleanRun(i, end);
      i = end;
    }
  }

  void CleanRun(std::size_t begin, std::size_t end) {
    std::size_t first = end;
    std::size_t last = begin;
    for (std::size_t i = begin; i < end; ++i) {
      if (IsCut(i)) {
        first = std::min(first, i);
        last = i;
      }
    }
    for (std::size_t i = first; i < last; ++i) Set(i, CutReason::kFunctionWord);

    std::size_t r = last + 1;
    if (r < end && lexicon::Contains(lexicon::PossessiveMarkers(), units_[r].lower)) {
      Set(r, CutReason::kFunctionWord);
      ++r;
    }
    const bool r_nonempty = r < end;
    if (r_nonempty && lexicon::Contains(lexicon::Conjunctions(), units_[r].lower)) {
      Set(r, CutReason::kFunctionWord);
      return;
    }
    const bool clause_end = end == units_.size() || units_[end].punct;
    if (first == begin) return;
    if (r_nonempty || clause_end) {
      for (std::size_t i = begin; i < first; ++i) Set(i, CutReason::kFunctionWord);
      return;
    }
    if (lexicon::Contains(lexicon::Conjunctions(), units_[first - 1].lower)) {
      Set(first - 1, CutReason::kFunctionWord);
    }
  }

  std::vector<std::size_t> Survivors() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < units_.size(); ++i) {
      if (!IsCut(i)) s.push_back(i);
    }
    return s;
  }

  // Repairs next to removals only: separators left at a sentence start or in
  // front of other punctuation, and emptied brackets.
  void RepairPunctuation() {
    for (bool changed = true; changed;) {
      changed = false;
      const auto s = Survivors();
      auto gap_before = [&](std::size_t k) { return k == 0 ? s[0] != 0 : s[k] != s[k - 1] + 1; };
      auto gap_after = [&](std::size_t k) {
        return k + 1 == s.size() ? s[k] + 1 != units_.size() : s[k + 1] != s[k] + 1;
      };
      for (std::size_t k = 0; k < s.size() && !changed; ++k) {
        const Unit& u = units_[s[k]];
        if (!u.punct) continue;
        const bool separator = IsOneOf(u, U",;:");
        const bool at_start = k == 0 || IsTerminal(units_[s[k - 1]]);
        if (separator && at_start && (gap_before(k) || gap_after(k))) {
          Set(s[k], CutReason::kPunct);
          changed = true;
        } else if (separator && k + 1 < s.size() && IsOneOf(units_[s[k + 1]], U",.;:!?)") &&
                   (gap_before(k) || gap_after(k))) {
          Set(s[k], CutReason::kPunct);
          changed = true;
        } else if (separator && k + 1 == s.size() && gap_before(k)) {
          Set(s[k], CutReason::kPunct);
          changed = true;
        } else if (IsOneOf(u, U"(") && k + 1 < s.size() && IsOneOf(units_[s[k + 1]], U")") &&
                   gap_after(k)) {
          Set(s[k], CutReason::kPunct);
          Set(s[k + 1], CutReason::kPunct);
          changed = true;
        }
      }
    }
  }

  EditResult Render() const {
    const auto s = Survivors();
    std::u32string out;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const Unit& u = units_[s[k]];
      if (k == 0) {
        if (s[0] == 0) out.append(text_.substr(0, u.span.start));
      } else if (s[k] == s[k - 1] + 1) {
        const std::size_t gap_start = units_[s[k - 1]].span.end;
        out.append(text_.substr(gap_start, u.span.start - gap_start));
      } else {
        const bool closing = u.punct && IsOneOf(u, U",.;:!?)]}%");
        const bool opening = IsOneOf(units_[s[k - 1]], U"([{");
        if (!closing && !opening) out.push_back(U' ');
      }
      std::u32string piece(text_.substr(u.span.start, u.span.size()));
      const bool new_start = k == 0 || IsTerminal(units_[s[k - 1]]);
      if (options_.cleanup && new_start && !u.sentence_start && !piece.empty()) {
        piece[0] = chars::ToUpperAscii(piece[0]);
      }
      out += piece;
    }
    if (!s.empty() && s.back() + 1 == units_.size()) {
      out.append(text_.substr(units_.back().span.end));
    }

    EditResult result;
    result.original = utf8::Encode(text_);
    result.edited = utf8::Encode(out);
    result.changed = ChangedText(result.original, result.edited);
    result.removed = marked_;
    result.policy = std::string(DeletePolicyName(options_.policy));
    for (std::size_t i = 0; i < units_.size(); ++i) {
      if (!reason_[i]) continue;
      if (!result.cuts.empty() && result.cuts.back().reason == *reason_[i] &&
          i > 0 && reason_[i - 1] == reason_[i]) {
        result.cuts.back().span.end = units_[i].span.end;
      } else {
        result.cuts.push_back({units_[i].span, *reason_[i]});
      }
    }
    return result;
  }

  std::u32string_view text_;
  std::vector<CharSpan> marked_;
  DeleteOptions options_;
  std::vector<CharSpan> parse_spans_;
  std::vector<Unit> units_;
  std::vector<std::optional<CutReason>> reason_;
};

}  // namespace edit_internal

inline EditResult DeleteCorrect(const MarkedText& marked, const DeleteOptions& options = {},
                                std::string_view record_id = {}) {
  const std::u32string text = utf8::Decode(marked.base);
  EditResult result;
  if (marked.removal_spans.empty()) {
    result.original = marked.base;
    result.edited = marked.base;
    result.policy = std::string(DeletePolicyName(options.policy));
  } else {
    std::vector<CharSpan> spans = marked.removal_spans;
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 0; i < spans.size(); ++i) {
      if (spans[i].empty() || spans[i].end > text.size() ||
          (i > 0 && spans[i - 1].overlaps(spans[i]))) {
        throw Error(ErrorCode::kInvalidSpans, "marked spans are empty, overlapping or out of range");
      }
    }
    result = edit_internal::Deleter(text, spans, options).Run();
  }
  result.record_id = std::string(record_id);
  return result;
}

// Serialized input with special tokens, e.g. "at <rm> $28 </rm> a barrel".
inline EditResult DeleteCorrect(std::string_view serialized, const SpecialTokens& tokens,
                                const DeleteOptions& options = {},
                                std::string_view record_id = {}) {
  return DeleteCorrect(StripMarks(serialized, tokens), options, record_id);
}

inline double EditPercent(const std::vector<EditResult>& results) {
  if (results.empty()) throw Error(ErrorCode::kEmptyCorpus, "edit_percent over zero records");
  std::size_t changed = 0;
  for (const auto& r : results) changed += r.changed ? 1 : 0;
  return 100.0 * static_cast<double>(changed) / static_cast<double>(results.size());
}

// ---------------------------------------------------------------------------
// Entity swaps

struct Substitution {
  std::string original;
  std::string replacement;
  EntityType etype = EntityType::kMisc;
  CharSpan span;  // into the original summary
};

struct CandidateSet {
  std::string record_id;
  std::vector<std::string> candidates;                   // [0] is the original
  std::vector<std::vector<Substitution>> substitutions;  // parallel to candidates
  std::vector<EntityMention> without_options;            // flagged, nothing to swap in
  std::size_t total = 1;  // candidates before the cap
};

// Per flagged mention the options are the distinct same-typed source surfaces
// other than its own, in source order. Candidates follow the Cartesian
// product in odometer order with the first mention most significant.
inline CandidateSet EnumerateSwaps(std::string_view summary, std::vector<EntityMention> flagged,
                                   const std::vector<EntityMention>& source_mentions,
                                   std::size_t cap = 64, std::string_view record_id = {}) {
  if (cap < 1) throw Error(ErrorCode::kInvalidArgument, "swap cap must be at least 1");
  const std::u32string text = utf8::Decode(summary);
  ValidateMentions(text, &flagged);

  CandidateSet set;
  set.record_id = std::string(record_id);
  set.candidates.push_back(std::string(summary));
  set.substitutions.emplace_back();

  std::vector<std::size_t> swappable;
  std::vector<std::vector<std::string>> options(flagged.size());
  for (std::size_t i = 0; i < flagged.size(); ++i) {
    std::set<std::string> seen;
    for (const auto& m : source_mentions) {
      if (m.etype != flagged[i].etype || m.surface == flagged[i].surface) continue;
      if (seen.insert(m.surface).second) options[i].push_back(m.surface);
    }
    if (options[i].empty()) {
      set.without_options.push_back(flagged[i]);
    } else {
      swappable.push_back(i);
    }
  }
  if (swappable.empty()) return set;

  constexpr std::size_t kMax = static_cast<std::size_t>(-1);
  std::size_t product = 1;
  for (std::size_t i : swappable) {
    const std::size_t size = options[i].size();
    product = product > kMax / size ? kMax : product * size;
  }
  set.total = product == kMax ? kMax : 1 + product;

  std::vector<std::size_t> digit(swappable.size(), 0);
  while (set.candidates.size() < cap) {
    std::vector<Substitution> subs;
    std::string out;
    std::size_t pos = 0;
    for (std::size_t d = 0; d < swappable.size(); ++d) {
      const EntityMention& m = flagged[swappable[d]];
      const std::string& replacement = options[swappable[d]][digit[d]];
      out += Slice(text, {pos, m.span.start});
      out += replacement;
      pos = m.span.end;
      subs.push_back({m.surface, replacement, m.etype, m.span});
    }
    out += Slice(text, {pos, text.size()});
    set.candidates.push_back(std::move(out));
    set.substitutions.push_back(std::move(subs));

    std::size_t d = swappable.size();
    while (d > 0) {
      --d;
      if (++digit[d] < options[swappable[d]].size()) break;
      digit[d] = 0;
      if (d == 0) return set;
    }
  }
  return set;
}

// Candidate indices ordered by entity precision against the source, highest
// first; ties keep enumeration order.
inline std::vector<std::size_t> RankByEntityPrecision(const CandidateSet& set,
                                                      std::string_view source,
                                                      const EntityExtractor& extractor,
                                                      const MatcherConfig& matcher = {}) {
  std::vector<double> score;
  for (const auto& c : set.candidates) {
    score.push_back(EntityPrecision(c, source, extractor, matcher));
  }
  std::vector<std::size_t> order(set.candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&score](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  return order;
}

}  // namespace factedit
