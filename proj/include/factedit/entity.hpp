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

// Named-entity extraction and grounding.
//
// The rule backend recognizes:
//   MONEY     currency+number tokens ("$37.60", "$5m"), optionally followed by
//             a scale word, and numbers followed by a currency word
//   PERCENT   "3%", "3.5 percent", "five per cent"
//   DATE      years 1000-2100, decades ("1990s"), month/day/year combinations,
//             weekdays, and numbers followed by a calendar unit ("three years")
//   TIME      "10:30", "5pm", "10:30 GMT", numbers followed by hours/minutes
//   ORDINAL   "3rd", "first" ... "tenth"
//   CARDINAL  remaining number runs ("33", "5 million", "twenty five")
//   PERSON, ORG, LOC, MISC
//             maximal capitalized spans, typed by honorifics, suffix and
//             prefix cues, the built-in lexicon, and finally by shape
//
// User gazetteers take precedence over every rule and are matched
// longest-first on token sequences.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "factedit/error.hpp"
#include "factedit/lexicon.hpp"
#include "factedit/text.hpp"

namespace factedit {

enum class EntityType {
  kPerson,
  kOrg,
  kLoc,
  kDate,
  kTime,
  kMoney,
  kPercent,
  kCardinal,
  kOrdinal,
  kMisc,
};

inline constexpr EntityType kAllEntityTypes[] = {
    EntityType::kPerson, EntityType::kOrg,     EntityType::kLoc,
    EntityType::kDate,   EntityType::kTime,    EntityType::kMoney,
    EntityType::kPercent, EntityType::kCardinal, EntityType::kOrdinal,
    EntityType::kMisc};

inline std::string_view EntityTypeName(EntityType type) {
  switch (type) {
    case EntityType::kPerson: return "PERSON";
    case EntityType::kOrg: return "ORG";
    case EntityType::kLoc: return "LOC";
    case EntityType::kDate: return "DATE";
    case EntityType::kTime: return "TIME";
    case EntityType::kMoney: return "MONEY";
    case EntityType::kPercent: return "PERCENT";
    case EntityType::kCardinal: return "CARDINAL";
    case EntityType::kOrdinal: return "ORDINAL";
    case EntityType::kMisc: return "MISC";
  }
  return "MISC";
}

inline std::optional<EntityType> ParseEntityType(std::string_view name) {
  for (EntityType t : kAllEntityTypes) {
    if (EntityTypeName(t) == name) return t;
  }
  return std::nullopt;
}

struct EntityMention {
  std::string surface;
  EntityType etype = EntityType::kMisc;
  CharSpan span;

  bool operator==(const EntityMention&) const = default;
};

// Sorts by span and rejects overlaps or spans that disagree with `host`.
inline void ValidateMentions(std::u32string_view host, std::vector<EntityMention>* mentions) {
  std::sort(mentions->begin(), mentions->end(),
            [](const EntityMention& a, const EntityMention& b) { return a.span < b.span; });
  for (std::size_t i = 0; i < mentions->size(); ++i) {
    const EntityMention& m = (*mentions)[i];
    if (m.span.empty() || m.span.end > host.size()) {
      throw Error(ErrorCode::kInvalidSpans,
                  "mention '" + m.surface + "' has span [" + std::to_string(m.span.start) +
                      "," + std::to_string(m.span.end) + ") outside its text");
    }
    if (Slice(host, m.span) != m.surface) {
      throw Error(ErrorCode::kInvalidSpans,
                  "mention surface '" + m.surface + "' does not match its span");
    }
    if (i > 0 && (*mentions)[i - 1].span.overlaps(m.span)) {
      throw Error(ErrorCode::kInvalidSpans, "overlapping mentions '" +
                                                (*mentions)[i - 1].surface + "' and '" +
                                                m.surface + "'");
    }
  }
}

// ---------------------------------------------------------------------------
// Gazetteer

class Gazetteer {
 public:
  void Add(EntityType type, std::string_view surface) {
    const std::u32string text = utf8::Decode(surface);
    const auto tokens = TokenizeSpans(text);
    if (tokens.empty()) return;
    entries_[Key(text, tokens, 0, tokens.size())] = type;
    max_tokens_ = std::max(max_tokens_, tokens.size());
  }

  // Loads every "<TYPE>.txt" (any case) in `dir`; one surface per line.
  static Gazetteer LoadDirectory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
      throw Error(ErrorCode::kIo, "gazetteer directory not found: " + dir.string());
    }
    Gazetteer gazetteer;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::string stem = file.stem().string();
      std::transform(stem.begin(), stem.end(), stem.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
      const auto type = ParseEntityType(stem);
      if (!type) {
        throw Error(ErrorCode::kInvalidArgument,
                    "gazetteer file name is not an entity type: " + file.string());
      }
      std::ifstream in(file);
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) gazetteer.Add(*type, line);
      }
    }
    return gazetteer;
  }

  struct Match {
    std::size_t tokens = 0;
    EntityType type = EntityType::kMisc;
  };

  std::optional<Match> LongestMatch(std::u32string_view text,
                                    const std::vector<CharSpan>& tokens,
                                    std::size_t at) const {
    if (entries_.empty()) return std::nullopt;
    const std::size_t limit = std::min(max_tokens_, tokens.size() - at);
    for (std::size_t len = limit; len >= 1; --len) {
      auto it = entries_.find(Key(text, tokens, at, at + len));
      if (it != entries_.end()) return Match{len, it->second};
    }
    return std::nullopt;
  }

  std::size_t size() const { return entries_.size(); }

 private:
  static std::u32string Key(std::u32string_view text, const std::vector<CharSpan>& tokens,
                            std::size_t begin, std::size_t end) {
    std::u32string key;
    for (std::size_t i = begin; i < end; ++i) {
      if (i > begin) key.push_back(U' ');
      key.append(text.substr(tokens[i].start, tokens[i].size()));
    }
    return key;
  }

  std::map<std::u32string, EntityType> entries_;
  std::size_t max_tokens_ = 0;
};

// ---------------------------------------------------------------------------
// Rule recognizer

namespace internal {

inline bool IsNumberToken(std::u32string_view t) {
  if (t.empty() || !chars::IsDigit(t.front()) || !chars::IsDigit(t.back())) return false;
  bool seen_dot = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const char32_t c = t[i];
    if (chars::IsDigit(c)) continue;
    if (c == U',' && !seen_dot && chars::IsDigit(t[i + 1])) continue;
    if (c == U'.' && !seen_dot) {
      seen_dot = true;
      continue;
    }
    return false;
  }
  return true;
}

inline bool AllDigits(std::u32string_view t) {
  return !t.empty() && std::all_of(t.begin(), t.end(), chars::IsDigit);
}

inline long SmallValue(std::u32string_view digits) {
  long v = 0;
  for (char32_t c : digits) v = v * 10 + static_cast<long>(c - U'0');
  return v;
}

inline bool IsYear(std::u32string_view t) {
  if (t.size() == 5 && t.back() == U's') t.remove_suffix(1);  // decades
  if (t.size() != 4 || !AllDigits(t)) return false;
  const long v = SmallValue(t);
  return v >= 1000 && v <= 2100;
}

inline bool HasOrdinalSuffix(std::u32string_view t, std::u32string_view* digits) {
  if (t.size() < 3) return false;
  const std::u32string suffix = Lowercase(t.substr(t.size() - 2));
  if (suffix != U"st" && suffix != U"nd" && suffix != U"rd" && suffix != U"th") return false;
  const auto head = t.substr(0, t.size() - 2);
  if (!AllDigits(head)) return false;
  if (digits) *digits = head;
  return true;
}

inline bool IsDayNumber(std::u32string_view t) {
  std::u32string_view digits = t;
  if (!AllDigits(t) && !HasOrdinalSuffix(t, &digits)) return false;
  if (digits.size() > 2) return false;
  const long v = SmallValue(digits);
  return v >= 1 && v <= 31;
}

// "$37.60", "£5m", "$2bn".
inline bool IsCurrencyAmount(std::u32string_view t) {
  if (t.size() < 2 || !chars::IsCurrency(t.front())) return false;
  auto rest = t.substr(1);
  for (std::u32string_view suffix : {std::u32string_view(U"bn"), std::u32string_view(U"m"),
                                     std::u32string_view(U"k"), std::u32string_view(U"million"),
                                     std::u32string_view(U"billion")}) {
    if (rest.size() > suffix.size() && rest.substr(rest.size() - suffix.size()) == suffix) {
      rest.remove_suffix(suffix.size());
      break;
    }
  }
  return IsNumberToken(rest);
}

inline bool IsPercentToken(std::u32string_view t) {
  return t.size() >= 2 && t.back() == U'%' && IsNumberToken(t.substr(0, t.size() - 1));
}

inline bool IsClockTime(std::u32string_view t) {
  const std::size_t colon = t.find(U':');
  if (colon != std::u32string_view::npos) {
    auto hh = t.substr(0, colon);
    auto mm = t.substr(colon + 1);
    std::u32string tail;
    while (!mm.empty() && !chars::IsDigit(mm.back())) {
      tail.insert(tail.begin(), chars::ToLower(mm.back()));
      mm.remove_suffix(1);
    }
    return hh.size() >= 1 && hh.size() <= 2 && AllDigits(hh) && mm.size() == 2 &&
           AllDigits(mm) && (tail.empty() || tail == U"am" || tail == U"pm");
  }
  if (t.size() >= 3 && t.size() <= 4) {
    const std::u32string tail = Lowercase(t.substr(t.size() - 2));
    return (tail == U"am" || tail == U"pm") && AllDigits(t.substr(0, t.size() - 2));
  }
  return false;
}

inline bool IsCapitalized(std::u32string_view t) {
  return !t.empty() && chars::IsUpper(t.front());
}

inline bool IsAcronym(std::u32string_view t) {
  std::size_t letters = 0;
  for (char32_t c : t) {
    if (chars::IsLetter(c)) {
      if (!chars::IsUpper(c)) return false;
      ++letters;
    } else if (c != U'.' && c != U'&') {
      return false;
    }
  }
  return letters >= 2;
}

inline bool IsTitleWord(std::u32string_view t) {
  if (!IsCapitalized(t)) return false;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const char32_t c = t[i];
    if (!chars::IsLetter(c) && c != U'-' && c != U'\'' && c != 0x2019) return false;
  }
  return true;
}

inline std::size_t PossessiveSuffixLength(std::u32string_view t) {
  for (std::u32string_view suffix : {std::u32string_view(U"'s"), std::u32string_view(U"’s")}) {
    if (t.size() > suffix.size() && t.substr(t.size() - suffix.size()) == suffix) {
      return suffix.size();
    }
  }
  if (t.size() > 1 && (t.back() == U'\'' || t.back() == 0x2019)) return 1;
  return 0;
}

struct Token {
  std::u32string_view text;
  std::u32string lower;
  CharSpan span;
  bool punct = false;
  bool sentence_start = false;
};

struct Hit {
  std::size_t begin = 0;  // token index
  std::size_t end = 0;    // token index, exclusive
  EntityType type = EntityType::kMisc;
  bool trim_possessive = false;
};

class RuleMatcher {
 public:
  RuleMatcher(std::u32string_view text, const std::vector<CharSpan>& spans) {
    tokens_.reserve(spans.size());
    bool at_start = true;
    for (const CharSpan& s : spans) {
      Token tok;
      tok.text = text.substr(s.start, s.size());
      tok.lower = Lowercase(tok.text);
      tok.span = s;
      tok.punct = IsPunctToken(tok.text);
      tok.sentence_start = at_start;
      if (tok.punct) {
        const char32_t c = tok.text.front();
        if (c == U'.' || c == U'!' || c == U'?' || c == 0x2026) {
          at_start = true;
        } else if (c != U'"' && c != U'\'' && c != 0x201C && c != 0x2018 && c != U'(') {
          at_start = false;
        }
      } else {
        at_start = false;
      }
      tokens_.push_back(std::move(tok));
    }
  }

  std::size_t size() const { return tokens_.size(); }
  const Token& at(std::size_t i) const { return tokens_[i]; }

  std::optional<Hit> MatchDate(std::size_t i) const {
    using lexicon::Contains;
    const auto is_month = [&](std::size_t k) {
      return k < size() && Contains(lexicon::Months(), tokens_[k].text);
    };
    const auto is_day = [&](std::size_t k) {
      return k < size() && IsDayNumber(tokens_[k].text);
    };
    const auto is_year = [&](std::size_t k) {
      return k < size() && IsYear(tokens_[k].text);
    };
    if (Contains(lexicon::Weekdays(), tokens_[i].text)) {
      return Hit{i, i + 1, EntityType::kDate};
    }
    if (is_month(i)) {
      std::size_t j = i + 1;
      if (is_day(j)) {
        ++j;
        if (j + 1 < size() && tokens_[j].text == U"," && is_year(j + 1)) {
          j += 2;
        } else if (is_year(j)) {
          ++j;
        }
      } else if (is_year(j)) {
        ++j;
      }
      return Hit{i, j, EntityType::kDate};
    }
    if (is_day(i) && is_month(i + 1)) {
      std::size_t j = i + 2;
      if (is_year(j)) ++j;
      return Hit{i, j, EntityType::kDate};
    }
    return std::nullopt;
  }

  std::optional<Hit> MatchNumeric(std::size_t i) const {
    using lexicon::Contains;
    const auto& t = tokens_[i];
    const auto next_lower = [&](std::size_t k) -> std::u32string_view {
      return k < size() ? std::u32string_view(tokens_[k].lower) : std::u32string_view();
    };
    if (IsCurrencyAmount(t.text)) {
      std::size_t j = i + 1;
      if (Contains(lexicon::ScaleWords(), next_lower(j))) ++j;
      return Hit{i, j, EntityType::kMoney};
    }
    if (IsPercentToken(t.text)) return Hit{i, i + 1, EntityType::kPercent};
    if (IsClockTime(t.text)) {
      std::size_t j = i + 1;
      while (j < size() && j < i + 3 && Contains(lexicon::Meridiems(), tokens_[j].text)) ++j;
      return Hit{i, j, EntityType::kTime};
    }
    if (HasOrdinalSuffix(t.text, nullptr) || Contains(lexicon::OrdinalWords(), t.text)) {
      return Hit{i, i + 1, EntityType::kOrdinal};
    }
    if (IsYear(t.text)) return Hit{i, i + 1, EntityType::kDate};

    const auto is_number_part = [&](std::size_t k, bool first) {
      if (k >= size()) return false;
      const auto& tok = tokens_[k];
      if (IsNumberToken(tok.text)) return true;
      if (Contains(lexicon::NumberWords(), tok.text)) return true;
      return !first && Contains(lexicon::ScaleWords(), tok.lower) && tok.lower != U"m" &&
             tok.lower != U"bn" && tok.lower != U"k";
    };
    if (!is_number_part(i, true)) return std::nullopt;
    std::size_t j = i + 1;
    while (is_number_part(j, false)) ++j;
    const auto unit = next_lower(j);
    if (unit == U"percent") return Hit{i, j + 1, EntityType::kPercent};
    if (unit == U"per" && next_lower(j + 1) == U"cent") return Hit{i, j + 2, EntityType::kPercent};
    if (Contains(lexicon::CurrencyWords(), unit)) return Hit{i, j + 1, EntityType::kMoney};
    if (Contains(lexicon::DateUnits(), unit)) return Hit{i, j + 1, EntityType::kDate};
    if (Contains(lexicon::TimeUnits(), unit)) return Hit{i, j + 1, EntityType::kTime};
    return Hit{i, j, EntityType::kCardinal};
  }

  std::optional<Hit> MatchCapitalized(std::size_t i) const {
    using lexicon::Contains;
    std::size_t begin = i;
    bool honorific = false;
    if (Contains(lexicon::Honorifics(), tokens_[i].text) && i + 1 < size() &&
        IsTitleWord(tokens_[i + 1].text)) {
      honorific = true;
      begin = i + 1;
    }
    const auto& first = tokens_[begin];
    if (first.punct || !IsCapitalized(first.text)) return std::nullopt;
    if (Contains(lexicon::StopCaps(), first.text)) return std::nullopt;

    const auto extends = [&](std::size_t k) {
      return k < size() && !tokens_[k].punct && IsCapitalized(tokens_[k].text) &&
             !Contains(lexicon::StopCaps(), tokens_[k].text);
    };
    std::size_t end = begin + 1;
    while (PossessiveSuffixLength(tokens_[end - 1].text) == 0) {
      if (extends(end)) {
        ++end;
      } else if (!honorific && end + 1 < size() &&
                 Contains(lexicon::Connectors(), tokens_[end].text) &&
                 extends(end + 1)) {
        end += 2;
      } else {
        break;
      }
    }
    const bool trim = PossessiveSuffixLength(tokens_[end - 1].text) > 0;

    std::u32string surface;
    for (std::size_t k = begin; k < end; ++k) {
      if (k > begin) surface.push_back(U' ');
      surface.append(tokens_[k].text);
    }
    if (trim) surface.resize(surface.size() - PossessiveSuffixLength(tokens_[end - 1].text));

    const std::size_t length = end - begin;
    const auto in_lexicon = LexiconType(surface);
    const bool acronym = length == 1 && IsAcronym(surface);
    if (!honorific && first.sentence_start && length == 1 && !in_lexicon && !acronym) {
      return std::nullopt;
    }

    EntityType type = EntityType::kMisc;
    const std::u32string_view last = tokens_[end - 1].text;
    if (honorific) {
      type = EntityType::kPerson;
    } else if (length > 1 && Contains(lexicon::OrgSuffixes(), last)) {
      type = EntityType::kOrg;
    } else if (length > 1 && (Contains(lexicon::LocPrefixes(), first.text) ||
                              Contains(lexicon::LocSuffixes(), last))) {
      type = EntityType::kLoc;
    } else if (in_lexicon) {
      type = *in_lexicon;
    } else if (acronym) {
      type = EntityType::kOrg;
    } else if (length >= 2 && length <= 3 && AllTitleWords(begin, end)) {
      type = EntityType::kPerson;
    }
    return Hit{begin, end, type, trim};
  }

 private:
  bool AllTitleWords(std::size_t begin, std::size_t end) const {
    for (std::size_t k = begin; k < end; ++k) {
      auto t = tokens_[k].text;
      t.remove_suffix(PossessiveSuffixLength(t));
      if (!IsTitleWord(t)) return false;
    }
    return true;
  }

  static std::optional<EntityType> LexiconType(std::u32string_view surface) {
    using lexicon::Contains;
    if (Contains(lexicon::BuiltinLocations(), surface)) return EntityType::kLoc;
    if (Contains(lexicon::BuiltinOrganizations(), surface)) return EntityType::kOrg;
    if (Contains(lexicon::BuiltinMisc(), surface)) return EntityType::kMisc;
    return std::nullopt;
  }

  std::vector<Token> tokens_;
};

}  // namespace internal

class RuleRecognizer {
 public:
  RuleRecognizer() = default;
  explicit RuleRecognizer(std::shared_ptr<const Gazetteer> gazetteer)
      : gazetteer_(std::move(gazetteer)) {}

  std::vector<EntityMention> Recognize(std::u32string_view text) const {
    const std::vector<CharSpan> spans = TokenizeSpans(text);
    internal::RuleMatcher matcher(text, spans);
    std::vector<EntityMention> out;
    std::size_t i = 0;
    while (i < matcher.size()) {
      if (matcher.at(i).punct) {
        ++i;
        continue;
      }
      std::optional<internal::Hit> hit;
      if (gazetteer_) {
        if (auto g = gazetteer_->LongestMatch(text, spans, i)) {
          hit = internal::Hit{i, i + g->tokens, g->type};
        }
      }
      if (!hit) hit = matcher.MatchDate(i);
      if (!hit) hit = matcher.MatchNumeric(i);
      if (!hit) hit = matcher.MatchCapitalized(i);
      if (!hit) {
        ++i;
        continue;
      }
      CharSpan span{spans[hit->begin].start, spans[hit->end - 1].end};
      if (hit->trim_possessive) {
        span.end -= internal::PossessiveSuffixLength(matcher.at(hit->end - 1).text);
      }
      out.push_back({Slice(text, span), hit->type, span});
      i = hit->end;
    }
    return out;
  }

  std::vector<EntityMention> Recognize(std::string_view text) const {
    return Recognize(std::u32string_view(utf8::Decode(text)));
  }

 private:
  std::shared_ptr<const Gazetteer> gazetteer_;
};

// ---------------------------------------------------------------------------
// Extraction front end

enum class Backend { kRules, kPrecomputed };

// Bundles the configured backend with the shared, read-only recognizer.
class EntityExtractor {
 public:
  EntityExtractor() = default;
  EntityExtractor(Backend backend, std::shared_ptr<const Gazetteer> gazetteer)
      : backend_(backend), recognizer_(std::move(gazetteer)) {}

  Backend backend() const { return backend_; }

  // Precomputed annotations win whenever they are supplied; the rule backend
  // only runs when none are present.
  std::vector<EntityMention> Extract(std::u32string_view text,
                                     const std::vector<EntityMention>* annotation = nullptr) const {
    if (annotation != nullptr) {
      std::vector<EntityMention> mentions = *annotation;
      ValidateMentions(text, &mentions);
      return mentions;
    }
    if (backend_ == Backend::kPrecomputed) {
      throw Error(ErrorCode::kMissingAnnotation,
                  "precomputed backend selected but no entity annotation supplied");
    }
    return recognizer_.Recognize(text);
  }

  std::vector<EntityMention> Extract(std::string_view text,
                                     const std::vector<EntityMention>* annotation = nullptr) const {
    return Extract(std::u32string_view(utf8::Decode(text)), annotation);
  }

 private:
  Backend backend_ = Backend::kRules;
  RuleRecognizer recognizer_;
};

// ---------------------------------------------------------------------------
// Grounding and detection

// A grounding target: the text an entity must be found in, plus its mentions
// when the matcher compares against entity surfaces.
struct GroundingTarget {
  std::u32string text;
  std::vector<EntityMention> mentions;
};

inline GroundingTarget MakeTarget(std::string_view text, const MatcherConfig& matcher,
                                  const EntityExtractor& extractor,
                                  const std::vector<EntityMention>* annotation = nullptr) {
  GroundingTarget target{utf8::Decode(text), {}};
  if (matcher.scope == MatchScope::kSourceEntitySurfaces) {
    target.mentions = extractor.Extract(std::u32string_view(target.text), annotation);
  }
  return target;
}

inline bool IsGrounded(std::string_view surface, const GroundingTarget& target,
                       const MatcherConfig& matcher) {
  const std::u32string needle = utf8::Decode(surface);
  if (matcher.scope == MatchScope::kSourceText) {
    return Occurs(target.text, needle, matcher.mode);
  }
  const std::u32string want = Normalize(needle, matcher.mode);
  return std::any_of(target.mentions.begin(), target.mentions.end(),
                     [&](const EntityMention& m) {
                       return Normalize(utf8::Decode(m.surface), matcher.mode) == want;
                     });
}

// Summary mentions with no occurrence in the source under the matcher.
inline std::vector<EntityMention> DetectExtrinsic(
    std::string_view summary, std::string_view source, const MatcherConfig& matcher,
    const EntityExtractor& extractor,
    const std::vector<EntityMention>* summary_annotation = nullptr,
    const std::vector<EntityMention>* source_annotation = nullptr) {
  const std::vector<EntityMention> mentions = extractor.Extract(summary, summary_annotation);
  if (mentions.empty()) return {};
  const GroundingTarget target = MakeTarget(source, matcher, extractor, source_annotation);
  std::vector<EntityMention> flagged;
  for (const EntityMention& m : mentions) {
    if (!IsGrounded(m.surface, target, matcher)) flagged.push_back(m);
  }
  return flagged;
}

}  // namespace factedit
