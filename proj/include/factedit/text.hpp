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

// Tokenization, normalization and span bookkeeping. All offsets handed out by
// this library are Unicode scalar-value indices into the decoded text, never
// byte offsets.

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "factedit/error.hpp"

namespace factedit {

// Half-open [start, end) range of code points.
struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool empty() const { return end <= start; }
  bool overlaps(const CharSpan& other) const {
    return start < other.end && other.start < end;
  }
  bool contains(const CharSpan& other) const {
    return start <= other.start && other.end <= end;
  }
  auto operator<=>(const CharSpan&) const = default;
};

namespace utf8 {

// Strict decoder. Malformed sequences, surrogates and overlong forms raise
// InvalidArgument.
inline std::u32string Decode(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  auto fail = [&](const char* what) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("invalid UTF-8 (") + what + ") at byte " +
                    std::to_string(i));
  };
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    std::size_t extra = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
      extra = 1, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      extra = 2, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      extra = 3, cp = b0 & 0x07, min = 0x10000;
    } else {
      fail("bad lead byte");
    }
    if (i + extra >= n) fail("truncated sequence");
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto b = static_cast<unsigned char>(bytes[i + k]);
      if ((b & 0xC0) != 0x80) fail("bad continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min) fail("overlong form");
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("not a scalar");
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

inline void AppendEncoded(char32_t cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string Encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) AppendEncoded(cp, &out);
  return out;
}

inline std::size_t Length(std::string_view bytes) { return Decode(bytes).size(); }

}  // namespace utf8

namespace chars {

inline bool IsSpace(char32_t c) {
  switch (c) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\f': case U'\v':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

inline bool IsDigit(char32_t c) { return c >= U'0' && c <= U'9'; }

inline bool IsCurrency(char32_t c) {
  return c == U'$' || c == 0xA2 || c == 0xA3 || c == 0xA5 || c == 0x20AC ||
         c == 0x20B9 || c == 0x20A9;
}

inline bool IsPunct(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  if (IsCurrency(c)) return true;
  switch (c) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB:
    case 0xBF: case 0x2039: case 0x203A:
      return true;
    default:
      break;
  }
  return (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) ||
         (c >= 0x3001 && c <= 0x3003) || (c >= 0x300C && c <= 0x300F);
}

// Simple one-to-one lowercase mapping over Latin, Greek and Cyrillic. Every
// image lies outside the mapped domain, which makes casefolding idempotent.
inline char32_t ToLower(char32_t c) {
  if (c < 0x80) return (c >= U'A' && c <= U'Z') ? c + 32 : c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  if (c >= 0x100 && c <= 0x17F) {
    const bool even_upper = (c <= 0x137) || (c >= 0x14A && c <= 0x177);
    const bool odd_upper = (c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E);
    if (even_upper && c % 2 == 0) return c + 1;
    if (odd_upper && c % 2 == 1) return c + 1;
    return c;
  }
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 32;
  if (c >= 0x410 && c <= 0x42F) return c + 32;
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  return c;
}

inline char32_t ToUpperAscii(char32_t c) {
  return (c >= U'a' && c <= U'z') ? c - 32 : c;
}

inline bool IsUpper(char32_t c) { return ToLower(c) != c; }

inline bool IsAsciiAlpha(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
}

// Anything that is neither whitespace, punctuation nor a digit counts as a
// letter for tokenization purposes.
inline bool IsLetter(char32_t c) {
  return !IsSpace(c) && !IsPunct(c) && !IsDigit(c) && c >= 0x41;
}

}  // namespace chars

// Thin helpers over decoded text.
inline std::string Slice(std::u32string_view text, CharSpan span) {
  return utf8::Encode(text.substr(span.start, span.size()));
}

inline std::u32string Lowercase(std::u32string_view text) {
  std::u32string out(text);
  for (auto& c : out) c = chars::ToLower(c);
  return out;
}

// Collapses whitespace runs to a single space and trims both ends.
inline std::string CollapseWhitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t c : utf8::Decode(text)) {
    if (chars::IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    utf8::AppendEncoded(c, &out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tokenizer

struct TokenSpan {
  std::string surface;
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  CharSpan span() const { return {char_start, char_end}; }
  bool operator==(const TokenSpan&) const = default;
};

using TokenizedText = std::vector<TokenSpan>;

namespace internal {

inline bool IsAbbreviation(std::u32string_view word) {
  static constexpr std::u32string_view kAbbreviations[] = {
      U"Mr",  U"Mrs", U"Ms",  U"Dr",   U"Prof", U"St",  U"Jr",  U"Sr",
      U"Inc", U"Ltd", U"Co",  U"Corp", U"vs",   U"etc", U"Gen", U"Sen",
      U"Rep", U"Gov", U"Lt",  U"Col",  U"Capt", U"Sgt", U"No",  U"Jan",
      U"Feb", U"Mar", U"Apr", U"Jun",  U"Jul",  U"Aug", U"Sep", U"Sept",
      U"Oct", U"Nov", U"Dec", U"Mt",   U"Ft"};
  for (auto a : kAbbreviations) {
    if (word == a) return true;
  }
  // Dotted initialisms such as "U.S" or "p.m".
  if (word.size() >= 3 && word.find(U'.') != std::u32string_view::npos) {
    for (std::size_t i = 0; i < word.size(); ++i) {
      const bool want_letter = (i % 2 == 0);
      if (want_letter ? !chars::IsLetter(word[i]) : word[i] != U'.') return false;
    }
    return true;
  }
  return false;
}

}  // namespace internal

// Rule-based tokenizer over decoded text. Splits on whitespace, then peels
// punctuation off both ends of each chunk. Currency+number ("$37.60"),
// number+percent ("3%"), abbreviations ("Mr.", "U.S.") and anything internal
// (decimals, hyphens, apostrophes) stay inside the token.
inline std::vector<CharSpan> TokenizeSpans(std::u32string_view text) {
  std::vector<CharSpan> tokens;
  std::vector<CharSpan> trailing;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && chars::IsSpace(text[i])) ++i;
    if (i >= n) break;
    std::size_t b = i;
    while (b < n && !chars::IsSpace(text[b])) ++b;
    std::size_t s = i;
    std::size_t e = b;
    while (s < e && chars::IsPunct(text[s])) {
      if (chars::IsCurrency(text[s]) && s + 1 < e && chars::IsDigit(text[s + 1])) break;
      tokens.push_back({s, s + 1});
      ++s;
    }
    trailing.clear();
    while (e > s && chars::IsPunct(text[e - 1])) {
      const char32_t c = text[e - 1];
      if (c == U'%' && e - 1 > s && chars::IsDigit(text[e - 2])) break;
      if (c == U'.' && e - 1 > s &&
          internal::IsAbbreviation(text.substr(s, e - 1 - s))) {
        break;
      }
      trailing.push_back({e - 1, e});
      --e;
    }
    if (s < e) tokens.push_back({s, e});
    tokens.insert(tokens.end(), trailing.rbegin(), trailing.rend());
    i = b;
  }
  return tokens;
}

inline TokenizedText Tokenize(std::string_view text) {
  const std::u32string decoded = utf8::Decode(text);
  TokenizedText out;
  for (const CharSpan& span : TokenizeSpans(decoded)) {
    out.push_back({Slice(decoded, span), span.start, span.end});
  }
  return out;
}

// True when every code point of the token is punctuation.
inline bool IsPunctToken(std::u32string_view token) {
  return !token.empty() &&
         std::all_of(token.begin(), token.end(), [](char32_t c) { return chars::IsPunct(c); });
}

// ---------------------------------------------------------------------------
// Normalization and matching

enum class NormalizationMode { kNone, kCasefold, kCasefoldStripPunct };

inline std::u32string Normalize(std::u32string_view text, NormalizationMode mode) {
  if (mode == NormalizationMode::kNone) return std::u32string(text);
  std::u32string out = Lowercase(text);
  if (mode == NormalizationMode::kCasefoldStripPunct) {
    auto strip = [](char32_t c) { return chars::IsPunct(c) || chars::IsSpace(c); };
    std::size_t s = 0;
    std::size_t e = out.size();
    while (s < e && strip(out[s])) ++s;
    while (e > s && strip(out[e - 1])) --e;
    out = out.substr(s, e - s);
  }
  return out;
}

inline std::string Normalize(std::string_view text, NormalizationMode mode) {
  if (mode == NormalizationMode::kNone) return std::string(text);
  return utf8::Encode(Normalize(utf8::Decode(text), mode));
}

enum class MatchScope { kSourceText, kSourceEntitySurfaces };

struct MatcherConfig {
  NormalizationMode mode = NormalizationMode::kNone;
  MatchScope scope = MatchScope::kSourceText;
};

// All non-overlapping occurrences of `needle`, leftmost-greedy, after both
// sides are normalized under `mode`. Offsets index the original haystack;
// casefolding is one-to-one per code point so no remapping is needed.
inline std::vector<CharSpan> Locate(std::u32string_view haystack,
                                    std::u32string_view needle,
                                    NormalizationMode mode) {
  if (needle.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "locate: empty needle");
  }
  const std::u32string pattern = Normalize(needle, mode);
  std::vector<CharSpan> found;
  if (pattern.empty()) return found;
  const std::u32string folded =
      mode == NormalizationMode::kNone ? std::u32string(haystack) : Lowercase(haystack);
  std::size_t from = 0;
  while (from + pattern.size() <= folded.size()) {
    const std::size_t pos = folded.find(pattern, from);
    if (pos == std::u32string::npos) break;
    found.push_back({pos, pos + pattern.size()});
    from = pos + pattern.size();
  }
  return found;
}

inline std::vector<CharSpan> Locate(std::string_view haystack, std::string_view needle,
                                    const MatcherConfig& matcher) {
  return Locate(utf8::Decode(haystack), utf8::Decode(needle), matcher.mode);
}

inline bool Occurs(std::u32string_view haystack, std::u32string_view needle,
                   NormalizationMode mode) {
  if (needle.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "locate: empty needle");
  }
  const std::u32string pattern = Normalize(needle, mode);
  if (pattern.empty()) return false;
  if (mode == NormalizationMode::kNone) {
    return haystack.find(pattern) != std::u32string_view::npos;
  }
  return Lowercase(haystack).find(pattern) != std::u32string::npos;
}

// Sentence ranges: split after '.', '!' or '?' when followed by whitespace.
inline std::vector<CharSpan> SplitSentences(std::u32string_view text) {
  std::vector<CharSpan> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char32_t c = text[i];
    if ((c == U'.' || c == U'!' || c == U'?') && i + 1 < text.size() &&
        chars::IsSpace(text[i + 1])) {
      out.push_back({start, i + 1});
      start = i + 1;
    }
  }
  if (start < text.size()) out.push_back({start, text.size()});
  return out;
}

}  // namespace factedit
