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

#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "factedit/entity.hpp"
#include "factedit/error.hpp"
#include "factedit/text.hpp"

namespace factedit {

// Markers wrapped around spans slated for removal. Each marker is separated
// from the wrapped text by a single space: "at <rm> $28 </rm> a barrel".
struct SpecialTokens {
  std::string open = "<rm>";
  std::string close = "</rm>";

  void Validate() const {
    auto has_space = [](std::string_view s) {
      const auto t = utf8::Decode(s);
      return std::any_of(t.begin(), t.end(), chars::IsSpace);
    };
    if (open.empty() || close.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "special tokens must be non-empty");
    }
    if (has_space(open) || has_space(close)) {
      throw Error(ErrorCode::kInvalidArgument, "special tokens must not contain whitespace");
    }
    if (open.find(close) != std::string::npos || close.find(open) != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "special tokens must not contain one another");
    }
  }
};

struct MarkedText {
  std::string base;
  std::vector<CharSpan> removal_spans;
  SpecialTokens tokens;

  std::string Serialize() const {
    const std::u32string text = utf8::Decode(base);
    std::string out;
    std::size_t pos = 0;
    for (const CharSpan& span : removal_spans) {
      out += Slice(text, {pos, span.start});
      out += tokens.open;
      out += ' ';
      out += Slice(text, span);
      out += ' ';
      out += tokens.close;
      pos = span.end;
    }
    out += Slice(text, {pos, text.size()});
    return out;
  }
};

inline MarkedText Mark(std::string_view summary, std::vector<CharSpan> spans,
                       const SpecialTokens& tokens = {}) {
  tokens.Validate();
  if (summary.find(tokens.open) != std::string_view::npos ||
      summary.find(tokens.close) != std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument, "special token already present in text");
  }
  const std::size_t length = utf8::Length(summary);
  std::sort(spans.begin(), spans.end());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].empty() || spans[i].end > length) {
      throw Error(ErrorCode::kInvalidSpans, "span [" + std::to_string(spans[i].start) + "," +
                                                std::to_string(spans[i].end) +
                                                ") is empty or outside the text");
    }
    if (i > 0 && spans[i - 1].overlaps(spans[i])) {
      throw Error(ErrorCode::kInvalidSpans, "overlapping spans");
    }
  }
  return MarkedText{std::string(summary), std::move(spans), tokens};
}

inline MarkedText Mark(std::string_view summary, const std::vector<EntityMention>& flagged,
                       const SpecialTokens& tokens = {}) {
  std::vector<CharSpan> spans;
  spans.reserve(flagged.size());
  for (const auto& m : flagged) spans.push_back(m.span);
  return Mark(summary, std::move(spans), tokens);
}

// Exact inverse of MarkedText::Serialize.
inline MarkedText StripMarks(std::string_view serialized, const SpecialTokens& tokens = {}) {
  tokens.Validate();
  const std::u32string text = utf8::Decode(serialized);
  const std::u32string open = utf8::Decode(tokens.open);
  const std::u32string close = utf8::Decode(tokens.close);
  const std::u32string padded_close = U" " + close;
  const auto npos = std::u32string::npos;

  std::u32string base;
  std::vector<CharSpan> spans;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t o = text.find(open, pos);
    const std::size_t c = text.find(close, pos);
    if (c != npos && (o == npos || c < o)) {
      throw Error(ErrorCode::kMalformedMarkup,
                  "closing token without opening token at " + std::to_string(c));
    }
    if (o == npos) {
      base.append(text, pos, npos);
      break;
    }
    base.append(text, pos, o - pos);
    std::size_t p = o + open.size();
    if (p >= text.size() || text[p] != U' ') {
      throw Error(ErrorCode::kMalformedMarkup,
                  "opening token not followed by a space at " + std::to_string(o));
    }
    ++p;
    const std::size_t e = text.find(padded_close, p);
    if (e == npos) {
      throw Error(ErrorCode::kMalformedMarkup, "unbalanced opening token at " + std::to_string(o));
    }
    const std::size_t nested = text.find(open, p);
    if (nested != npos && nested < e) {
      throw Error(ErrorCode::kMalformedMarkup, "nested opening token at " + std::to_string(nested));
    }
    if (e == p) {
      throw Error(ErrorCode::kMalformedMarkup, "empty marked span at " + std::to_string(o));
    }
    spans.push_back({base.size(), base.size() + (e - p)});
    base.append(text, p, e - p);
    pos = e + padded_close.size();
  }
  return MarkedText{utf8::Encode(base), std::move(spans), tokens};
}

// Replaces every mention with a typed slot such as "[MASK:LOC]".
inline std::string MaskSlots(std::string_view summary, std::vector<EntityMention> mentions) {
  const std::u32string text = utf8::Decode(summary);
  ValidateMentions(text, &mentions);
  std::string out;
  std::size_t pos = 0;
  for (const auto& m : mentions) {
    out += Slice(text, {pos, m.span.start});
    out += "[MASK:";
    out += EntityTypeName(m.etype);
    out += ']';
    pos = m.span.end;
  }
  out += Slice(text, {pos, text.size()});
  return out;
}

}  // namespace factedit
