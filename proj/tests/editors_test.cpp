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

#include "factedit/editors.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

namespace factedit {
namespace {

const char kMarkedOil[] =
    "Wall Street markets closed lower on the <rm> last trading day of 2015 </rm> as oil prices "
    "languished at <rm> $28 </rm> a barrel for much of the year.";

std::string Edit(const std::string& serialized, DeletePolicy policy, bool cleanup = true) {
  DeleteOptions o;
  o.policy = policy;
  o.cleanup = cleanup;
  return DeleteCorrect(serialized, SpecialTokens{}, o).edited;
}

TEST(DeleteCorrectTest, TableOne) {
  EXPECT_EQ(Edit(kMarkedOil, DeletePolicy::kPhrase),
            "Wall Street markets closed lower as oil prices languished for much of the year.");
  EXPECT_EQ(Edit(kMarkedOil, DeletePolicy::kToken, false),
            "Wall Street markets closed lower on the as oil prices languished at a for much of "
            "the year.");
}

struct Case {
  std::string input;
  std::string token_cleanup;
  std::string phrase;
  std::string token_raw;
};

TEST(DeleteCorrectTest, Examples) {
  const std::vector<Case> cases = {
      {"<rm> Wall Street </rm> markets closed lower.", "Markets closed lower.",
       "Markets closed lower.", "markets closed lower."},
      {"Officials met in <rm> Paris </rm> on Monday.", "Officials met on Monday.",
       "Officials met on Monday.", "Officials met in on Monday."},
      {"He met <rm> John Smith </rm> and Mary in Rome.", "He met Mary in Rome.",
       "He met Mary in Rome.", "He met and Mary in Rome."},
      {"Shares rose <rm> 5% </rm>, analysts said.", "Shares rose, analysts said.",
       "Shares rose, analysts said.", "Shares rose, analysts said."},
      {"<rm> Syria </rm>'s leader spoke.", "Leader spoke.", "Leader spoke.", "'s leader spoke."},
      {"Prices rose on <rm> Monday </rm>.", "Prices rose.", "Prices rose.", "Prices rose on."},
  };
  for (const auto& c : cases) {
    EXPECT_EQ(Edit(c.input, DeletePolicy::kToken), c.token_cleanup) << c.input;
    EXPECT_EQ(Edit(c.input, DeletePolicy::kPhrase), c.phrase) << c.input;
    EXPECT_EQ(Edit(c.input, DeletePolicy::kToken, false), c.token_raw) << c.input;
  }
}

TEST(DeleteCorrectTest, NoSpansIsIdentity) {
  const auto r = DeleteCorrect("Nothing marked here.", SpecialTokens{});
  EXPECT_EQ(r.edited, "Nothing marked here.");
  EXPECT_FALSE(r.changed);
  EXPECT_TRUE(r.removed.empty());
}

TEST(DeleteCorrectTest, ResultMetadata) {
  const auto r = DeleteCorrect("Prices rose on <rm> Monday </rm>.", SpecialTokens{}, {}, "rec-1");
  EXPECT_EQ(r.record_id, "rec-1");
  EXPECT_EQ(r.original, "Prices rose on Monday.");
  EXPECT_TRUE(r.changed);
  EXPECT_EQ(r.policy, "phrase");
  EXPECT_EQ(r.removed, (std::vector<CharSpan>{{15, 21}}));
  ASSERT_EQ(r.cuts.size(), 2u);
  EXPECT_EQ(r.cuts[0].reason, CutReason::kPhrase);
  EXPECT_EQ(r.cuts[1].reason, CutReason::kMarked);
}

TEST(DeleteCorrectTest, RemovesOnlyAllowedText) {
  const auto r = DeleteCorrect(kMarkedOil, SpecialTokens{});
  const std::u32string original = utf8::Decode(r.original);
  for (const auto& cut : r.cuts) {
    if (cut.reason == CutReason::kMarked) {
      EXPECT_TRUE(std::any_of(r.removed.begin(), r.removed.end(),
                              [&](const CharSpan& s) { return s.contains(cut.span); }));
    }
    EXPECT_LE(cut.span.end, original.size());
  }
}

TEST(DeleteCorrectTest, InvalidSpans) {
  MarkedText bad{"abc", {{1, 5}}, {}};
  EXPECT_THROW(DeleteCorrect(bad), Error);
}

TEST(DeleteCorrectTest, EditPercent) {
  std::vector<EditResult> results(4);
  results[1].changed = true;
  EXPECT_DOUBLE_EQ(EditPercent(results), 25.0);
  EXPECT_THROW(EditPercent(std::vector<EditResult>{}), Error);
}

TEST(PolicyTest, Names) {
  EXPECT_EQ(ParseDeletePolicy("token"), DeletePolicy::kToken);
  EXPECT_EQ(ParseDeletePolicy("phrase"), DeletePolicy::kPhrase);
  EXPECT_FALSE(ParseDeletePolicy("span").has_value());
}

const char kSidecar[] =
    "# id = r1\n"
    "1\tPrices\t2\tnsubj\n"
    "2\trose\t0\tROOT\n"
    "3\tin\t2\tprep\n"
    "4\tlate\t5\tamod\n"
    "5\tMay\t3\tpobj\n"
    "6\t.\t2\tpunct\n"
    "\n"
    "# id = r2\n"
    "1\tHi\t0\tROOT\n";

TEST(ParseSidecarTest, ReadsBlocks) {
  std::istringstream in(kSidecar);
  const auto parses = ReadParseSidecar(in);
  ASSERT_EQ(parses.size(), 2u);
  EXPECT_EQ(parses.at("r1").tokens.size(), 6u);
  EXPECT_EQ(parses.at("r1").tokens[4].label, "pobj");
}

TEST(ParseSidecarTest, RejectsMalformedRows) {
  for (const char* bad : {"1\tx\t0\tROOT\n", "# id = a\n1\tx\t0\n", "# id = a\nz\tx\t0\tROOT\n",
                          "# id = a\n# id = a\n"}) {
    std::istringstream in(bad);
    try {
      ReadParseSidecar(in);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
      EXPECT_GT(e.line(), 0u);
    }
  }
}

TEST(ParseSidecarTest, PhrasePolicyUsesSubtree) {
  std::istringstream in(kSidecar);
  const auto parses = ReadParseSidecar(in);
  DeleteOptions o;
  o.parse = &parses.at("r1");
  // Only "May" is marked; the parse extends the cut over "in late".
  const auto r = DeleteCorrect("Prices rose in late <rm> May </rm>.", SpecialTokens{}, o);
  EXPECT_EQ(r.edited, "Prices rose.");
}

TEST(ParseSidecarTest, AlignmentErrors) {
  DependencyParse p;
  p.tokens = {{1, "Prices", 0, "ROOT"}, {2, "fell", 1, "dep"}};
  EXPECT_EQ(AlignParse(U"Prices fell", p).size(), 2u);
  auto code = [](std::u32string_view text, const DependencyParse& parse) {
    try {
      AlignParse(text, parse);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  EXPECT_EQ(code(U"Prices rose", p), ErrorCode::kParseAlignment);
  EXPECT_EQ(code(U"Prices fell sharply", p), ErrorCode::kParseAlignment);
  DependencyParse self = p;
  self.tokens[1].head = 2;
  EXPECT_EQ(code(U"Prices fell", self), ErrorCode::kParseAlignment);
}

EntityMention At(const std::string& text, const std::string& surface, EntityType type) {
  const std::size_t byte = text.find(surface);
  const std::size_t start = utf8::Length(text.substr(0, byte));
  return {surface, type, {start, start + utf8::Length(surface)}};
}

TEST(SwapTest, CartesianProduct) {
  const std::string s = "Oil hit $28 in Oslo.";
  const std::vector<EntityMention> flagged = {At(s, "$28", EntityType::kMoney),
                                              At(s, "Oslo", EntityType::kLoc)};
  const std::vector<EntityMention> source = {
      {"$37.60", EntityType::kMoney, {0, 1}}, {"Paris", EntityType::kLoc, {0, 1}},
      {"$41", EntityType::kMoney, {0, 1}},    {"London", EntityType::kLoc, {0, 1}},
      {"Paris", EntityType::kLoc, {0, 1}},    {"Berlin", EntityType::kLoc, {0, 1}},
      {"2015", EntityType::kDate, {0, 1}}};
  const auto set = EnumerateSwaps(s, flagged, source, 64, "r");
  EXPECT_EQ(set.record_id, "r");
  EXPECT_EQ(set.total, 7u);
  EXPECT_EQ(set.candidates,
            (std::vector<std::string>{s, "Oil hit $37.60 in Paris.", "Oil hit $37.60 in London.",
                                      "Oil hit $37.60 in Berlin.", "Oil hit $41 in Paris.",
                                      "Oil hit $41 in London.", "Oil hit $41 in Berlin."}));
  ASSERT_EQ(set.substitutions.size(), 7u);
  EXPECT_TRUE(set.substitutions[0].empty());
  EXPECT_EQ(set.substitutions[6][1].replacement, "Berlin");
  EXPECT_EQ(set.substitutions[6][1].etype, EntityType::kLoc);
}

TEST(SwapTest, CapAndMissingOptions) {
  const std::string s = "Oil hit $28 on Friday.";
  const std::vector<EntityMention> flagged = {At(s, "$28", EntityType::kMoney),
                                              At(s, "Friday", EntityType::kDate)};
  const std::vector<EntityMention> source = {{"$1", EntityType::kMoney, {0, 1}},
                                             {"$2", EntityType::kMoney, {0, 1}},
                                             {"$3", EntityType::kMoney, {0, 1}}};
  const auto set = EnumerateSwaps(s, flagged, source, 2);
  EXPECT_EQ(set.total, 4u);
  EXPECT_EQ(set.candidates, (std::vector<std::string>{s, "Oil hit $1 on Friday."}));
  ASSERT_EQ(set.without_options.size(), 1u);
  EXPECT_EQ(set.without_options[0].surface, "Friday");
  EXPECT_THROW(EnumerateSwaps(s, flagged, source, 0), Error);
}

TEST(SwapTest, NoOptionsYieldsOriginalOnly) {
  const std::string s = "Oil hit $28.";
  const auto set = EnumerateSwaps(s, {At(s, "$28", EntityType::kMoney)}, {});
  EXPECT_EQ(set.candidates, (std::vector<std::string>{s}));
  EXPECT_EQ(set.total, 1u);
}

TEST(SwapTest, RankByEntityPrecision) {
  const std::string source = "Brent crude was at $37.60 in London on Monday.";
  const std::string s = "Brent crude was at $28 in London.";
  const std::vector<EntityMention> flagged = {At(s, "$28", EntityType::kMoney)};
  EntityExtractor ex;
  const auto set = EnumerateSwaps(s, flagged, ex.Extract(std::string_view(source)));
  ASSERT_EQ(set.candidates.size(), 2u);
  const auto order = RankByEntityPrecision(set, source, ex);
  EXPECT_EQ(order, (std::vector<std::size_t>{1, 0}));
}

}  // namespace
}  // namespace factedit
