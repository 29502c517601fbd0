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

// Randomized checks of invariants that hold for every input.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "factedit/factedit.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace factedit {
namespace {

const std::vector<std::string>& Alphabet() {
  static const std::vector<std::string> v = {
      "a", "B", "c", "Z", " ", " ", "  ", "\t", "\n", ".", ",", "'", "-", "$", "%", "3", "7",
      "(", ")", "\"", "\xC3\x89", "\xC3\xA9", "\xC3\x9F", "\xE4\xB8\xAD", "\xF0\x9F\x98\x80",
      "\xE2\x80\x99", "\xE2\x82\xAC", "\xC2\xA0", "Mr.", "U.S.", "<", ">", "/"};
  return v;
}

std::string RandomText(std::mt19937_64& rng, std::size_t max_len) {
  const std::size_t len = rng() % (max_len + 1);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s += Alphabet()[rng() % Alphabet().size()];
  return s;
}

TEST(TokenizeProperty, GapsAreWhitespaceAndSpansSlice) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const std::string text = RandomText(rng, 30);
    const std::u32string d = utf8::Decode(text);
    const auto tokens = Tokenize(text);
    std::u32string rebuilt;
    std::size_t pos = 0;
    for (const auto& t : tokens) {
      ASSERT_LT(t.char_start, t.char_end);
      ASSERT_GE(t.char_start, pos);
      for (std::size_t k = pos; k < t.char_start; ++k) ASSERT_TRUE(chars::IsSpace(d[k])) << text;
      rebuilt.append(d, pos, t.char_start - pos);
      rebuilt += utf8::Decode(t.surface);
      ASSERT_EQ(Slice(d, t.span()), t.surface);
      pos = t.char_end;
    }
    for (std::size_t k = pos; k < d.size(); ++k) ASSERT_TRUE(chars::IsSpace(d[k]));
    rebuilt.append(d, pos, std::u32string::npos);
    ASSERT_EQ(rebuilt, d);
  }
}

TEST(NormalizeProperty, Idempotent) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 2000; ++i) {
    const std::string text = RandomText(rng, 20);
    for (auto mode : {NormalizationMode::kNone, NormalizationMode::kCasefold,
                      NormalizationMode::kCasefoldStripPunct}) {
      const std::string once = Normalize(text, mode);
      ASSERT_EQ(Normalize(once, mode), once);
    }
    ASSERT_EQ(Normalize(text, NormalizationMode::kNone), text);
  }
}

TEST(LocateProperty, MatchesGreedyOracle) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> pieces = {"a", "b", "ab", "aa", " "};
  for (int i = 0; i < 2000; ++i) {
    std::string hay;
    std::string needle;
    for (std::size_t k = rng() % 12; k > 0; --k) hay += pieces[rng() % pieces.size()];
    for (std::size_t k = 1 + rng() % 3; k > 0; --k) needle += pieces[rng() % 4];
    const auto found = Locate(hay, needle, MatcherConfig{});
    std::vector<CharSpan> want;
    for (const auto& [s, e] : oracle::GreedyOccurrences(hay, needle)) want.push_back({s, e});
    ASSERT_EQ(found, want) << hay << " / " << needle;
  }
}

TEST(LocateProperty, SpansNormalizeToNeedle) {
  std::mt19937_64 rng(4);
  const std::vector<std::string> pieces = {"Pa", "pA", "ris", "RIS", ",", " "};
  for (int i = 0; i < 1000; ++i) {
    std::string hay;
    for (std::size_t k = rng() % 10; k > 0; --k) hay += pieces[rng() % pieces.size()];
    const std::u32string d = utf8::Decode(hay);
    for (auto mode : {NormalizationMode::kNone, NormalizationMode::kCasefold,
                      NormalizationMode::kCasefoldStripPunct}) {
      MatcherConfig m;
      m.mode = mode;
      const std::string needle = "Paris,";
      const auto found = Locate(hay, needle, m);
      for (std::size_t k = 0; k < found.size(); ++k) {
        if (k > 0) {
          ASSERT_LE(found[k - 1].end, found[k].start);
        }
        ASSERT_EQ(Normalize(Slice(d, found[k]), mode), Normalize(needle, mode));
      }
    }
  }
}

TEST(MarkupProperty, RoundTripWithCustomTokens) {
  std::mt19937_64 rng(5);
  const SpecialTokens tokens{"[[del]]", "[[/del]]"};
  for (int i = 0; i < 1000; ++i) {
    const std::string text = RandomText(rng, 25);
    const std::size_t n = utf8::Length(text);
    std::vector<CharSpan> spans;
    std::size_t pos = 0;
    while (pos < n && rng() % 3 != 0) {
      const std::size_t start = pos + rng() % (n - pos);
      const std::size_t end = start + 1 + rng() % (n - start);
      spans.push_back({start, end});
      pos = end;
    }
    const auto back = StripMarks(Mark(text, spans, tokens).Serialize(), tokens);
    ASSERT_EQ(back.base, text);
    ASSERT_EQ(back.removal_spans, spans);
  }
}

TEST(MaskProperty, OneSlotPerMention) {
  synth::Generator gen(6);
  EntityExtractor ex;
  for (const auto& r : gen.Corpus(200)) {
    const auto mentions = ex.Extract(std::string_view(r.perturbed));
    const std::string masked = MaskSlots(r.perturbed, mentions);
    ASSERT_EQ(oracle::AllOccurrences(masked, "[MASK:").size(), mentions.size());
  }
}

TEST(DetectProperty, SoundAndComplete) {
  synth::Generator gen(7);
  EntityExtractor ex;
  for (const auto& r : gen.Corpus(300)) {
    const auto mentions = ex.Extract(std::string_view(r.perturbed));
    const auto flagged = DetectExtrinsic(r.perturbed, r.source, MatcherConfig{}, ex);
    std::set<CharSpan> flagged_spans;
    for (const auto& m : flagged) {
      ASSERT_TRUE(Locate(r.source, m.surface, MatcherConfig{}).empty());
      flagged_spans.insert(m.span);
    }
    for (const auto& m : mentions) {
      const bool absent = Locate(r.source, m.surface, MatcherConfig{}).empty();
      ASSERT_EQ(absent, flagged_spans.count(m.span) == 1) << m.surface;
    }
    ASSERT_EQ(EntityPrecision(r.perturbed, r.source, ex) == 100.0, flagged.empty());
    // Every injected entity is caught.
    for (const auto& e : r.injected) {
      ASSERT_TRUE(std::any_of(flagged.begin(), flagged.end(),
                              [&](const EntityMention& m) { return m.surface == e; }))
          << r.id << " misses " << e;
    }
  }
}

TEST(RougeProperty, IdentityRangeAndSymmetry) {
  std::mt19937_64 rng(8);
  const std::vector<std::string> vocab = {"the", "cat", "sat", "on", "mat", "Cat", "."};
  auto text = [&](std::size_t min_len) {
    std::string s;
    for (std::size_t n = min_len + rng() % 10; n > 0; --n) s += vocab[rng() % vocab.size()] + " ";
    return s;
  };
  for (int i = 0; i < 1000; ++i) {
    const std::string a = text(1) + "mat";
    const std::string b = text(0);
    ASSERT_DOUBLE_EQ(RougeN(a, a, 1).f1, 1.0);
    ASSERT_DOUBLE_EQ(RougeL(a, a).f1, 1.0);
    for (int n : {1, 2}) {
      const auto ab = RougeN(a, b, n);
      const auto ba = RougeN(b, a, n);
      ASSERT_DOUBLE_EQ(ab.precision, ba.recall);
      ASSERT_DOUBLE_EQ(ab.recall, ba.precision);
      ASSERT_DOUBLE_EQ(ab.f1, ba.f1);
      for (double v : {ab.precision, ab.recall, ab.f1}) {
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
      }
      if (ab.precision + ab.recall > 0) {
        ASSERT_NEAR(ab.f1, 2 * ab.precision * ab.recall / (ab.precision + ab.recall), 1e-12);
      }
    }
    const auto lab = RougeL(a, b);
    const auto lba = RougeL(b, a);
    ASSERT_DOUBLE_EQ(lab.precision, lba.recall);
    ASSERT_DOUBLE_EQ(lab.recall, lba.precision);
  }
}

TEST(RougeProperty, AgreesWithBruteForce) {
  std::mt19937_64 rng(9);
  const std::vector<std::string> vocab = {"a", "b", "c", "d"};
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::string> h, r;
    for (std::size_t n = rng() % 16; n > 0; --n) h.push_back(vocab[rng() % vocab.size()]);
    for (std::size_t n = rng() % 16; n > 0; --n) r.push_back(vocab[rng() % vocab.size()]);
    std::string hs, rs;
    for (const auto& t : h) hs += t + " ";
    for (const auto& t : r) rs += t + " ";
    for (int n : {1, 2, 3}) {
      const auto got = RougeN(hs, rs, n);
      const auto want = oracle::NGram(h, r, static_cast<std::size_t>(n));
      ASSERT_NEAR(got.precision, want.p, 1e-9);
      ASSERT_NEAR(got.recall, want.r, 1e-9);
      ASSERT_NEAR(got.f1, want.f, 1e-9);
    }
    const auto got = RougeL(hs, rs);
    const auto want = oracle::Lcs(h, r);
    ASSERT_NEAR(got.f1, want.f, 1e-9);
  }
}

TEST(SynthesisProperty, CleanSubsetEqualsFullPrecision) {
  synth::Generator gen(10);
  std::vector<CorpusRecord> records;
  for (const auto& r : gen.Corpus(300)) {
    CorpusRecord c;
    c.id = r.id;
    c.source = r.source;
    c.reference = r.perturbed;
    records.push_back(c);
  }
  EntityExtractor ex;
  for (auto mode : {NormalizationMode::kNone, NormalizationMode::kCasefold}) {
    MatcherConfig m;
    m.mode = mode;
    std::set<std::string> kept;
    for (const auto& r : CleanSubset(records, ex, m)) kept.insert(r.id);
    std::set<std::string> full;
    for (const auto& r : records) {
      if (EntityPrecision(*r.reference, r.source, ex, m) == 100.0) full.insert(r.id);
    }
    ASSERT_EQ(kept, full);
  }
}

TEST(SynthesisProperty, FilterKeepsRatioAndOrder) {
  std::mt19937_64 rng(11);
  std::vector<CompressionPair> pairs;
  for (int i = 0; i < 300; ++i) {
    pairs.push_back({std::to_string(i), RandomText(rng, 20), RandomText(rng, 20)});
  }
  for (double ratio : {0.25, 0.5, 0.75, 1.0}) {
    const auto kept = FilterCompression(pairs, ratio);
    std::size_t cursor = 0;
    for (const auto& p : kept) {
      ASSERT_GE(static_cast<double>(TokenCount(p.compressed)) /
                    static_cast<double>(TokenCount(p.uncompressed)),
                ratio);
      while (cursor < pairs.size() && pairs[cursor].id != p.id) ++cursor;
      ASSERT_LT(cursor, pairs.size()) << "order not preserved";
    }
  }
}

TEST(SynthesisProperty, SampleFrequencyIsUniform) {
  struct Item {
    std::string id;
  };
  std::vector<Item> items;
  for (int i = 0; i < 1000; ++i) items.push_back({std::to_string(100000 + i)});
  std::map<std::string, int> hits;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    for (const auto& it : Sample(items, 100, static_cast<std::uint64_t>(t))) ++hits[it.id];
  }
  ASSERT_EQ(hits.size(), items.size());
  // Binomial(500, 0.1) per item; 5 sigma per item, and a chi-square bound
  // over all items (999 degrees of freedom, 5 sigma above the mean).
  const double expected = 0.1 * trials;
  const double variance = expected * 0.9;
  double chi2 = 0;
  int total = 0;
  for (const auto& [id, n] : hits) {
    EXPECT_LE(std::abs(n - expected), 5 * std::sqrt(variance)) << id;
    chi2 += (n - expected) * (n - expected) / variance;
    total += n;
  }
  EXPECT_EQ(total, 100 * trials);
  EXPECT_LT(chi2, 999 + 5 * std::sqrt(2 * 999.0));
}

TEST(SynthesisProperty, DeterministicGivenSeed) {
  synth::Generator gen(12);
  EntityExtractor ex;
  for (const auto& r : gen.Corpus(50)) {
    CorpusRecord c;
    c.id = r.id;
    c.source = r.source;
    c.reference = r.clean;
    const auto a = MakeInsertionTasks(c, 99, ex);
    const auto b = MakeInsertionTasks(c, 99, ex);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a[i].entities, b[i].entities);
  }
}

// Code points of `s` with whitespace removed and case folded.
std::u32string Skeleton(const std::string& s) {
  std::u32string out;
  for (char32_t c : Lowercase(utf8::Decode(s))) {
    if (!chars::IsSpace(c)) out.push_back(c);
  }
  return out;
}

bool IsSubsequence(const std::u32string& sub, const std::u32string& seq) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < seq.size() && j < sub.size(); ++i) {
    if (seq[i] == sub[j]) ++j;
  }
  return j == sub.size();
}

TEST(EditorProperty, PostDeletionGuaranteeAndRemovalBounds) {
  synth::Generator gen(13);
  EntityExtractor ex;
  for (const auto& r : gen.Corpus(300)) {
    const auto flagged = DetectExtrinsic(r.perturbed, r.source, MatcherConfig{}, ex);
    for (auto policy : {DeletePolicy::kToken, DeletePolicy::kPhrase}) {
      for (bool cleanup : {true, false}) {
        DeleteOptions o;
        o.policy = policy;
        o.cleanup = cleanup;
        const auto result = DeleteCorrect(Mark(r.perturbed, flagged), o, r.id);
        ASSERT_TRUE(DetectExtrinsic(result.edited, r.source, MatcherConfig{}, ex).empty())
            << r.id << ": " << result.edited;
        ASSERT_EQ(result.changed, !flagged.empty());
        ASSERT_TRUE(IsSubsequence(Skeleton(result.edited), Skeleton(r.perturbed)))
            << result.edited;
        // Everything outside the cuts survives.
        std::u32string kept;
        const std::u32string original = utf8::Decode(r.perturbed);
        for (std::size_t k = 0; k < original.size(); ++k) {
          const bool cut = std::any_of(result.cuts.begin(), result.cuts.end(), [&](const Cut& c) {
            return c.span.start <= k && k < c.span.end;
          });
          if (!cut && !chars::IsSpace(original[k])) kept.push_back(chars::ToLower(original[k]));
        }
        ASSERT_EQ(Skeleton(result.edited), kept) << result.edited;
        const auto again = DeleteCorrect(Mark(r.perturbed, flagged), o, r.id);
        ASSERT_EQ(again.edited, result.edited);
      }
    }
  }
}

TEST(EditorProperty, SwapCountFormula) {
  std::mt19937_64 rng(14);
  const std::vector<EntityType> types = {EntityType::kLoc, EntityType::kDate, EntityType::kMoney};
  for (int i = 0; i < 300; ++i) {
    const std::size_t k = 1 + rng() % 3;
    std::string summary;
    std::vector<EntityMention> flagged;
    std::vector<EntityMention> source;
    std::size_t product = 1;
    for (std::size_t j = 0; j < k; ++j) {
      summary += "x ";
      const std::string surface = "E" + std::to_string(j);
      const std::size_t start = utf8::Length(summary);
      summary += surface;
      const EntityType type = types[j];
      flagged.push_back({surface, type, {start, start + surface.size()}});
      const std::size_t options = rng() % 4;
      for (std::size_t o = 0; o < options; ++o) {
        source.push_back({"R" + std::to_string(j) + std::to_string(o), type, {0, 1}});
      }
      product *= std::max<std::size_t>(1, options);
    }
    summary += " y.";
    const std::size_t cap = 1 + rng() % 20;
    const auto set = EnumerateSwaps(summary, flagged, source, cap);
    const bool any = source.size() > 0;
    const std::size_t expected = any ? std::min(cap, 1 + product) : 1;
    ASSERT_EQ(set.candidates.size(), expected) << summary;
    ASSERT_EQ(set.candidates[0], summary);
    ASSERT_EQ(std::set<std::string>(set.candidates.begin(), set.candidates.end()).size(),
              set.candidates.size());
    for (std::size_t c = 1; c < set.candidates.size(); ++c) {
      for (const auto& s : set.substitutions[c]) {
        const auto it = std::find_if(flagged.begin(), flagged.end(),
                                     [&](const EntityMention& m) { return m.span == s.span; });
        ASSERT_NE(it, flagged.end());
        ASSERT_EQ(s.etype, it->etype);
        ASSERT_EQ(s.replacement[1], it->surface[1]);
      }
    }
  }
}

TEST(MetricProperty, EditPercentOrderAndWhitespaceInvariant) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 200; ++i) {
    std::vector<IdText> orig;
    std::vector<IdText> edit;
    for (int j = 0; j < 20; ++j) {
      const std::string id = std::to_string(j);
      orig.push_back({id, "a b c"});
      edit.push_back({id, rng() % 2 ? "a b c" : "a c"});
    }
    const double base = EditPercent(orig, edit);
    std::shuffle(edit.begin(), edit.end(), rng);
    ASSERT_DOUBLE_EQ(EditPercent(orig, edit), base);
    for (auto& e : edit) e.text = "  " + e.text + "\t";
    ASSERT_DOUBLE_EQ(EditPercent(orig, edit), base);
  }
}

TEST(MetricProperty, ReportMeansMatchRows) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(0, 100);
  for (int i = 0; i < 100; ++i) {
    std::vector<RecordScores> rows;
    double ep = 0, r1 = 0;
    std::size_t changed = 0;
    const int n = 1 + static_cast<int>(rng() % 10);
    for (int j = 0; j < n; ++j) {
      RecordScores r;
      r.id = std::to_string(j);
      r.e_p_src = u(rng);
      r.r1 = u(rng);
      r.changed = rng() % 2 == 0;
      ep += r.e_p_src;
      r1 += *r.r1;
      changed += *r.changed ? 1 : 0;
      rows.push_back(r);
    }
    const auto report = BuildReport(rows);
    ASSERT_NEAR(report.aggregates.at("e_p_src"), ep / n, 1e-9);
    ASSERT_NEAR(report.aggregates.at("r1"), r1 / n, 1e-9);
    ASSERT_NEAR(report.aggregates.at("edit_percent"), 100.0 * changed / n, 1e-9);
  }
}

TEST(MetricProperty, R1CleanOnCleanSubset) {
  synth::Generator gen(17);
  EntityExtractor ex;
  std::vector<CorpusRecord> records;
  std::vector<synth::Record> raw;
  for (const auto& r : gen.Corpus(300)) {
    CorpusRecord c;
    c.id = r.id;
    c.source = r.source;
    c.reference = r.perturbed;
    records.push_back(c);
    raw.push_back(r);
  }
  std::set<std::string> clean;
  for (const auto& r : CleanSubset(records, ex)) clean.insert(r.id);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string& hyp = raw[(i + 1) % raw.size()].clean;
    const auto& r = records[i];
    if (clean.count(r.id)) {
      ASSERT_NEAR(R1Clean(hyp, *r.reference, r.source, ex).f1,
                  RougeN(hyp, *r.reference, 1).f1, 1e-12);
    } else {
      const std::string cleaned = CleanReference(*r.reference, r.source, ex);
      ASSERT_TRUE(DetectExtrinsic(cleaned, r.source, MatcherConfig{}, ex).empty()) << cleaned;
    }
  }
}

TEST(ParallelProperty, ResultsIndependentOfWorkers) {
  std::vector<int> one = ParallelMap(257, 1, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t w : {2u, 3u, 8u, 64u}) {
    ASSERT_EQ(ParallelMap(257, w, [](std::size_t i) { return static_cast<int>(i * i); }), one);
  }
  EXPECT_THROW(ParallelMap(50, 4,
                           [](std::size_t i) {
                             if (i % 7 == 3) throw Error(ErrorCode::kInvalidInput, std::to_string(i));
                             return 0;
                           }),
               Error);
  try {
    ParallelMap(50, 4, [](std::size_t i) {
      if (i % 7 == 3) throw Error(ErrorCode::kInvalidInput, std::to_string(i));
      return 0;
    });
  } catch (const Error& e) {
    EXPECT_EQ(e.message(), "3");
  }
}

}  // namespace
}  // namespace factedit
