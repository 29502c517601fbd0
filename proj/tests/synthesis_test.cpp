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

#include "factedit/synthesis.hpp"

#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "factedit/metrics.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace factedit {
namespace {

const char kSource[] =
    "Kevin Patrick Dawes, 33, was abducted in 2012 as he entered Syria. The Czech government, "
    "which represents US diplomatic interests in Syria, helped secure his release.";

CorpusRecord Rec(std::string id, std::string source, std::string reference) {
  CorpusRecord r;
  r.id = std::move(id);
  r.source = std::move(source);
  r.reference = std::move(reference);
  return r;
}

TEST(FilterCompressionTest, BoundaryIsInclusive) {
  const std::vector<CompressionPair> pairs = {
      {"keep-exact", "a b c d", "a b c"},          // 3/4
      {"drop", "a b c d e f g h", "a b c d e"},    // 5/8
      {"keep-equal", "a b", "a b"},                // 1
      {"punct-counts", "a , b .", "a b ."},        // 3/4
      {"empty", "", "x"},
  };
  FilterStats stats;
  const auto kept = FilterCompression(pairs, 0.75, &stats);
  std::vector<std::string> ids;
  for (const auto& p : kept) ids.push_back(p.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"keep-exact", "keep-equal", "punct-counts"}));
  EXPECT_EQ(stats.kept, 3u);
  EXPECT_EQ(stats.dropped, 1u);
  EXPECT_EQ(stats.skipped_empty, 1u);
}

TEST(FilterCompressionTest, RejectsBadRatio) {
  EXPECT_THROW(FilterCompression({}, 0.0), Error);
  EXPECT_THROW(FilterCompression({}, 1.5), Error);
  EXPECT_NO_THROW(FilterCompression({}, 1.0));
}

TEST(PerturberPairTest, ListsDroppedEntities) {
  const std::vector<CompressionPair> pairs = {
      {"p1",
       "Wall Street markets closed lower on the last trading day of 2015 as oil prices "
       "languished at $28 a barrel.",
       "Wall Street markets closed lower as oil prices languished."},
      {"p2", "Markets closed lower.", "Markets closed."},
  };
  std::size_t dropped = 0;
  const auto out = EmitPerturberPairs(pairs, EntityExtractor(), {}, "<sep>", &dropped);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(dropped, 1u);
  EXPECT_EQ(out[0].direction, Direction::kPerturber);
  EXPECT_EQ(out[0].inserted_entities, (std::vector<std::string>{"2015", "$28"}));
  EXPECT_EQ(out[0].input,
            "Wall Street markets closed lower as oil prices languished. <sep> 2015; $28");
  EXPECT_EQ(out[0].target, pairs[0].uncompressed);
}

TEST(CleanSubsetTest, KeepsGroundedReferences) {
  const std::vector<CorpusRecord> records = {
      Rec("a", kSource, "Kevin Patrick Dawes was released from Syria."),
      Rec("b", kSource, "Kevin Patrick Dawes was released from Syria in 2016."),
      Rec("c", kSource, "he was released."),
  };
  CorpusRecord no_ref;
  no_ref.id = "d";
  no_ref.source = kSource;
  no_ref.hypothesis = "x";
  auto all = records;
  all.push_back(no_ref);
  CleanStats stats;
  const auto kept = CleanSubset(all, EntityExtractor(), {}, &stats);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].id, "a");
  EXPECT_EQ(kept[1].id, "c");
  EXPECT_EQ(stats.dropped, 1u);
  EXPECT_EQ(stats.skipped_missing_reference, 1u);
}

TEST(CleanSubsetTest, MatchesEntityPrecision) {
  synth::Generator gen(21);
  std::vector<CorpusRecord> records;
  for (const auto& r : gen.Corpus(100)) records.push_back(Rec(r.id, r.source, r.perturbed));
  EntityExtractor ex;
  std::set<std::string> kept;
  for (const auto& r : CleanSubset(records, ex)) kept.insert(r.id);
  for (const auto& r : records) {
    EXPECT_EQ(kept.count(r.id) == 1, EntityPrecision(*r.reference, r.source, ex) == 100.0)
        << r.id;
  }
}

TEST(InsertionTest, PoolAndTasks) {
  const auto record = Rec("r1", kSource, "Kevin Patrick Dawes was released.");
  EntityExtractor ex;
  const auto pool = InsertionPool(record, ex);
  EXPECT_EQ(pool, (std::vector<std::string>{"33", "2012", "Syria", "Czech", "US"}));
  const auto tasks = MakeInsertionTasks(record, 5, ex);
  ASSERT_EQ(tasks.size(), 3u);
  for (int k = 1; k <= 3; ++k) {
    const auto& t = tasks[static_cast<std::size_t>(k - 1)];
    EXPECT_EQ(t.k, k);
    EXPECT_EQ(t.task_id, "r1#" + std::to_string(k));
    EXPECT_EQ(t.entities.size(), static_cast<std::size_t>(k));
    EXPECT_EQ(std::set<std::string>(t.entities.begin(), t.entities.end()).size(), t.entities.size());
    for (const auto& e : t.entities) {
      EXPECT_NE(std::find(pool.begin(), pool.end(), e), pool.end());
      EXPECT_FALSE(oracle::Contains(*record.reference, e));
    }
  }
  EXPECT_EQ(PerturberRequestInput(tasks[0]),
            "Kevin Patrick Dawes was released. <sep> " + tasks[0].entities[0]);
}

TEST(InsertionTest, DeterministicPerRecord) {
  EntityExtractor ex;
  const auto a = Rec("a", kSource, "released.");
  const auto b = Rec("b", kSource, "released.");
  const auto first = MakeInsertionTasks(a, 9, ex);
  const auto again = MakeInsertionTasks(a, 9, ex);
  ASSERT_EQ(first.size(), again.size());
  for (std::size_t i = 0; i < first.size(); ++i) EXPECT_EQ(first[i].entities, again[i].entities);
  // Tasks for one record do not depend on other records.
  MakeInsertionTasks(b, 9, ex);
  EXPECT_EQ(MakeInsertionTasks(a, 9, ex)[2].entities, first[2].entities);
}

TEST(InsertionTest, SmallPoolLimitsK) {
  const auto record = Rec("r", "Paris hosted the talks.", "the talks.");
  EXPECT_EQ(MakeInsertionTasks(record, 1, EntityExtractor()).size(), 1u);
  const auto none = Rec("r", "Paris hosted the talks.", "Paris hosted the talks.");
  EXPECT_TRUE(MakeInsertionTasks(none, 1, EntityExtractor()).empty());
}

TEST(EditorPairTest, MarksInsertedEntities) {
  const auto record = Rec("r", kSource, "Kevin Patrick Dawes was released.");
  InsertionTask task{"r#2", "r", *record.reference, 2, {"2012", "Syria"}, 0};
  const auto result =
      EmitEditorPair(record, task, "Kevin Patrick Dawes was released in Syria in 2012.");
  ASSERT_TRUE(result.pair.has_value());
  EXPECT_EQ(result.pair->direction, Direction::kPostEditor);
  EXPECT_EQ(result.pair->input, std::string(kSource) +
                                    " <sep> Kevin Patrick Dawes was released in <rm> Syria "
                                    "</rm> in <rm> 2012 </rm>.");
  EXPECT_EQ(result.pair->target, *record.reference);
  EXPECT_EQ(result.pair->inserted_entities, task.entities);
}

TEST(EditorPairTest, Rejections) {
  const auto record = Rec("r", kSource, "Kevin Patrick Dawes was released.");
  InsertionTask task{"r#1", "r", *record.reference, 1, {"Syria"}, 0};
  EXPECT_EQ(EmitEditorPair(record, task, "He was released.").rejection,
            EditorRejection::kEntityNotFound);
  EXPECT_EQ(EmitEditorPair(record, task, "Syria said he left Syria.").rejection,
            EditorRejection::kResidualEntity);
}

struct Item {
  std::string id;
};

TEST(SampleTest, UndersizedReturnsAllSorted) {
  std::vector<Item> items;
  for (int i = 9; i >= 0; --i) items.push_back({"id" + std::to_string(i)});
  const auto out = Sample(items, 200000, 1);
  ASSERT_EQ(out.size(), 10u);
  EXPECT_EQ(out.front().id, "id0");
  EXPECT_EQ(out.back().id, "id9");
}

TEST(SampleTest, DeterministicUnderSeed) {
  std::vector<Item> items;
  for (int i = 0; i < 1000; ++i) items.push_back({std::to_string(10000 + i)});
  const auto a = Sample(items, 100, 42);
  const auto b = Sample(items, 100, 42);
  const auto c = Sample(items, 100, 43);
  ASSERT_EQ(a.size(), 100u);
  std::vector<std::string> ia, ib, ic;
  for (std::size_t i = 0; i < 100; ++i) {
    ia.push_back(a[i].id);
    ib.push_back(b[i].id);
    ic.push_back(c[i].id);
  }
  EXPECT_EQ(ia, ib);
  EXPECT_NE(ia, ic);
  EXPECT_TRUE(std::is_sorted(ia.begin(), ia.end()));
  EXPECT_EQ(std::set<std::string>(ia.begin(), ia.end()).size(), 100u);
}

}  // namespace
}  // namespace factedit
