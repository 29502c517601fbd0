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

#include "factedit/report.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <string>
#include <vector>

namespace factedit {
namespace {

RecordScores Row(std::string id, double ep, std::size_t matched, std::size_t total, double r1,
                 std::optional<bool> changed = std::nullopt) {
  RecordScores r;
  r.id = std::move(id);
  r.e_p_src = ep;
  r.e_p_counts = {matched, total};
  r.r1 = r1;
  r.changed = changed;
  return r;
}

TEST(ReportTest, ColumnOrder) {
  std::vector<std::string> headers;
  for (const auto& c : kReportColumns) headers.push_back(std::string(c.header));
  EXPECT_EQ(headers, (std::vector<std::string>{"E-P_src", "BS-P_src", "D_arc", "QAFE",
                                               "E-R_ref", "BS-F1_ref", "R1", "R2", "RL",
                                               "R1-c", "CoLA", "Edit%"}));
  EXPECT_TRUE(IsExternalMetric("bs_p_src"));
  EXPECT_FALSE(IsExternalMetric("r1"));
}

TEST(ReportTest, SingletonEqualsRow) {
  const auto report = BuildReport({Row("a", 50, 1, 2, 40, true)});
  EXPECT_DOUBLE_EQ(report.aggregates.at("e_p_src"), 50);
  EXPECT_DOUBLE_EQ(report.aggregates.at("r1"), 40);
  EXPECT_DOUBLE_EQ(report.aggregates.at("edit_percent"), 100);
}

TEST(ReportTest, ThreeRowMeans) {
  const auto report = BuildReport({Row("c", 100, 0, 0, 10.5, false), Row("a", 50, 1, 2, 20.25, true),
                                   Row("b", 0, 0, 3, 33.3, false)});
  EXPECT_NEAR(report.aggregates.at("e_p_src"), 50.0, 1e-9);
  EXPECT_NEAR(report.aggregates.at("r1"), (10.5 + 20.25 + 33.3) / 3, 1e-9);
  EXPECT_NEAR(report.aggregates.at("edit_percent"), 100.0 / 3, 1e-9);
  EXPECT_EQ(report.rows[0].id, "a");
  EXPECT_EQ(report.rows[2].id, "c");
  EXPECT_EQ(report.aggregates.count("e_r_ref"), 0u);
}

TEST(ReportTest, MicroPoolsCounts) {
  const auto report = BuildReport({Row("a", 100, 0, 0, 0), Row("b", 50, 1, 2, 0),
                                   Row("c", 0, 0, 3, 0)},
                                  {}, Aggregation::kMicro);
  EXPECT_NEAR(report.aggregates.at("e_p_src"), 20.0, 1e-9);
}

TEST(ReportTest, EditPercentNeedsEveryRow) {
  const auto report = BuildReport({Row("a", 100, 0, 0, 0, true), Row("b", 100, 0, 0, 0)});
  EXPECT_EQ(report.aggregates.count("edit_percent"), 0u);
}

TEST(ReportTest, ExternalPassthrough) {
  const auto report =
      BuildReport({Row("a", 100, 0, 0, 0), Row("b", 100, 0, 0, 0)},
                  {{"a", "bs_p_src", 0.9}, {"b", "bs_p_src", 0.7}});
  EXPECT_NEAR(report.aggregates.at("bs_p_src"), 0.8, 1e-12);
  EXPECT_EQ(report.aggregates.count("qafe"), 0u);
  const Json j = ReportToJson(report);
  EXPECT_NEAR(j["aggregate"]["BS-P_src"].get<double>(), 0.8, 1e-12);
  EXPECT_TRUE(j["aggregate"]["QAFE"].is_null());
  EXPECT_DOUBLE_EQ(j["rows"][0]["bs_p_src"].get<double>(), 0.9);
}

TEST(ReportTest, Errors) {
  auto code = [](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  EXPECT_EQ(code([] { BuildReport({}); }), ErrorCode::kEmptyCorpus);
  EXPECT_EQ(code([] { BuildReport({Row("a", 1, 0, 0, 0), Row("a", 1, 0, 0, 0)}); }),
            ErrorCode::kAlignmentError);
  EXPECT_EQ(code([] { BuildReport({Row("a", 1, 0, 0, 0)}, {{"z", "qafe", 1}}); }),
            ErrorCode::kAlignmentError);
  EXPECT_EQ(code([] { BuildReport({Row("a", 1, 0, 0, 0)}, {{"a", "r1", 1}}); }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(code([] { ExternalValueFromJson(Json{{"id", "a"}, {"metric", "cola"}}); }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(ExternalValueFromJson(Json{{"id", "a"}, {"metric", "cola"}, {"value", 0.5}}).value,
            0.5);
}

TEST(ReportTest, JsonAndTsvLayout) {
  const auto report = BuildReport({Row("a", 80, 4, 5, 41.2345, false)});
  const Json j = ReportToJson(report, Json{{"rouge", "casefold"}});
  EXPECT_EQ(j["columns"].size(), 12u);
  EXPECT_EQ(j["records"], 1);
  EXPECT_EQ(j["conventions"]["entity_aggregation"], "macro");
  EXPECT_EQ(j["conventions"]["rouge"], "casefold");
  EXPECT_EQ(ReportToTsv(report),
            "E-P_src\tBS-P_src\tD_arc\tQAFE\tE-R_ref\tBS-F1_ref\tR1\tR2\tRL\tR1-c\tCoLA\tEdit%\n"
            "80.00\t-\t-\t-\t-\t-\t41.23\t-\t-\t-\t-\t0.00\n");
}

TEST(ScoreRecordTest, FullRecord) {
  ScoreInput in;
  in.id = "x";
  in.source = "Officials said Dawes was abducted in 2012 in Syria.";
  in.hypothesis = "Officials said Dawes was abducted in Syria in 2014.";
  in.reference = "Officials said Dawes was abducted in Syria.";
  const auto s = ScoreRecord(in, EntityExtractor());
  EXPECT_NEAR(s.e_p_src, 200.0 / 3, 1e-9);
  EXPECT_DOUBLE_EQ(*s.e_r_ref, 100.0);
  EXPECT_NEAR(*s.r1, 100 * RougeN(in.hypothesis, *in.reference, 1).f1, 1e-12);
  EXPECT_TRUE(s.r2 && s.rl && s.r1_c);
  ScoreInput no_ref = in;
  no_ref.reference.reset();
  EXPECT_FALSE(ScoreRecord(no_ref, EntityExtractor()).r1.has_value());
}

TEST(FormatTest, FixedTwo) {
  EXPECT_EQ(FormatFixed2(80), "80.00");
  EXPECT_EQ(FormatFixed2(2.0 / 3 * 100), "66.67");
}

}  // namespace
}  // namespace factedit
