// Copyright 2026 The sliceprof Authors.
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "sliceprof/error.hpp"
#include "sliceprof/features.hpp"
#include "sliceprof/synth.hpp"

namespace sliceprof {
namespace {

using testing::test_catalog;
using testing::test_record;
using testing::test_settings;

const std::string kVideo = "Watching 720p Video Online";
const std::string kChat = "Instant Message Chat";
const std::string kSensor = "Air Pollution Service Request";

FeatureMatrix matrix_of(const std::vector<std::vector<double>>& rows, std::vector<std::string> names) {
  FeatureMatrix m;
  m.columns = std::move(names);
  m.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m.columns.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.ue_ids.push_back(static_cast<std::int64_t>(i));
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

TEST(FeatureSchema, FixedOrderOfTenColumns) {
  const std::vector<std::string> expected = {
      "total_uplink_kb", "total_downlink_kb", "sessions_video_streaming", "sessions_social_network",
      "sessions_instant_messaging", "sessions_uav_delivery", "sessions_iot_sensor", "ram_mb_total",
      "cpu_units_total", "storage_mb_total"};
  EXPECT_EQ(feature_schema(), expected);
  EXPECT_EQ(session_column(ServiceFamily::kUavDelivery), "sessions_uav_delivery");
}

TEST(FilterRecords, OnlyEventsGivesNothing) {
  Trace t;
  t.scenario_settings = test_settings();
  t.event_logs = {{"attach", 0.0, 1}, {"handoff", 5.0, 1}, {"migration", 6.0, 1}, {"detach", 9.0, 1}};
  EXPECT_TRUE(filter_records(t).empty());
}

TEST(FilterRecords, EmptyTrace) { EXPECT_TRUE(filter_records(Trace{}).empty()); }

TEST(FilterRecords, MergesLogsInTimeOrder) {
  Trace t;
  t.scenario_settings = test_settings();
  t.ue_logs = {test_record(1, 1.0, kVideo, 1, 1), test_record(2, 4.0, kChat, 1, 1)};
  t.iot_logs = {test_record(3, 2.0, kSensor, 1, 1), test_record(3, 5.0, kSensor, 1, 1)};
  const auto out = filter_records(t);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0].time, 1.0);
  EXPECT_EQ(out[1].time, 2.0);
  EXPECT_EQ(out[2].time, 4.0);
  EXPECT_EQ(out[3].time, 5.0);
}

TEST(FilterRecords, EventLogsDoNotChangeOutput) {
  Trace t = generate(default_scenario(5));
  const auto with_events = filter_records(t);
  t.event_logs.clear();
  EXPECT_EQ(filter_records(t), with_events);
  EXPECT_EQ(with_events.size(), t.ue_logs.size() + t.iot_logs.size());
}

TEST(AggregateFeatures, SingleVideoSession) {
  const std::vector<UeLogRecord> recs = {test_record(7, 0.0, kVideo, 5, 100, {50, 0.25, 12})};
  const FeatureMatrix m = aggregate_features(recs, test_catalog());
  ASSERT_EQ(m.rows(), 1);
  ASSERT_EQ(m.cols(), 10);
  EXPECT_EQ(m.ue_ids, std::vector<std::int64_t>{7});
  Eigen::RowVectorXd expected(10);
  expected << 5, 100, 1, 0, 0, 0, 0, 50, 0.25, 12;
  EXPECT_EQ(m.values.row(0), expected);
}

TEST(AggregateFeatures, NoRecordsGivesEmptyMatrix) {
  const FeatureMatrix m = aggregate_features({}, test_catalog());
  EXPECT_EQ(m.rows(), 0);
  EXPECT_EQ(m.cols(), 10);
}

TEST(AggregateFeatures, SameUeRecordsAreAdded) {
  const std::vector<UeLogRecord> recs = {test_record(3, 0.0, kVideo, 5, 100, {50, 1, 2}),
                                         test_record(3, 1.0, kChat, 1, 2, {3, 4, 5})};
  const FeatureMatrix m = aggregate_features(recs, test_catalog());
  ASSERT_EQ(m.rows(), 1);
  Eigen::RowVectorXd expected(10);
  expected << 6, 102, 1, 0, 1, 0, 0, 53, 5, 7;
  EXPECT_EQ(m.values.row(0), expected);
}

TEST(AggregateFeatures, RowsOrderedByUeId) {
  const std::vector<UeLogRecord> recs = {test_record(9, 0.0, kVideo, 1, 1), test_record(2, 1.0, kChat, 1, 1),
                                         test_record(5, 2.0, kSensor, 1, 1)};
  EXPECT_EQ(aggregate_features(recs, test_catalog()).ue_ids, (std::vector<std::int64_t>{2, 5, 9}));
}

TEST(AggregateFeatures, UnknownServiceIsError) {
  const std::vector<UeLogRecord> recs = {test_record(1, 0.0, "Nope", 1, 1)};
  EXPECT_THROW(aggregate_features(recs, test_catalog()), ValidationError);
}

TEST(AggregateFeatures, ColumnSumsEqualTraceTotals) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Trace t = generate(default_scenario(seed));
    const auto recs = filter_records(t);
    const FeatureMatrix m = aggregate_features(recs, t.scenario_settings.service_catalog);
    double up = 0, down = 0, ram = 0, cpu = 0, storage = 0;
    for (const auto& r : recs) {
      up += r.data_uplink_kb;
      down += r.data_downlink_kb;
      ram += r.resources.ram_mb;
      cpu += r.resources.cpu_units;
      storage += r.resources.storage_mb;
    }
    const Eigen::RowVectorXd sums = m.values.colwise().sum();
    EXPECT_EQ(sums(0), up);
    EXPECT_EQ(sums(1), down);
    EXPECT_EQ(sums.segment(2, 5).sum(), static_cast<double>(recs.size()));
    EXPECT_EQ(sums(7), ram);
    EXPECT_EQ(sums(8), cpu);
    EXPECT_EQ(sums(9), storage);
  }
}

TEST(Standardize, ConstantColumnBecomesZeros) {
  const FeatureMatrix m = matrix_of({{4, 0}, {4, 1}, {4, 2}}, {"c", "v"});
  for (Standardization s : {Standardization::kZScore, Standardization::kMinMax}) {
    const FeatureMatrix z = standardize(m, s);
    EXPECT_TRUE(z.values.col(0).isZero(0.0));
    EXPECT_EQ(z.columns, m.columns);
    EXPECT_EQ(z.ue_ids, m.ue_ids);
  }
}

TEST(Standardize, MinMaxMapsToUnitInterval) {
  const FeatureMatrix z = standardize(matrix_of({{0}, {10}}, {"x"}), Standardization::kMinMax);
  EXPECT_EQ(z.values(0, 0), 0.0);
  EXPECT_EQ(z.values(1, 0), 1.0);
}

TEST(Standardize, ZScoreHasZeroMeanUnitPopulationVariance) {
  const FeatureMatrix z = standardize(matrix_of({{1}, {2}, {3}}, {"x"}), Standardization::kZScore);
  const double mean = z.values.col(0).mean();
  const double var = (z.values.col(0).array() - mean).square().mean();
  EXPECT_NEAR(mean, 0.0, 1e-12);
  EXPECT_NEAR(var, 1.0, 1e-12);
}

TEST(Standardize, PropertiesOnGeneratedFeatures) {
  const Trace t = generate(default_scenario(2));
  const FeatureMatrix m = aggregate_features(filter_records(t), t.scenario_settings.service_catalog);
  const FeatureMatrix z = standardize(m, Standardization::kZScore);
  const FeatureMatrix mm = standardize(m, Standardization::kMinMax);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double mean = z.values.col(j).mean();
    const double var = (z.values.col(j).array() - mean).square().mean();
    EXPECT_NEAR(mean, 0.0, 1e-9);
    EXPECT_TRUE(std::abs(var - 1.0) < 1e-9 || z.values.col(j).isZero(0.0)) << m.columns[j];
    EXPECT_GE(mm.values.col(j).minCoeff(), 0.0);
    EXPECT_LE(mm.values.col(j).maxCoeff(), 1.0);
  }
}

TEST(Standardization, NamesRoundTrip) {
  for (Standardization s : {Standardization::kNone, Standardization::kZScore, Standardization::kMinMax}) {
    EXPECT_EQ(standardization_from_string(to_string(s)), s);
  }
  EXPECT_FALSE(standardization_from_string("robust").has_value());
}

TEST(TotalDataColumn, SumsUplinkAndDownlink) {
  const std::vector<UeLogRecord> recs = {test_record(1, 0.0, kVideo, 5, 100)};
  const FeatureMatrix m = with_total_data_column(aggregate_features(recs, test_catalog()));
  const auto j = m.column_index(kTotalDataColumn);
  ASSERT_TRUE(j.has_value());
  EXPECT_EQ(m.values(0, *j), 105.0);
}

TEST(SelectColumns, KeepsRequestedOrderAndRejectsUnknown) {
  const FeatureMatrix m = matrix_of({{1, 2, 3}}, {"a", "b", "c"});
  const std::vector<std::string> names = {"c", "a"};
  const FeatureMatrix s = select_columns(m, names);
  EXPECT_EQ(s.columns, names);
  EXPECT_EQ(s.values(0, 0), 3.0);
  const std::vector<std::string> bad = {"z"};
  EXPECT_THROW(select_columns(m, bad), ValidationError);
}

TEST(FeaturesCsv, RoundTrip) {
  const Trace t = generate(default_scenario(3));
  const FeatureMatrix m = aggregate_features(filter_records(t), t.scenario_settings.service_catalog);
  const std::string text = write_features_csv(m);
  EXPECT_EQ(text.substr(0, 6), "ue_id,");
  const FeatureMatrix back = parse_features_csv(text);
  EXPECT_EQ(back.ue_ids, m.ue_ids);
  EXPECT_EQ(back.columns, m.columns);
  EXPECT_EQ(back.values, m.values);
  EXPECT_EQ(write_features_csv(back), text);
}

TEST(FeaturesCsv, MalformedInputNamesCell) {
  try {
    parse_features_csv("ue_id,a\n1,oops\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(e.path().find("line 2"), std::string::npos) << e.path();
  }
  EXPECT_THROW(parse_features_csv(""), ParseError);
  EXPECT_THROW(parse_features_csv("id,a\n1,2\n"), ParseError);
}

TEST(FeatureMatrixCheck, RejectsNonFinite) {
  FeatureMatrix m = matrix_of({{1, 2}}, {"a", "b"});
  m.values(0, 1) = std::nan("");
  EXPECT_THROW(m.check(), ValidationError);
  m = matrix_of({{1, 2}}, {"a", "a"});
  EXPECT_THROW(m.check(), ValidationError);
}

}  // namespace
}  // namespace sliceprof
