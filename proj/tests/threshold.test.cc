// Copyright 2026 The qosd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qosd/threshold.h"

#include <gtest/gtest.h>

#include <cmath>

#include "qosd/code_library.h"

namespace qosd {

namespace {

LerCurve curve(const std::string &label, const std::vector<double> &eps, const std::vector<uint64_t> &errors) {
    LerCurve c;
    c.label = label;
    for (size_t t = 0; t < eps.size(); t++) {
        AggregateStats s;
        s.epsilon = eps[t];
        s.trials = 1000;
        s.logical_errors = errors[t];
        s.ler = static_cast<double>(errors[t]) / 1000;
        c.points.push_back(s);
    }
    return c;
}

const std::vector<double> kGrid = {0.1, 0.15, 0.2};

}  // namespace

TEST(threshold, bracketed_crossing_interpolates_in_log_space) {
    CrossingInterval c = find_crossing(curve("a", kGrid, {100, 200, 400}), curve("b", kGrid, {50, 200, 800}));
    EXPECT_EQ(c.kind, CrossingKind::kBracketed);
    EXPECT_EQ(c.low, 0.1);
    EXPECT_EQ(c.high, 0.15);
    // diff is log(0.5) then 0: the sign change sits at the upper point.
    EXPECT_DOUBLE_EQ(c.estimate, 0.15);

    c = find_crossing(curve("a", kGrid, {100, 200, 400}), curve("b", kGrid, {50, 100, 1600}));
    EXPECT_EQ(c.kind, CrossingKind::kBracketed);
    EXPECT_EQ(c.low, 0.15);
    EXPECT_EQ(c.high, 0.2);
    EXPECT_NEAR(c.estimate, 0.15 + 0.05 * std::log(2) / (std::log(2) + std::log(4)), 1e-12);
}

TEST(threshold, one_sided_results) {
    CrossingInterval better = find_crossing(curve("a", kGrid, {100, 200, 400}), curve("b", kGrid, {10, 20, 40}));
    EXPECT_EQ(better.kind, CrossingKind::kAboveGrid);
    EXPECT_EQ(better.low, 0.2);
    EXPECT_TRUE(std::isinf(better.high));

    CrossingInterval worse = find_crossing(curve("a", kGrid, {10, 20, 40}), curve("b", kGrid, {100, 200, 400}));
    EXPECT_EQ(worse.kind, CrossingKind::kBelowGrid);
    EXPECT_EQ(worse.low, 0.0);
    EXPECT_EQ(worse.high, 0.1);
}

TEST(threshold, identical_curves_are_degenerate) {
    CrossingInterval c = find_crossing(curve("a", kGrid, {0, 5, 9}), curve("b", kGrid, {0, 5, 9}));
    EXPECT_EQ(c.kind, CrossingKind::kDegenerate);
    EXPECT_TRUE(std::isnan(c.estimate));
}

TEST(threshold, single_point_grid) {
    std::vector<double> one = {0.1};
    EXPECT_EQ(find_crossing(curve("a", one, {5}), curve("b", one, {1})).kind, CrossingKind::kAboveGrid);
    EXPECT_EQ(find_crossing(curve("a", one, {1}), curve("b", one, {5})).kind, CrossingKind::kBelowGrid);
}

TEST(threshold, mismatched_grids_are_rejected) {
    EXPECT_THROW(find_crossing(curve("a", kGrid, {1, 2, 3}), curve("b", {0.1, 0.15}, {1, 2})), std::invalid_argument);
    EXPECT_THROW(
        find_crossing(curve("a", kGrid, {1, 2, 3}), curve("b", {0.1, 0.15, 0.25}, {1, 2, 3})), std::invalid_argument);
}

TEST(threshold, scan_needs_two_codes) {
    PipelineConfig config;
    EXPECT_THROW(threshold_scan({build_rotated_surface(3)}, {0.1}, config, {}), std::invalid_argument);
}

TEST(threshold, scan_reports_each_adjacent_pair) {
    PipelineConfig config;
    config.bp.max_iterations = 20;
    ThresholdReport report = threshold_scan(
        {build_rotated_surface(3), build_rotated_surface(5), build_rotated_surface(7)}, {0.05, 0.25}, config,
        {.max_trials = 200, .seed = 8});
    ASSERT_EQ(report.curves.size(), 3u);
    ASSERT_EQ(report.crossings.size(), 2u);
    EXPECT_EQ(report.crossings[0].smaller, report.curves[0].label);
    EXPECT_EQ(report.crossings[1].larger, report.curves[2].label);
    nlohmann::json j = to_json(report);
    EXPECT_EQ(j["crossings"].size(), 2u);
}

}  // namespace qosd
