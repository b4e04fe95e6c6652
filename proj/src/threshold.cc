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

#include <cmath>
#include <limits>

namespace qosd {

std::string_view crossing_kind_name(CrossingKind kind) {
    switch (kind) {
        case CrossingKind::kBracketed:
            return "bracketed";
        case CrossingKind::kBelowGrid:
            return "below_grid";
        case CrossingKind::kAboveGrid:
            return "above_grid";
        case CrossingKind::kDegenerate:
            return "degenerate";
    }
    return "?";
}

namespace {

double log_ler(const AggregateStats &s) {
    double errors = s.logical_errors == 0 ? 0.5 : static_cast<double>(s.logical_errors);
    return std::log(errors / static_cast<double>(std::max<uint64_t>(1, s.trials)));
}

}  // namespace

CrossingInterval find_crossing(const LerCurve &smaller, const LerCurve &larger) {
    if (smaller.points.size() != larger.points.size() || smaller.points.empty()) {
        throw std::invalid_argument("crossing needs two curves on the same nonempty grid");
    }
    CrossingInterval out;
    out.smaller = smaller.label;
    out.larger = larger.label;
    const size_t g = smaller.points.size();
    std::vector<double> diff(g);
    bool all_zero = true;
    for (size_t t = 0; t < g; t++) {
        if (smaller.points[t].epsilon != larger.points[t].epsilon) {
            throw std::invalid_argument("curves were sampled on different grids");
        }
        diff[t] = log_ler(larger.points[t]) - log_ler(smaller.points[t]);
        all_zero &= diff[t] == 0;
    }
    const double inf = std::numeric_limits<double>::infinity();
    if (all_zero) {
        out.kind = CrossingKind::kDegenerate;
        out.low = smaller.points.front().epsilon;
        out.high = smaller.points.back().epsilon;
        out.estimate = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    // Below threshold the larger code wins (diff < 0); find where that stops.
    for (size_t t = 0; t + 1 < g; t++) {
        if (diff[t] < 0 && diff[t + 1] >= 0) {
            double e0 = smaller.points[t].epsilon;
            double e1 = smaller.points[t + 1].epsilon;
            out.kind = CrossingKind::kBracketed;
            out.low = e0;
            out.high = e1;
            out.estimate = e0 + (e1 - e0) * (-diff[t]) / (diff[t + 1] - diff[t]);
            return out;
        }
    }
    if (diff.back() < 0) {
        out.kind = CrossingKind::kAboveGrid;
        out.low = smaller.points.back().epsilon;
        out.high = inf;
        out.estimate = inf;
    } else {
        out.kind = CrossingKind::kBelowGrid;
        out.low = 0;
        out.high = smaller.points.front().epsilon;
        out.estimate = 0;
    }
    return out;
}

ThresholdReport threshold_scan(
    const std::vector<StabilizerCode> &codes,
    const std::vector<double> &grid,
    const PipelineConfig &config,
    const RunOptions &options) {
    if (codes.size() < 2) {
        throw std::invalid_argument("threshold scan needs at least two codes");
    }
    if (grid.empty()) {
        throw std::invalid_argument("threshold scan needs a nonempty error-rate grid");
    }
    ThresholdReport report;
    for (const auto &code : codes) {
        LerCurve curve;
        curve.label = code.name();
        for (double eps : grid) {
            curve.points.push_back(run_trials(code, ChannelModel{eps}, config, options).stats);
        }
        report.curves.push_back(std::move(curve));
    }
    for (size_t c = 0; c + 1 < report.curves.size(); c++) {
        report.crossings.push_back(find_crossing(report.curves[c], report.curves[c + 1]));
    }
    return report;
}

nlohmann::json to_json(const ThresholdReport &report) {
    nlohmann::json j;
    j["curves"] = nlohmann::json::array();
    for (const auto &curve : report.curves) {
        nlohmann::json points = nlohmann::json::array();
        for (const auto &p : curve.points) {
            points.push_back(to_json(p));
        }
        j["curves"].push_back({{"code", curve.label}, {"points", points}});
    }
    auto finite_or_null = [](double v) {
        return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
    };
    j["crossings"] = nlohmann::json::array();
    for (const auto &c : report.crossings) {
        j["crossings"].push_back({
            {"smaller", c.smaller},
            {"larger", c.larger},
            {"kind", crossing_kind_name(c.kind)},
            {"low", finite_or_null(c.low)},
            {"high", finite_or_null(c.high)},
            {"estimate", finite_or_null(c.estimate)},
        });
    }
    return j;
}

}  // namespace qosd
