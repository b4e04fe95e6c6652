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

#ifndef QOSD_THRESHOLD_H
#define QOSD_THRESHOLD_H

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qosd/harness.h"

namespace qosd {

/// Logical error rates of one code over an error-rate grid.
struct LerCurve {
    std::string label;
    std::vector<AggregateStats> points;
};

enum class CrossingKind {
    /// The curves cross between two grid points.
    kBracketed,
    /// The larger code is worse everywhere: the crossing lies below the grid.
    kBelowGrid,
    /// The larger code is better everywhere: the crossing lies above the grid.
    kAboveGrid,
    /// The curves coincide on the whole grid.
    kDegenerate,
};
std::string_view crossing_kind_name(CrossingKind kind);

struct CrossingInterval {
    std::string smaller;
    std::string larger;
    CrossingKind kind = CrossingKind::kDegenerate;
    /// Grid points bracketing the crossing; one side is open (infinite) for
    /// kBelowGrid / kAboveGrid.
    double low = 0;
    double high = 0;
    /// Linear interpolation of the sign change of log LER(larger) - log LER(smaller).
    double estimate = 0;
};

/// Compares two curves sampled on the same grid. Zero error counts are floored
/// at 0.5 / trials before taking logs.
CrossingInterval find_crossing(const LerCurve &smaller, const LerCurve &larger);

struct ThresholdReport {
    std::vector<LerCurve> curves;
    std::vector<CrossingInterval> crossings;
};

nlohmann::json to_json(const ThresholdReport &report);

/// Runs every code on every grid point and reports crossings of adjacent pairs.
/// Codes must be listed in increasing size.
ThresholdReport threshold_scan(
    const std::vector<StabilizerCode> &codes,
    const std::vector<double> &grid,
    const PipelineConfig &config,
    const RunOptions &options);

}  // namespace qosd

#endif
