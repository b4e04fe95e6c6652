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

#ifndef QOSD_TIMING_H
#define QOSD_TIMING_H

#include <optional>

#include "json.hpp"
#include "qosd/harness.h"

namespace qosd {

struct TimingOptions {
    uint64_t trials = 10000;
    uint64_t seed = 1;
    /// Leading trials run but not timed.
    size_t warmup_trials = 200;
    size_t groups = 10;
    /// Also time OSD-2 on the unreduced system for every BP failure.
    bool measure_osd2 = true;
    /// BP, theta, and budget settings. The pipeline field is ignored.
    PipelineConfig pipeline;
};

/// Single-threaded timings in microseconds (median of group means).
struct TimingReport {
    double epsilon = 0;
    uint64_t trials = 0;
    uint64_t bp_failures = 0;
    double bp_failure_rate = 0;
    double mean_iterations_on_success = 0;
    double per_bp_iteration_us = 0;
    uint64_t post_calls = 0;
    std::optional<double> per_adosd_us;
    std::optional<double> per_osd2_us;
    std::optional<double> adosd_in_bp_iterations;
    std::optional<double> adosd_over_osd2;
};

nlohmann::json to_json(const TimingReport &report);

/// Runs BP on sampled errors; every BP failure is post-processed by ADOSD and,
/// optionally, by OSD-2, each timed separately. Both post-processors include
/// building the reliability order.
TimingReport timing_probe(const StabilizerCode &code, double epsilon, const TimingOptions &options);

}  // namespace qosd

#endif
