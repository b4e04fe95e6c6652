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

#ifndef QOSD_RUN_CONFIG_H
#define QOSD_RUN_CONFIG_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qosd/code_library.h"
#include "qosd/harness.h"

namespace qosd {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything needed to replay an experiment.
///
/// Text form, one `key = value` per line under `[section]` headers:
///
///     [code]     spec, d, trust_distance
///     [channel]  eps
///     [decoder]  pipeline, T, alpha, alpha_seq, schedule, theta, gamma, order, w_backup, metric
///     [run]      trials, target_logical_errors, seed, workers, batch_size
///     [output]   out, trial_log
///
/// `alpha = auto` selects alpha_of_epsilon. `eps` and `d` take comma lists;
/// `eps` also accepts start:step:stop.
struct RunConfig {
    std::string code = "surface";
    std::vector<size_t> distances;
    bool trust_distance = false;
    std::vector<double> eps = {0.05};
    Pipeline pipeline = Pipeline::kBpAdosd;
    size_t max_iterations = 100;
    std::optional<double> alpha = 1.0;
    std::vector<double> alpha_seq = {1.6, -0.01, 0.5};
    BpSchedule schedule = BpSchedule::kParallel;
    double theta = kDefaultTheta;
    uint64_t gamma = 0;
    std::optional<size_t> order;
    size_t w_backup = 2;
    ReliabilityMetric metric = ReliabilityMetric::kHardThenSoft;
    uint64_t trials = 1000;
    uint64_t target_logical_errors = 100;
    uint64_t seed = 1;
    size_t workers = 1;
    size_t batch_size = 1000;
    std::string out;
    std::string trial_log;

    bool operator==(const RunConfig &) const = default;

    /// Throws ConfigError naming the offending field.
    void validate() const;
    /// One CodeSpec per requested distance (or the spec itself).
    std::vector<CodeSpec> code_specs() const;
    PipelineConfig pipeline_config() const;
    RunOptions run_options() const;
};

RunConfig parse_run_config(std::string_view text, const std::string &source_name = "<config>");
RunConfig load_run_config(const std::string &path);
std::string serialize_run_config(const RunConfig &config);
/// FNV-1a of the serialized config, as 16 hex digits.
std::string config_hash(const RunConfig &config);

/// Applies one `key = value` pair (key may be "section.key" or a bare key).
void set_config_value(RunConfig &config, std::string_view key, std::string_view value);

std::vector<double> parse_eps_list(std::string_view text);
std::vector<size_t> parse_size_list(std::string_view text);

}  // namespace qosd

#endif
