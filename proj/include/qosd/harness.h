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

#ifndef QOSD_HARNESS_H
#define QOSD_HARNESS_H

#include <iosfwd>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qosd/adosd.h"
#include "qosd/bp4.h"
#include "qosd/channel.h"

namespace qosd {

enum class Pipeline { kBp, kBpOsd0, kBpOsdW, kBpAdosd, kAmbp, kAmbpAdosd };
std::string_view pipeline_name(Pipeline pipeline);
Pipeline parse_pipeline(std::string_view name);

struct PipelineConfig {
    Pipeline pipeline = Pipeline::kBpAdosd;
    /// BP settings. The prior error rate is replaced by the channel rate.
    BpConfig bp;
    /// Use alpha_of_epsilon(channel rate) instead of bp.alpha.
    bool alpha_from_epsilon = false;
    /// Step sizes tried in order by the adaptive pipelines.
    std::vector<double> alphas = alpha_sequence(1.6, -0.01, 0.5);
    double theta = kDefaultTheta;
    /// Candidate budget; 0 picks the OSD-2 budget (or the order's full count
    /// for bp+osdw with an explicit order).
    uint64_t budget = 0;
    /// Order for bp+osdw. Unset means the largest order the budget allows.
    std::optional<size_t> order;
    size_t w_backup = 2;
    ReliabilityMetric metric = ReliabilityMetric::kHardThenSoft;
};

/// Furthest stage a trial reached.
enum class Stage { kBpSuccess, kNone, kOsd, kAdosdOrder0, kAdosdOrderW, kAdosdFallback };
std::string_view stage_name(Stage stage);

struct DecodeOutcome {
    /// False when BP failed and no post-processor ran.
    bool valid = false;
    BitVec estimate;
    BpStatus bp_status = BpStatus::kFailure;
    size_t bp_iterations = 0;
    double alpha = 1.0;
    Stage stage = Stage::kNone;
    /// -1 when no OSD ran.
    int osd_order = -1;
    size_t m_reduced = 0;
    size_t cols_reduced = 0;
    double t_bp_us = 0;
    double t_post_us = 0;
};

/// BP plus the configured post-processor. One instance per worker thread.
class DecoderPipeline {
   public:
    DecoderPipeline(const StabilizerCode &code, const PipelineConfig &config, double epsilon);
    DecodeOutcome decode(const BitVec &syndrome, std::mt19937_64 &rng);

    const StabilizerCode &code() const {
        return *code_;
    }

   private:
    const StabilizerCode *code_;
    PipelineConfig config_;
    Bp4Decoder bp_;
    uint64_t budget_;
};

struct TrialRecord {
    uint64_t trial = 0;
    uint64_t seed = 0;
    size_t err_weight = 0;
    BpStatus bp_status = BpStatus::kFailure;
    size_t bp_iters = 0;
    Stage stage = Stage::kNone;
    int osd_order = -1;
    size_t m_red = 0;
    size_t cols_red = 0;
    bool logical_error = false;
    double t_bp_us = 0;
    double t_post_us = 0;
    /// Only kept with RunOptions::keep_vectors.
    BitVec error;
    BitVec estimate;
};

struct AggregateStats {
    double epsilon = 0;
    uint64_t trials = 0;
    uint64_t logical_errors = 0;
    double ler = 0;
    double ler_ci_low = 0;
    double ler_ci_high = 0;
    uint64_t bp_failures = 0;
    double bp_failure_rate = 0;
    uint64_t post_processed = 0;
    double osd0_only_fraction = 0;
    double higher_order_fraction = 0;
    double fallback_fraction = 0;
    double dims_le_20_fraction = 0;
    double dims_le_30_fraction = 0;
    double mean_iterations_on_success = 0;
    /// Median-of-means timings in microseconds; absent when the stage never ran.
    std::optional<double> time_per_bp_iteration_us;
    std::optional<double> time_per_adosd_us;
    std::optional<double> time_per_osd_us;
};

nlohmann::json to_json(const AggregateStats &stats);

struct RunOptions {
    uint64_t max_trials = 1000;
    /// Stop after the batch in which this many logical errors were reached. 0 disables.
    uint64_t target_logical_errors = 0;
    uint64_t seed = 1;
    size_t workers = 1;
    /// Trials per batch. The stopping rule is only checked between batches.
    size_t batch_size = 1000;
    /// Leading trials excluded from timing statistics.
    size_t warmup_trials = 0;
    size_t timing_groups = 10;
    bool keep_records = false;
    bool keep_vectors = false;
};

struct RunResult {
    AggregateStats stats;
    std::vector<TrialRecord> records;
};

/// Monte-Carlo trials on one code at one error rate.
RunResult run_trials(
    const StabilizerCode &code, const ChannelModel &channel, const PipelineConfig &config, const RunOptions &options);

/// Decodes each listed error once. `prior_epsilon` sets the BP prior.
RunResult run_error_list(
    const StabilizerCode &code,
    const std::vector<BitVec> &errors,
    double prior_epsilon,
    const PipelineConfig &config,
    const RunOptions &options);

AggregateStats aggregate(
    const std::vector<TrialRecord> &records, const StabilizerCode &code, double epsilon, size_t warmup_trials,
    size_t timing_groups);

/// 95% Wilson score interval for k successes out of n.
std::pair<double, double> wilson_interval(uint64_t k, uint64_t n, double z = 1.959963984540054);

/// Median over contiguous groups of the per-group ratio sum(num) / sum(den).
std::optional<double> median_of_means(const std::vector<double> &num, const std::vector<double> &den, size_t groups);

extern const char *const kTrialCsvHeader;
void write_trial_csv_header(std::ostream &out);
void write_trial_csv_row(std::ostream &out, const TrialRecord &record);

/// Every single-qubit Pauli error (3n of them).
std::vector<BitVec> all_weight_one_errors(size_t num_qubits);

}  // namespace qosd

#endif
