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

#include "qosd/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>

namespace qosd {

namespace {

using Clock = std::chrono::steady_clock;

double micros_since(Clock::time_point start) {
    return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

// BP needs a positive prior; a noiseless channel only ever produces zero syndromes.
constexpr double kMinPriorEpsilon = 1e-12;

bool is_adosd_stage(Stage s) {
    return s == Stage::kAdosdOrder0 || s == Stage::kAdosdOrderW || s == Stage::kAdosdFallback;
}

bool uses_adaptive_alpha(Pipeline p) {
    return p == Pipeline::kAmbp || p == Pipeline::kAmbpAdosd;
}

}  // namespace

std::string_view pipeline_name(Pipeline pipeline) {
    switch (pipeline) {
        case Pipeline::kBp:
            return "bp";
        case Pipeline::kBpOsd0:
            return "bp+osd0";
        case Pipeline::kBpOsdW:
            return "bp+osdw";
        case Pipeline::kBpAdosd:
            return "bp+adosd";
        case Pipeline::kAmbp:
            return "ambp";
        case Pipeline::kAmbpAdosd:
            return "ambp+adosd";
    }
    return "?";
}

Pipeline parse_pipeline(std::string_view name) {
    for (auto p : {Pipeline::kBp, Pipeline::kBpOsd0, Pipeline::kBpOsdW, Pipeline::kBpAdosd, Pipeline::kAmbp,
                   Pipeline::kAmbpAdosd}) {
        if (pipeline_name(p) == name) {
            return p;
        }
    }
    throw std::invalid_argument(
        "unknown pipeline '" + std::string(name) + "' (expected bp, bp+osd0, bp+osdw, bp+adosd, ambp, ambp+adosd)");
}

std::string_view stage_name(Stage stage) {
    switch (stage) {
        case Stage::kBpSuccess:
            return "bp_success";
        case Stage::kNone:
            return "none";
        case Stage::kOsd:
            return "osd";
        case Stage::kAdosdOrder0:
            return "adosd_order0";
        case Stage::kAdosdOrderW:
            return "adosd_orderw";
        case Stage::kAdosdFallback:
            return "adosd_fallback";
    }
    return "?";
}

static BpConfig bp_config_for(const PipelineConfig &config, double epsilon) {
    BpConfig bp = config.bp;
    bp.epsilon = std::max(epsilon, kMinPriorEpsilon);
    if (config.alpha_from_epsilon) {
        bp.alpha = alpha_of_epsilon(bp.epsilon);
    }
    return bp;
}

DecoderPipeline::DecoderPipeline(const StabilizerCode &code, const PipelineConfig &config, double epsilon)
    : code_(&code), config_(config), bp_(code, bp_config_for(config, epsilon)) {
    if (uses_adaptive_alpha(config_.pipeline) && config_.alphas.empty()) {
        throw std::invalid_argument("adaptive pipelines need a nonempty alpha sequence");
    }
    if (config_.budget != 0) {
        budget_ = config_.budget;
    } else if (config_.pipeline == Pipeline::kBpOsdW && config_.order.has_value()) {
        budget_ = candidate_count(code.n() + code.k(), *config_.order);
    } else {
        budget_ = osd2_budget(code);
    }
}

DecodeOutcome DecoderPipeline::decode(const BitVec &syndrome, std::mt19937_64 &rng) {
    DecodeOutcome out;
    auto start = Clock::now();
    BpOutcome bp;
    if (uses_adaptive_alpha(config_.pipeline)) {
        size_t iterations = 0;
        for (double alpha : config_.alphas) {
            bp_.set_alpha(alpha);
            bp = bp_.decode(syndrome, &rng);
            iterations += bp.belief.iterations_run;
            if (bp.success()) {
                break;
            }
        }
        out.bp_iterations = iterations;
    } else {
        bp = bp_.decode(syndrome, &rng);
        out.bp_iterations = bp.belief.iterations_run;
    }
    out.t_bp_us = micros_since(start);
    out.bp_status = bp.status;
    out.alpha = bp.alpha;
    if (bp.success()) {
        out.valid = true;
        out.stage = Stage::kBpSuccess;
        out.estimate = std::move(bp.estimate);
        return out;
    }

    start = Clock::now();
    switch (config_.pipeline) {
        case Pipeline::kBp:
        case Pipeline::kAmbp:
            out.stage = Stage::kNone;
            return out;
        case Pipeline::kBpOsd0:
        case Pipeline::kBpOsdW: {
            ReliabilityOrder order = build_order(bp.belief, config_.metric);
            OsdSystem system = build_full_system(*code_, syndrome, order.order, bp.belief.hard_bits());
            if (!system.consistent()) {
                throw CodeError("syndrome is not in the column space of H Lambda");
            }
            size_t w = 0;
            if (config_.pipeline == Pipeline::kBpOsdW) {
                w = config_.order.value_or(order_from_budget(system.reliable_length(), budget_));
            }
            OsdResult r = osd_w(system, w, config_.pipeline == Pipeline::kBpOsd0 ? 1 : budget_);
            out.estimate = std::move(r.estimate);
            out.osd_order = static_cast<int>(r.order);
            out.stage = Stage::kOsd;
            out.m_reduced = code_->m();
            out.cols_reduced = 2 * code_->n();
            break;
        }
        case Pipeline::kBpAdosd:
        case Pipeline::kAmbpAdosd: {
            AdosdConfig ac;
            ac.theta = config_.theta;
            ac.budget = budget_;
            ac.w_backup = config_.w_backup;
            ac.metric = config_.metric;
            AdosdOutcome r = adosd(*code_, syndrome, bp.belief, ac);
            out.estimate = std::move(r.estimate);
            out.osd_order = static_cast<int>(r.order);
            out.m_reduced = r.m_reduced;
            out.cols_reduced = r.cols_reduced;
            out.stage = r.path == AdosdPath::kFallback
                            ? Stage::kAdosdFallback
                            : (r.path == AdosdPath::kOrder0 ? Stage::kAdosdOrder0 : Stage::kAdosdOrderW);
            break;
        }
    }
    out.t_post_us = micros_since(start);
    out.valid = true;
    return out;
}

namespace {

TrialRecord finish_record(
    const StabilizerCode &code, uint64_t trial, uint64_t seed, const BitVec &error, DecodeOutcome &&d,
    bool keep_vectors) {
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = seed;
    rec.err_weight = pauli_weight(error.words(), code.n());
    rec.bp_status = d.bp_status;
    rec.bp_iters = d.bp_iterations;
    rec.stage = d.stage;
    rec.osd_order = d.osd_order;
    rec.m_red = d.m_reduced;
    rec.cols_red = d.cols_reduced;
    rec.t_bp_us = d.t_bp_us;
    rec.t_post_us = d.t_post_us;
    // A failed decode counts as a logical error. Valid estimates are checked
    // against the syndrome inside is_logical_error.
    rec.logical_error = !d.valid || is_logical_error(code, error, d.estimate);
    if (keep_vectors) {
        rec.error = error;
        rec.estimate = std::move(d.estimate);
    }
    return rec;
}

// Runs trial indices [begin, end) on `workers` threads. `make_error` maps a trial
// index and its RNG to the injected error.
template <typename MakeError>
void run_range(
    const StabilizerCode &code, const PipelineConfig &config, double epsilon, const RunOptions &options,
    uint64_t begin, uint64_t end, std::vector<std::unique_ptr<DecoderPipeline>> &decoders,
    std::vector<TrialRecord> &records, MakeError &&make_error) {
    records.resize(end);
    std::atomic<uint64_t> next{begin};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&](size_t worker) {
        try {
            if (!decoders[worker]) {
                decoders[worker] = std::make_unique<DecoderPipeline>(code, config, epsilon);
            }
            DecoderPipeline &decoder = *decoders[worker];
            while (true) {
                uint64_t t = next.fetch_add(1);
                if (t >= end) {
                    return;
                }
                uint64_t seed = trial_seed(options.seed, t);
                std::mt19937_64 rng(seed);
                BitVec error = make_error(t, rng);
                BitVec syndrome = code.syndrome(error);
                DecodeOutcome d = decoder.decode(syndrome, rng);
                records[t] = finish_record(code, t, seed, error, std::move(d), options.keep_vectors);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    };
    const size_t workers = std::max<size_t>(1, options.workers);
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (size_t w = 0; w < workers; w++) {
            threads.emplace_back(work, w);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace

RunResult run_trials(
    const StabilizerCode &code, const ChannelModel &channel, const PipelineConfig &config, const RunOptions &options) {
    channel.validate();
    if (options.max_trials < 1) {
        throw std::invalid_argument("need at least one trial");
    }
    const size_t batch = std::max<size_t>(1, options.batch_size);
    std::vector<std::unique_ptr<DecoderPipeline>> decoders(std::max<size_t>(1, options.workers));
    std::vector<TrialRecord> records;
    uint64_t done = 0;
    uint64_t errors = 0;
    while (done < options.max_trials) {
        uint64_t end = std::min<uint64_t>(options.max_trials, done + batch);
        run_range(code, config, channel.epsilon, options, done, end, decoders, records, [&](uint64_t, std::mt19937_64 &rng) {
            return sample_error(channel, code.n(), rng);
        });
        for (uint64_t t = done; t < end; t++) {
            errors += records[t].logical_error;
        }
        done = end;
        if (options.target_logical_errors > 0 && errors >= options.target_logical_errors) {
            break;
        }
    }
    RunResult result;
    result.stats = aggregate(records, code, channel.epsilon, options.warmup_trials, options.timing_groups);
    if (options.keep_records) {
        result.records = std::move(records);
    }
    return result;
}

RunResult run_error_list(
    const StabilizerCode &code,
    const std::vector<BitVec> &errors,
    double prior_epsilon,
    const PipelineConfig &config,
    const RunOptions &options) {
    std::vector<std::unique_ptr<DecoderPipeline>> decoders(std::max<size_t>(1, options.workers));
    std::vector<TrialRecord> records;
    run_range(code, config, prior_epsilon, options, 0, errors.size(), decoders, records, [&](uint64_t t, std::mt19937_64 &) {
        if (errors[t].size() != 2 * code.n()) {
            throw std::invalid_argument("listed error has the wrong length");
        }
        return errors[t];
    });
    RunResult result;
    result.stats = aggregate(records, code, prior_epsilon, 0, options.timing_groups);
    if (options.keep_records) {
        result.records = std::move(records);
    }
    return result;
}

std::pair<double, double> wilson_interval(uint64_t k, uint64_t n, double z) {
    if (n == 0) {
        return {0, 1};
    }
    double p = static_cast<double>(k) / static_cast<double>(n);
    double nn = static_cast<double>(n);
    double denom = 1 + z * z / nn;
    double center = (p + z * z / (2 * nn)) / denom;
    double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
    double low = k == 0 ? 0.0 : std::max(0.0, center - half);
    double high = k == n ? 1.0 : std::min(1.0, center + half);
    return {low, high};
}

std::optional<double> median_of_means(const std::vector<double> &num, const std::vector<double> &den, size_t groups) {
    if (num.empty()) {
        return std::nullopt;
    }
    groups = std::clamp<size_t>(groups, 1, num.size());
    std::vector<double> means;
    for (size_t g = 0; g < groups; g++) {
        size_t lo = num.size() * g / groups;
        size_t hi = num.size() * (g + 1) / groups;
        double a = 0, b = 0;
        for (size_t t = lo; t < hi; t++) {
            a += num[t];
            b += den[t];
        }
        if (b > 0) {
            means.push_back(a / b);
        }
    }
    if (means.empty()) {
        return std::nullopt;
    }
    std::sort(means.begin(), means.end());
    size_t mid = means.size() / 2;
    return means.size() % 2 ? means[mid] : (means[mid - 1] + means[mid]) / 2;
}

AggregateStats aggregate(
    const std::vector<TrialRecord> &records, const StabilizerCode &code, double epsilon, size_t warmup_trials,
    size_t timing_groups) {
    AggregateStats s;
    s.epsilon = epsilon;
    s.trials = records.size();
    uint64_t osd0_only = 0, higher = 0, fallback = 0, adosd_calls = 0, dims20 = 0, dims30 = 0;
    uint64_t success_iters = 0, successes = 0;
    std::vector<double> bp_t, bp_it, adosd_t, osd_t, ones;
    for (size_t t = 0; t < records.size(); t++) {
        const TrialRecord &r = records[t];
        s.logical_errors += r.logical_error;
        if (r.bp_status == BpStatus::kSuccess) {
            successes++;
            success_iters += r.bp_iters;
        } else {
            s.bp_failures++;
            if (r.stage != Stage::kNone) {
                s.post_processed++;
                if (r.stage == Stage::kAdosdOrder0 || (r.stage == Stage::kOsd && r.osd_order == 0)) {
                    osd0_only++;
                } else if (r.stage == Stage::kAdosdFallback) {
                    fallback++;
                } else {
                    higher++;
                }
            }
        }
        if (is_adosd_stage(r.stage)) {
            adosd_calls++;
            double eff = std::max(
                static_cast<double>(r.m_red) / static_cast<double>(code.m()),
                static_cast<double>(r.cols_red) / static_cast<double>(2 * code.n()));
            dims20 += eff <= 0.2;
            dims30 += eff <= 0.3;
        }
        if (t < warmup_trials) {
            continue;
        }
        bp_t.push_back(r.t_bp_us);
        bp_it.push_back(static_cast<double>(r.bp_iters));
        if (is_adosd_stage(r.stage)) {
            adosd_t.push_back(r.t_post_us);
        } else if (r.stage == Stage::kOsd) {
            osd_t.push_back(r.t_post_us);
        }
    }
    auto frac = [](uint64_t a, uint64_t b) {
        return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
    };
    s.ler = frac(s.logical_errors, s.trials);
    std::tie(s.ler_ci_low, s.ler_ci_high) = wilson_interval(s.logical_errors, s.trials);
    s.bp_failure_rate = frac(s.bp_failures, s.trials);
    s.osd0_only_fraction = frac(osd0_only, s.post_processed);
    s.higher_order_fraction = frac(higher, s.post_processed);
    s.fallback_fraction = frac(fallback, s.post_processed);
    s.dims_le_20_fraction = frac(dims20, adosd_calls);
    s.dims_le_30_fraction = frac(dims30, adosd_calls);
    s.mean_iterations_on_success = frac(success_iters, successes);
    s.time_per_bp_iteration_us = median_of_means(bp_t, bp_it, timing_groups);
    s.time_per_adosd_us = median_of_means(adosd_t, std::vector<double>(adosd_t.size(), 1.0), timing_groups);
    s.time_per_osd_us = median_of_means(osd_t, std::vector<double>(osd_t.size(), 1.0), timing_groups);
    return s;
}

nlohmann::json to_json(const AggregateStats &s) {
    nlohmann::json j;
    j["epsilon"] = s.epsilon;
    j["trials"] = s.trials;
    j["logical_errors"] = s.logical_errors;
    j["ler"] = s.ler;
    j["ler_ci_low"] = s.ler_ci_low;
    j["ler_ci_high"] = s.ler_ci_high;
    j["bp_failures"] = s.bp_failures;
    j["bp_failure_rate"] = s.bp_failure_rate;
    j["post_processed"] = s.post_processed;
    j["osd0_only_fraction"] = s.osd0_only_fraction;
    j["higher_order_fraction"] = s.higher_order_fraction;
    j["fallback_fraction"] = s.fallback_fraction;
    j["dims_le_20_fraction"] = s.dims_le_20_fraction;
    j["dims_le_30_fraction"] = s.dims_le_30_fraction;
    j["mean_iterations_on_success"] = s.mean_iterations_on_success;
    auto opt = [](const std::optional<double> &v) {
        return v.has_value() ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    j["time_per_bp_iteration_us"] = opt(s.time_per_bp_iteration_us);
    j["time_per_adosd_us"] = opt(s.time_per_adosd_us);
    j["time_per_osd_us"] = opt(s.time_per_osd_us);
    return j;
}

const char *const kTrialCsvHeader =
    "trial,seed,err_weight,bp_status,bp_iters,stage,osd_order,m_red,cols_red,logical_error,t_bp_us,t_post_us";

void write_trial_csv_header(std::ostream &out) {
    out << kTrialCsvHeader << "\n";
}

void write_trial_csv_row(std::ostream &out, const TrialRecord &r) {
    char times[64];
    std::snprintf(times, sizeof(times), "%.3f,%.3f", r.t_bp_us, r.t_post_us);
    out << r.trial << ',' << r.seed << ',' << r.err_weight << ','
        << (r.bp_status == BpStatus::kSuccess ? "success" : "failure") << ',' << r.bp_iters << ','
        << stage_name(r.stage) << ',' << r.osd_order << ',' << r.m_red << ',' << r.cols_red << ','
        << (r.logical_error ? 1 : 0) << ',' << times << "\n";
}

std::vector<BitVec> all_weight_one_errors(size_t num_qubits) {
    std::vector<BitVec> out;
    for (size_t i = 0; i < num_qubits; i++) {
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            SymplecticVector v(num_qubits);
            v.set(i, p);
            out.push_back(v.bits());
        }
    }
    return out;
}

}  // namespace qosd
