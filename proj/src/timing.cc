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

#include "qosd/timing.h"

#include <chrono>

namespace qosd {

namespace {

using Clock = std::chrono::steady_clock;

double micros_since(Clock::time_point start) {
    return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

}  // namespace

TimingReport timing_probe(const StabilizerCode &code, double epsilon, const TimingOptions &options) {
    ChannelModel channel{epsilon};
    channel.validate();
    BpConfig bp_config = options.pipeline.bp;
    bp_config.epsilon = epsilon;
    if (options.pipeline.alpha_from_epsilon) {
        bp_config.alpha = alpha_of_epsilon(epsilon);
    }
    Bp4Decoder bp(code, bp_config);
    AdosdConfig ac;
    ac.theta = options.pipeline.theta;
    ac.budget = options.pipeline.budget == 0 ? osd2_budget(code) : options.pipeline.budget;
    ac.w_backup = options.pipeline.w_backup;
    ac.metric = options.pipeline.metric;
    const uint64_t osd2 = osd2_budget(code);

    TimingReport report;
    report.epsilon = epsilon;
    std::vector<double> bp_time, bp_iters, adosd_time, osd2_time;
    uint64_t success_iters = 0, successes = 0;
    const uint64_t total = options.trials + options.warmup_trials;
    for (uint64_t t = 0; t < total; t++) {
        std::mt19937_64 rng(trial_seed(options.seed, t));
        BitVec error = sample_error(channel, code.n(), rng);
        BitVec syndrome = code.syndrome(error);
        const bool timed = t >= options.warmup_trials;

        auto start = Clock::now();
        BpOutcome out = bp.decode(syndrome, &rng);
        double elapsed = micros_since(start);
        if (timed) {
            report.trials++;
            bp_time.push_back(elapsed);
            bp_iters.push_back(static_cast<double>(out.belief.iterations_run));
        }
        if (out.success()) {
            if (timed) {
                successes++;
                success_iters += out.belief.iterations_run;
            }
            continue;
        }
        start = Clock::now();
        AdosdOutcome a = adosd(code, syndrome, out.belief, ac);
        double adosd_elapsed = micros_since(start);
        is_logical_error(code, error, a.estimate);
        double osd2_elapsed = 0;
        if (options.measure_osd2) {
            start = Clock::now();
            ReliabilityOrder order = build_order(out.belief, ac.metric);
            OsdSystem system = build_full_system(code, syndrome, order.order, out.belief.hard_bits());
            OsdResult r = osd_w(system, 2, osd2);
            osd2_elapsed = micros_since(start);
            is_logical_error(code, error, r.estimate);
        }
        if (timed) {
            report.bp_failures++;
            adosd_time.push_back(adosd_elapsed);
            if (options.measure_osd2) {
                osd2_time.push_back(osd2_elapsed);
            }
        }
    }
    report.bp_failure_rate = report.trials ? static_cast<double>(report.bp_failures) / static_cast<double>(report.trials) : 0;
    report.mean_iterations_on_success = successes ? static_cast<double>(success_iters) / static_cast<double>(successes) : 0;
    report.per_bp_iteration_us = median_of_means(bp_time, bp_iters, options.groups).value_or(0);
    report.post_calls = adosd_time.size();
    report.per_adosd_us = median_of_means(adosd_time, std::vector<double>(adosd_time.size(), 1.0), options.groups);
    report.per_osd2_us = median_of_means(osd2_time, std::vector<double>(osd2_time.size(), 1.0), options.groups);
    if (report.per_adosd_us && report.per_bp_iteration_us > 0) {
        report.adosd_in_bp_iterations = *report.per_adosd_us / report.per_bp_iteration_us;
    }
    if (report.per_adosd_us && report.per_osd2_us && *report.per_osd2_us > 0) {
        report.adosd_over_osd2 = *report.per_adosd_us / *report.per_osd2_us;
    }
    return report;
}

nlohmann::json to_json(const TimingReport &r) {
    auto opt = [](const std::optional<double> &v) {
        return v.has_value() ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    return nlohmann::json{
        {"epsilon", r.epsilon},
        {"trials", r.trials},
        {"bp_failures", r.bp_failures},
        {"bp_failure_rate", r.bp_failure_rate},
        {"mean_iterations_on_success", r.mean_iterations_on_success},
        {"per_bp_iteration_us", r.per_bp_iteration_us},
        {"post_calls", r.post_calls},
        {"per_adosd_us", opt(r.per_adosd_us)},
        {"per_osd2_us", opt(r.per_osd2_us)},
        {"adosd_in_bp_iterations", opt(r.adosd_in_bp_iterations)},
        {"adosd_over_osd2", opt(r.adosd_over_osd2)},
    };
}

}  // namespace qosd
