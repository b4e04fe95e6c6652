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

#include "qosd/adosd.h"

namespace qosd {

HighlyReliableMask select_highly_reliable(const BeliefState &belief, size_t iterations, double theta) {
    const size_t n = belief.num_qubits();
    HighlyReliableMask mask;
    mask.theta = theta;
    mask.selected = BitVec(2 * n);
    for (size_t i = 0; i < n; i++) {
        if (belief.eta[i] != iterations && belief.eta[i] != iterations + 1) {
            continue;
        }
        if (soft_reliability(belief.q[i], Pauli::X) >= theta) {
            mask.selected.set(i, true);
            mask.v++;
        }
        if (soft_reliability(belief.q[i], Pauli::Z) >= theta) {
            mask.selected.set(n + i, true);
            mask.v++;
        }
    }
    return mask;
}

std::string_view hrsr_status_name(HrsrStatus status) {
    switch (status) {
        case HrsrStatus::kOk:
            return "ok";
        case HrsrStatus::kVerificationFailed:
            return "verification_failed";
        case HrsrStatus::kUnsolvable:
            return "unsolvable";
    }
    return "?";
}

ReducedSystem hrsr(
    const StabilizerCode &code,
    const BitVec &syndrome,
    const BeliefState &belief,
    const BitVec &hard,
    double theta,
    const ReliabilityOrder &order,
    const HrsrOptions &options) {
    if (belief.num_qubits() != code.n()) {
        throw std::invalid_argument("hrsr inputs do not match the code dimensions");
    }
    return hrsr(code, syndrome, select_highly_reliable(belief, belief.iterations_run, theta), hard, order, options);
}

ReducedSystem hrsr(
    const StabilizerCode &code,
    const BitVec &syndrome,
    HighlyReliableMask mask,
    const BitVec &hard,
    const ReliabilityOrder &order,
    const HrsrOptions &options) {
    const size_t n = code.n();
    const size_t m = code.m();
    if (syndrome.size() != m || hard.size() != 2 * n || order.order.size() != 2 * n ||
        mask.selected.size() != 2 * n) {
        throw std::invalid_argument("hrsr inputs do not match the code dimensions");
    }
    ReducedSystem out;
    out.mask = std::move(mask);
    const BitVec &selected = out.mask.selected;

    out.sigma.reserve(2 * n);
    for (uint32_t b : order.order) {
        if (!selected[b]) {
            out.sigma.push_back(b);
        }
    }
    out.cols_reduced = out.sigma.size();
    for (uint32_t b : order.order) {
        if (selected[b]) {
            out.sigma.push_back(b);
        }
    }
    out.e_fixed = BitVec(2 * n);
    for_each_set_bit(selected.words(), [&](size_t b) {
        if (hard[b]) {
            out.e_fixed.set(b, true);
        }
    });

    // A row moves to the bottom block iff every bit it touches is selected.
    const auto &support = code.check_lambda_support();
    std::vector<uint32_t> bottom;
    out.tau.reserve(m);
    for (size_t r = 0; r < m; r++) {
        bool only_selected = true;
        for (uint32_t b : support[r]) {
            if (!selected[b]) {
                only_selected = false;
                break;
            }
        }
        (only_selected ? bottom : out.tau).push_back(static_cast<uint32_t>(r));
    }
    out.m_reduced = out.tau.size();
    out.tau.insert(out.tau.end(), bottom.begin(), bottom.end());

    auto fixed_parity = [&](uint32_t r) {
        bool parity = false;
        for (uint32_t b : support[r]) {
            parity ^= out.e_fixed[b];
        }
        return parity;
    };
    for (uint32_t r : bottom) {
        if (fixed_parity(r) != syndrome[r]) {
            out.status = HrsrStatus::kVerificationFailed;
            return out;
        }
    }
    out.s_tilde = BitVec(out.m_reduced);
    for (size_t t = 0; t < out.m_reduced; t++) {
        uint32_t r = out.tau[t];
        out.s_tilde.set(t, syndrome[r] ^ fixed_parity(r));
    }

    if (options.keep_blocks) {
        std::vector<int32_t> column_position(2 * n);
        for (size_t t = 0; t < 2 * n; t++) {
            column_position[out.sigma[t]] = static_cast<int32_t>(t);
        }
        const size_t c = out.cols_reduced;
        const size_t v = 2 * n - c;
        out.h_tilde = GF2Matrix(out.m_reduced, c);
        out.b_block = GF2Matrix(out.m_reduced, v);
        out.c_block = GF2Matrix(m - out.m_reduced, v);
        for (size_t t = 0; t < m; t++) {
            for (uint32_t b : support[out.tau[t]]) {
                size_t p = static_cast<size_t>(column_position[b]);
                if (t < out.m_reduced) {
                    if (p < c) {
                        out.h_tilde.set(t, p, true);
                    } else {
                        out.b_block.set(t, p - c, true);
                    }
                } else {
                    out.c_block.set(t - out.m_reduced, p - c, true);
                }
            }
        }
    }

    std::vector<uint32_t> top(out.tau.begin(), out.tau.begin() + static_cast<long>(out.m_reduced));
    OsdProblem problem;
    problem.num_qubits = n;
    problem.rows = support;
    problem.row_subset = &top;
    problem.columns = std::span<const uint32_t>(out.sigma).first(out.cols_reduced);
    problem.syndrome = out.s_tilde;
    problem.hard = hard;
    problem.fixed = out.e_fixed;
    OsdOptions osd_options;
    osd_options.record_row_ops = options.record_row_ops;
    out.system.emplace(OsdSystem::build(problem, osd_options));
    if (!out.system->consistent()) {
        out.status = HrsrStatus::kUnsolvable;
    }
    return out;
}

BitVec lift(const ReducedSystem &reduced, const BitVec &reduced_solution) {
    if (reduced_solution.size() != reduced.cols_reduced) {
        throw std::invalid_argument("reduced solution length does not match the reduced system");
    }
    BitVec out = reduced.e_fixed;
    for_each_set_bit(reduced_solution.words(), [&](size_t t) {
        out.set(reduced.sigma[t], true);
    });
    return out;
}

BitVec project(const ReducedSystem &reduced, const BitVec &estimate) {
    BitVec out(reduced.cols_reduced);
    for (size_t t = 0; t < reduced.cols_reduced; t++) {
        if (estimate[reduced.sigma[t]]) {
            out.set(t, true);
        }
    }
    return out;
}

bool corollary_check(std::span<const uint32_t> column_weights, size_t d) {
    for (uint32_t w : column_weights) {
        if (w + 1 >= d) {
            return false;
        }
    }
    return true;
}

FlipClass stabilizer_flip_check(const OsdSystem &system, const StabilizerCode &code, size_t j) {
    return code.logical_action(system.flip_vector(j)).any() ? FlipClass::kNontrivialLogical : FlipClass::kStabilizer;
}

DegeneracyReport degeneracy_report(const OsdSystem &system, const StabilizerCode &code, bool classify_columns) {
    DegeneracyReport report;
    report.all_columns_light = code.distance_trusted() && corollary_check(system, code.d());
    if (classify_columns) {
        report.is_stabilizer.resize(system.reliable_length());
        for (size_t j = 0; j < system.reliable_length(); j++) {
            bool stabilizer = stabilizer_flip_check(system, code, j) == FlipClass::kStabilizer;
            report.is_stabilizer[j] = stabilizer;
            report.nontrivial_columns += !stabilizer;
        }
    }
    return report;
}

std::string_view adosd_path_name(AdosdPath path) {
    switch (path) {
        case AdosdPath::kOrder0:
            return "adosd_order0";
        case AdosdPath::kOrderW:
            return "adosd_orderw";
        case AdosdPath::kFallback:
            return "adosd_fallback";
    }
    return "?";
}

AdosdOutcome adosd(
    const StabilizerCode &code, const BitVec &syndrome, const BeliefState &belief, const AdosdConfig &config) {
    const uint64_t budget = config.budget == 0 ? osd2_budget(code) : config.budget;
    const BitVec hard = belief.hard_bits();
    // The reduced system only depends on the order of the bits left unselected.
    HighlyReliableMask mask = select_highly_reliable(belief, belief.iterations_run, config.theta);
    ReliabilityOrder partial = build_order_with_tail(belief, config.metric, mask.selected);
    ReducedSystem reduced = hrsr(code, syndrome, std::move(mask), hard, partial);

    AdosdOutcome out;
    out.hrsr_status = reduced.status;
    out.v = reduced.mask.v;
    if (!reduced.ok()) {
        ReliabilityOrder order = build_order(belief, config.metric);
        OsdSystem full = build_full_system(code, syndrome, order.order, hard);
        if (!full.consistent()) {
            throw CodeError("syndrome is not in the column space of H Lambda");
        }
        OsdResult r = osd_w(full, config.w_backup, budget);
        out.path = AdosdPath::kFallback;
        out.estimate = std::move(r.estimate);
        out.order = r.order;
        out.candidates = r.candidates;
        out.m_reduced = code.m();
        out.cols_reduced = 2 * code.n();
        return out;
    }
    out.m_reduced = reduced.m_reduced;
    out.cols_reduced = reduced.cols_reduced;
    const OsdSystem &system = *reduced.system;
    const bool classify = config.count_nontrivial || config.nontrivial_only;
    out.report = degeneracy_report(system, code, classify);

    size_t w = out.report.all_columns_light ? 0 : order_from_budget(system.reliable_length(), budget);
    OsdSearchOptions search;
    std::vector<char> allowed;
    if (config.nontrivial_only) {
        allowed.resize(system.reliable_length());
        for (size_t j = 0; j < allowed.size(); j++) {
            allowed[j] = !out.report.is_stabilizer[j];
        }
        search.allowed = &allowed;
    }
    OsdResult r = osd_w(system, w, budget, search);
    out.path = w == 0 ? AdosdPath::kOrder0 : AdosdPath::kOrderW;
    out.estimate = std::move(r.estimate);
    out.order = r.order;
    out.candidates = r.candidates;
    return out;
}

}  // namespace qosd
