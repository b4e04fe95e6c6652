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

#include "qosd/bp4.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qosd {

namespace {

constexpr double kMaxLlr = 30.0;
constexpr double kMaxTanh = 1.0 - 1e-15;
// e^{-kMaxLlr} and e^{kMaxLlr}.
const double kMinRatio = std::exp(-kMaxLlr);
const double kMaxRatio = std::exp(kMaxLlr);

// Likelihood ratios that a qubit error with LLRs gamma (indices 1..3 for X, Y,
// Z relative to I) commutes with X, Y, and Z respectively:
// (1 + e^{-gamma_S}) / (e^{-gamma_a} + e^{-gamma_b}) for {S, a, b} = {X, Y, Z}.
// Only entries whose bit is set in `wanted` (bit w for Pauli w) are computed.
std::array<double, 4> commute_ratios(const std::array<double, 4> &gamma, unsigned wanted) {
    auto neg_exp = [](double g) {
        return std::exp(std::clamp(-g, -700.0, 700.0));
    };
    const double ex = neg_exp(gamma[1]);
    const double ey = neg_exp(gamma[2]);
    const double ez = neg_exp(gamma[3]);
    std::array<double, 4> out = {1, 1, 1, 1};
    if (wanted & 2) {
        out[1] = (1 + ex) / (ey + ez);
    }
    if (wanted & 4) {
        out[2] = (1 + ey) / (ex + ez);
    }
    if (wanted & 8) {
        out[3] = (1 + ez) / (ex + ey);
    }
    return out;
}

// tanh(lambda / 2) for the clamped LLR lambda = ln(ratio).
double tanh_half_of_ratio(double ratio) {
    ratio = std::clamp(ratio, kMinRatio, kMaxRatio);
    return (ratio - 1) / (ratio + 1);
}

Pauli argmin_gamma(const std::array<double, 4> &gamma) {
    int best = 0;
    double best_value = 0;
    for (int w = 1; w < 4; w++) {
        if (gamma[w] < best_value) {
            best = w;
            best_value = gamma[w];
        }
    }
    return static_cast<Pauli>(best);
}

std::array<double, 4> distribution_of(const std::array<double, 4> &gamma) {
    double lo = std::min({0.0, gamma[1], gamma[2], gamma[3]});
    std::array<double, 4> q;
    q[0] = std::exp(lo);
    double total = q[0];
    for (int w = 1; w < 4; w++) {
        q[w] = std::exp(-(gamma[w] - lo));
        total += q[w];
    }
    for (auto &v : q) {
        v /= total;
    }
    return q;
}

}  // namespace

std::string_view schedule_name(BpSchedule schedule) {
    switch (schedule) {
        case BpSchedule::kParallel:
            return "parallel";
        case BpSchedule::kSerial:
            return "serial";
        case BpSchedule::kSerialRandomOrder:
            return "serial_random_order";
    }
    return "?";
}

BpSchedule parse_schedule(std::string_view name) {
    if (name == "parallel") {
        return BpSchedule::kParallel;
    }
    if (name == "serial") {
        return BpSchedule::kSerial;
    }
    if (name == "serial_random_order") {
        return BpSchedule::kSerialRandomOrder;
    }
    throw std::invalid_argument(
        "unknown BP schedule '" + std::string(name) + "' (expected parallel, serial, serial_random_order)");
}

void BpConfig::validate() const {
    if (max_iterations < 1) {
        throw std::invalid_argument("BP needs at least one iteration");
    }
    if (!(alpha > 0)) {
        throw std::invalid_argument("BP alpha must be positive");
    }
    if (!(epsilon > 0 && epsilon < 0.75)) {
        throw std::invalid_argument("BP prior error rate must lie in (0, 3/4)");
    }
}

BitVec BeliefState::hard_bits() const {
    size_t n = hard.size();
    BitVec out(2 * n);
    for (size_t i = 0; i < n; i++) {
        if (has_x(hard[i])) {
            out.set(i, true);
        }
        if (has_z(hard[i])) {
            out.set(n + i, true);
        }
    }
    return out;
}

Pauli hard_decision(const std::array<double, 4> &q) {
    int best = 0;
    for (int w = 1; w < 4; w++) {
        if (q[w] > q[best]) {
            best = w;
        }
    }
    return static_cast<Pauli>(best);
}

double soft_reliability(const std::array<double, 4> &q, Pauli a) {
    if (a == Pauli::X) {
        return std::max(q[1] + q[2], q[0] + q[3]);
    }
    if (a == Pauli::Z) {
        return std::max(q[3] + q[2], q[0] + q[1]);
    }
    throw std::invalid_argument("soft reliability is defined for the X and Z bits only");
}

double soft_reliability(const BeliefState &belief, size_t qubit, Pauli a) {
    return soft_reliability(belief.q.at(qubit), a);
}

Bp4Decoder::Bp4Decoder(const StabilizerCode &code, const BpConfig &config) : code_(&code), config_(config) {
    config_.validate();
    const size_t n = code.n();
    const size_t m = code.m();
    double eps = config_.epsilon;
    prior_llr_ = {0, std::log((1 - eps) / (eps / 3)), std::log((1 - eps) / (eps / 3)),
                  std::log((1 - eps) / (eps / 3))};

    check_start_.push_back(0);
    std::vector<uint32_t> degree(n, 0);
    for (size_t j = 0; j < m; j++) {
        auto row = code.check().row(j);
        std::vector<uint32_t> qubits;
        for_each_set_bit(row, [&](size_t c) {
            qubits.push_back(static_cast<uint32_t>(c < n ? c : c - n));
        });
        std::sort(qubits.begin(), qubits.end());
        qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
        for (uint32_t i : qubits) {
            Pauli p = pauli_from_bits(get_bit(row, i), get_bit(row, n + i));
            edges_.push_back({static_cast<uint32_t>(j), i, p});
            degree[i]++;
        }
        check_start_.push_back(static_cast<uint32_t>(edges_.size()));
    }
    qubit_start_.assign(n + 1, 0);
    for (size_t i = 0; i < n; i++) {
        qubit_start_[i + 1] = qubit_start_[i] + degree[i];
    }
    qubit_edges_.resize(edges_.size());
    std::vector<uint32_t> fill(qubit_start_.begin(), qubit_start_.end() - 1);
    for (size_t e = 0; e < edges_.size(); e++) {
        qubit_edges_[fill[edges_[e].qubit]++] = static_cast<uint32_t>(e);
    }
    qubit_paulis_.assign(n, 0);
    for (const Edge &edge : edges_) {
        qubit_paulis_[edge.qubit] |= 1u << static_cast<unsigned>(edge.pauli);
    }
    std::array<double, 4> prior_ratio = commute_ratios(prior_llr_, 0xE);
    for (int w = 0; w < 4; w++) {
        prior_message_[w] = tanh_half_of_ratio(prior_ratio[w]);
    }
    edge_tanh_.resize(edges_.size());
    check_ratio_.resize(edges_.size());
    check_inv_ratio_.resize(edges_.size());
    // Products of up to 20 ratios in [e^-30, e^30] stay inside double range.
    std::vector<std::array<uint32_t, 4>> type_count(n, {0, 0, 0, 0});
    for (const Edge &edge : edges_) {
        products_are_safe_ = products_are_safe_ && ++type_count[edge.qubit][static_cast<int>(edge.pauli)] <= 20;
    }
    gamma_.resize(n);
    size_t max_check_degree = 0;
    for (size_t j = 0; j < m; j++) {
        max_check_degree = std::max<size_t>(max_check_degree, check_start_[j + 1] - check_start_[j]);
    }
    scratch_prefix_.resize(max_check_degree + 1);
    sweep_order_.resize(n);
}

void Bp4Decoder::set_alpha(double alpha) {
    if (!(alpha > 0)) {
        throw std::invalid_argument("BP alpha must be positive");
    }
    config_.alpha = alpha;
}

void Bp4Decoder::set_check_message(uint32_t edge, double product, bool flipped) {
    product = std::clamp(flipped ? -product : product, -kMaxTanh, kMaxTanh);
    // The message is delta = 2 atanh(p) = ln((1 + p) / (1 - p)), kept as e^{delta}
    // and e^{-delta} with |delta| clamped.
    const double ratio = (1 + product) / (1 - product);
    if (ratio > kMaxRatio) {
        check_ratio_[edge] = kMaxRatio;
        check_inv_ratio_[edge] = kMinRatio;
    } else if (ratio < kMinRatio) {
        check_ratio_[edge] = kMinRatio;
        check_inv_ratio_[edge] = kMaxRatio;
    } else {
        check_ratio_[edge] = ratio;
        check_inv_ratio_[edge] = (1 - product) / (1 + product);
    }
}

void Bp4Decoder::check_to_qubit(size_t check, const BitVec &syndrome) {
    const uint32_t begin = check_start_[check];
    const uint32_t end = check_start_[check + 1];
    // Exclusive products via prefix products and a running suffix.
    scratch_prefix_[0] = 1.0;
    for (uint32_t e = begin; e < end; e++) {
        scratch_prefix_[e - begin + 1] = scratch_prefix_[e - begin] * edge_tanh_[e];
    }
    const bool flipped = syndrome[check];
    double suffix = 1.0;
    for (uint32_t e = end; e-- > begin;) {
        set_check_message(e, scratch_prefix_[e - begin] * suffix, flipped);
        suffix *= edge_tanh_[e];
    }
}

void Bp4Decoder::update_qubit(size_t qubit) {
    // by_type[S] sums delta over the checks acting on this qubit with Pauli S.
    std::array<double, 4> by_type = {0, 0, 0, 0};
    if (products_are_safe_) {
        std::array<double, 4> product = {1, 1, 1, 1};
        for (uint32_t k = qubit_start_[qubit]; k < qubit_start_[qubit + 1]; k++) {
            uint32_t e = qubit_edges_[k];
            product[static_cast<int>(edges_[e].pauli)] *= check_ratio_[e];
        }
        const unsigned present = qubit_paulis_[qubit];
        for (int w = 1; w < 4; w++) {
            if (present & (1u << w)) {
                by_type[w] = std::log(product[w]);
            }
        }
    } else {
        for (uint32_t k = qubit_start_[qubit]; k < qubit_start_[qubit + 1]; k++) {
            uint32_t e = qubit_edges_[k];
            by_type[static_cast<int>(edges_[e].pauli)] += std::log(check_ratio_[e]);
        }
    }
    // Pauli w anticommutes with the two other non-identity Paulis.
    const std::array<double, 4> sum = {
        0, by_type[2] + by_type[3], by_type[1] + by_type[3], by_type[1] + by_type[2]};
    auto &gamma = gamma_[qubit];
    const double inv_alpha = 1.0 / config_.alpha;
    gamma[0] = 0;
    for (int w = 1; w < 4; w++) {
        gamma[w] = prior_llr_[w] + inv_alpha * sum[w];
    }
    // The outgoing LLR is ln(ratio_S) - delta_e, clamped; only its tanh(. / 2) is kept.
    const std::array<double, 4> ratio = commute_ratios(gamma, qubit_paulis_[qubit]);
    for (uint32_t k = qubit_start_[qubit]; k < qubit_start_[qubit + 1]; k++) {
        uint32_t e = qubit_edges_[k];
        edge_tanh_[e] = tanh_half_of_ratio(ratio[static_cast<int>(edges_[e].pauli)] * check_inv_ratio_[e]);
    }
}

BpOutcome Bp4Decoder::decode(const BitVec &syndrome, std::mt19937_64 *rng) {
    const size_t n = code_->n();
    const size_t m = code_->m();
    if (syndrome.size() != m) {
        throw std::invalid_argument(
            "syndrome length " + std::to_string(syndrome.size()) + " != number of checks " + std::to_string(m));
    }
    for (size_t e = 0; e < edges_.size(); e++) {
        edge_tanh_[e] = prior_message_[static_cast<int>(edges_[e].pauli)];
        check_ratio_[e] = 1;
        check_inv_ratio_[e] = 1;
    }
    const bool serial = config_.schedule != BpSchedule::kParallel;
    if (serial) {
        std::iota(sweep_order_.begin(), sweep_order_.end(), 0);
        if (config_.schedule == BpSchedule::kSerialRandomOrder) {
            if (rng == nullptr) {
                throw std::invalid_argument("random-order serial schedule needs an RNG");
            }
            std::shuffle(sweep_order_.begin(), sweep_order_.end(), *rng);
        }
    }

    BpOutcome out;
    out.alpha = config_.alpha;
    BeliefState &belief = out.belief;
    belief.hard.assign(n, Pauli::I);
    belief.eta.assign(n, 1);
    bool matched = false;
    size_t t = 0;
    while (t < config_.max_iterations) {
        t++;
        if (serial) {
            for (uint32_t i : sweep_order_) {
                for (uint32_t k = qubit_start_[i]; k < qubit_start_[i + 1]; k++) {
                    uint32_t e = qubit_edges_[k];
                    uint32_t j = edges_[e].check;
                    double product = 1.0;
                    for (uint32_t f = check_start_[j]; f < check_start_[j + 1]; f++) {
                        if (f != e) {
                            product *= edge_tanh_[f];
                        }
                    }
                    set_check_message(e, product, syndrome[j]);
                }
                update_qubit(i);
            }
        } else {
            for (size_t j = 0; j < m; j++) {
                check_to_qubit(j, syndrome);
            }
            for (size_t i = 0; i < n; i++) {
                update_qubit(i);
            }
        }
        for (size_t i = 0; i < n; i++) {
            Pauli h = argmin_gamma(gamma_[i]);
            if (h == belief.hard[i]) {
                belief.eta[i]++;
            } else {
                belief.hard[i] = h;
                belief.eta[i] = 1;
            }
        }
        if (config_.record_history) {
            belief.history.push_back(belief.hard);
        }
        matched = true;
        for (size_t j = 0; j < m && matched; j++) {
            bool parity = false;
            for (uint32_t e = check_start_[j]; e < check_start_[j + 1]; e++) {
                parity ^= anticommute(belief.hard[edges_[e].qubit], edges_[e].pauli);
            }
            matched = parity == syndrome[j];
        }
        if (matched && config_.early_stop) {
            break;
        }
    }
    belief.iterations_run = t;
    belief.q.resize(n);
    for (size_t i = 0; i < n; i++) {
        belief.q[i] = distribution_of(gamma_[i]);
    }
    if (matched) {
        out.status = BpStatus::kSuccess;
        out.estimate = belief.hard_bits();
    }
    return out;
}

BpOutcome bp4_decode(const StabilizerCode &code, const BitVec &syndrome, const BpConfig &config, std::mt19937_64 *rng) {
    Bp4Decoder decoder(code, config);
    return decoder.decode(syndrome, rng);
}

BpOutcome bp4_decode_adaptive(
    Bp4Decoder &decoder, const BitVec &syndrome, std::span<const double> alphas, std::mt19937_64 *rng) {
    if (alphas.empty()) {
        throw std::invalid_argument("adaptive BP needs at least one alpha");
    }
    BpOutcome last;
    for (double alpha : alphas) {
        decoder.set_alpha(alpha);
        last = decoder.decode(syndrome, rng);
        if (last.success()) {
            break;
        }
    }
    return last;
}

BpOutcome bp4_decode_adaptive(
    const StabilizerCode &code,
    const BitVec &syndrome,
    const BpConfig &config,
    std::span<const double> alphas,
    std::mt19937_64 *rng) {
    Bp4Decoder decoder(code, config);
    return bp4_decode_adaptive(decoder, syndrome, alphas, rng);
}

std::vector<double> alpha_sequence(double start, double step, double stop) {
    if (step == 0 || (stop - start) * step < 0) {
        throw std::invalid_argument("alpha sequence step must move from start toward stop");
    }
    std::vector<double> out;
    long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long t = 0; t < count; t++) {
        // Round to 1e-12 so that 1.6 - 0.01 * 10 prints as 1.5.
        out.push_back(std::round((start + step * static_cast<double>(t)) * 1e12) / 1e12);
    }
    return out;
}

double alpha_of_epsilon_unclamped(double epsilon) {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw std::domain_error("alpha(eps) needs 0 < eps < 1");
    }
    return -0.16 * std::log10(epsilon) - 0.48;
}

double alpha_of_epsilon(double epsilon) {
    return std::clamp(alpha_of_epsilon_unclamped(epsilon), 0.5, 2.0);
}

}  // namespace qosd
