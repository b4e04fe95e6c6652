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

#include "qosd/reliability.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qosd {

std::string_view metric_name(ReliabilityMetric metric) {
    switch (metric) {
        case ReliabilityMetric::kHardThenSoft:
            return "hard_then_soft";
        case ReliabilityMetric::kMarginal:
            return "marginal";
        case ReliabilityMetric::kEntropy:
            return "entropy";
        case ReliabilityMetric::kMax:
            return "max";
    }
    return "?";
}

ReliabilityMetric parse_metric(std::string_view name) {
    for (auto m : {ReliabilityMetric::kHardThenSoft, ReliabilityMetric::kMarginal, ReliabilityMetric::kEntropy,
                   ReliabilityMetric::kMax}) {
        if (metric_name(m) == name) {
            return m;
        }
    }
    throw std::invalid_argument(
        "unknown reliability metric '" + std::string(name) + "' (expected hard_then_soft, marginal, entropy, max)");
}

double quaternary_entropy(const std::array<double, 4> &q) {
    double h = 0;
    for (double p : q) {
        if (p > 0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

namespace {

ReliabilityOrder sorted_order(const BeliefState &belief, ReliabilityMetric metric, const BitVec *tail) {
    const size_t n = belief.num_qubits();
    if (belief.q.size() != n || belief.eta.size() != n) {
        throw std::invalid_argument("belief state is not populated for every qubit");
    }
    ReliabilityOrder out;
    out.metric = metric;
    out.order.resize(2 * n);

    if (metric == ReliabilityMetric::kHardThenSoft || metric == ReliabilityMetric::kMarginal) {
        // Sorting (eta, phi, index) keys with an index tie-break is a stable sort
        // without the merge buffer.
        struct Key {
            uint32_t eta;
            double phi;
            uint32_t index;
        };
        const bool use_eta = metric == ReliabilityMetric::kHardThenSoft;
        std::vector<Key> keys;
        keys.reserve(2 * n);
        for (size_t i = 0; i < n; i++) {
            uint32_t eta = use_eta ? belief.eta[i] : 0;
            if (tail == nullptr || !(*tail)[i]) {
                keys.push_back({eta, soft_reliability(belief.q[i], Pauli::X), static_cast<uint32_t>(i)});
            }
            if (tail == nullptr || !(*tail)[n + i]) {
                keys.push_back({eta, soft_reliability(belief.q[i], Pauli::Z), static_cast<uint32_t>(n + i)});
            }
        }
        std::sort(keys.begin(), keys.end(), [](const Key &a, const Key &b) {
            if (a.eta != b.eta) {
                return a.eta < b.eta;
            }
            if (a.phi != b.phi) {
                return a.phi < b.phi;
            }
            return a.index < b.index;
        });
        for (size_t t = 0; t < keys.size(); t++) {
            out.order[t] = keys[t].index;
        }
        if (tail != nullptr) {
            size_t t = keys.size();
            for_each_set_bit(tail->words(), [&](size_t b) {
                out.order[t++] = static_cast<uint32_t>(b);
            });
        }
        return out;
    }

    // Qubit-level metrics: a smaller key means less reliable.
    std::vector<double> key(n);
    for (size_t i = 0; i < n; i++) {
        if (metric == ReliabilityMetric::kEntropy) {
            key[i] = -quaternary_entropy(belief.q[i]);
        } else {
            key[i] = *std::max_element(belief.q[i].begin(), belief.q[i].end());
        }
    }
    std::vector<uint32_t> qubits(n);
    std::iota(qubits.begin(), qubits.end(), 0);
    std::stable_sort(qubits.begin(), qubits.end(), [&](uint32_t a, uint32_t b) {
        return key[a] < key[b];
    });
    for (size_t t = 0; t < n; t++) {
        out.order[2 * t] = qubits[t];
        out.order[2 * t + 1] = static_cast<uint32_t>(n + qubits[t]);
    }
    if (tail != nullptr) {
        auto head_end = std::stable_partition(out.order.begin(), out.order.end(), [&](uint32_t b) {
            return !(*tail)[b];
        });
        std::sort(head_end, out.order.end());
    }
    return out;
}

}  // namespace

ReliabilityOrder build_order(const BeliefState &belief, ReliabilityMetric metric) {
    return sorted_order(belief, metric, nullptr);
}

ReliabilityOrder build_order_with_tail(const BeliefState &belief, ReliabilityMetric metric, const BitVec &tail) {
    if (tail.size() != 2 * belief.num_qubits()) {
        throw std::invalid_argument("tail mask must have one bit per error bit");
    }
    return sorted_order(belief, metric, &tail);
}

}  // namespace qosd
