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

#ifndef QOSD_RELIABILITY_H
#define QOSD_RELIABILITY_H

#include <string_view>
#include <vector>

#include "qosd/bp4.h"

namespace qosd {

enum class ReliabilityMetric {
    /// Hard-decision reliability eta first, soft reliability phi as tie-break.
    kHardThenSoft,
    /// Soft reliability phi only.
    kMarginal,
    /// Qubits by quaternary entropy of q_i, most uncertain first.
    kEntropy,
    /// Qubits by max(q_i), smallest first.
    kMax,
};

std::string_view metric_name(ReliabilityMetric metric);
ReliabilityMetric parse_metric(std::string_view name);

/// Bit indices over [e^X | e^Z], least reliable first. Ties keep index order.
/// The qubit-level metrics place each qubit's X bit before its Z bit.
struct ReliabilityOrder {
    ReliabilityMetric metric = ReliabilityMetric::kHardThenSoft;
    std::vector<uint32_t> order;
};

ReliabilityOrder build_order(const BeliefState &belief, ReliabilityMetric metric = ReliabilityMetric::kHardThenSoft);

/// Like build_order, but the bits set in `tail` are left unsorted and appended
/// in index order. The other bits keep their relative order from build_order.
ReliabilityOrder build_order_with_tail(const BeliefState &belief, ReliabilityMetric metric, const BitVec &tail);

/// -sum q log2 q over the four Pauli outcomes.
double quaternary_entropy(const std::array<double, 4> &q);

}  // namespace qosd

#endif
