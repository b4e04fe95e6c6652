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

#ifndef QOSD_ADOSD_H
#define QOSD_ADOSD_H

#include <optional>
#include <string_view>
#include <vector>

#include "qosd/osd.h"

namespace qosd {

constexpr double kDefaultTheta = 0.999995;

/// Bits (i, a) whose hard decision never changed (eta_i in {T, T + 1}) and whose
/// soft reliability phi^a(i) is at least theta.
struct HighlyReliableMask {
    BitVec selected;
    size_t v = 0;
    double theta = kDefaultTheta;
};

/// `iterations` is T, the number of BP iterations that produced `belief`.
HighlyReliableMask select_highly_reliable(const BeliefState &belief, size_t iterations, double theta);

enum class HrsrStatus { kOk, kVerificationFailed, kUnsolvable };
std::string_view hrsr_status_name(HrsrStatus status);

struct HrsrOptions {
    /// Also materialize H~, B and C as dense matrices.
    bool keep_blocks = false;
    bool record_row_ops = false;
};

/// Output of highly reliable subset reduction.
///
/// sigma lists all 2n bits: the 2n - v remaining columns in reliability order,
/// then the v selected ones. tau lists all m rows: the m' rows that touch a
/// remaining column, then the rows supported only on selected bits.
struct ReducedSystem {
    HrsrStatus status = HrsrStatus::kOk;
    HighlyReliableMask mask;
    std::vector<uint32_t> sigma;
    std::vector<uint32_t> tau;
    size_t m_reduced = 0;
    size_t cols_reduced = 0;
    /// The reduced syndrome s~ = s'' xor B e^H.
    BitVec s_tilde;
    /// Hard-decision values of the selected bits, in global coordinates.
    BitVec e_fixed;
    /// H~ e'^T = s~ after elimination, columns in sigma order. Valid when ok().
    std::optional<OsdSystem> system;
    /// Only filled with HrsrOptions::keep_blocks.
    GF2Matrix h_tilde;
    GF2Matrix b_block;
    GF2Matrix c_block;

    bool ok() const {
        return status == HrsrStatus::kOk;
    }
};

ReducedSystem hrsr(
    const StabilizerCode &code,
    const BitVec &syndrome,
    const BeliefState &belief,
    const BitVec &hard,
    double theta,
    const ReliabilityOrder &order,
    const HrsrOptions &options = {});

/// HRSR with a precomputed mask. Only the relative order of the unselected
/// bits in `order` matters.
ReducedSystem hrsr(
    const StabilizerCode &code,
    const BitVec &syndrome,
    HighlyReliableMask mask,
    const BitVec &hard,
    const ReliabilityOrder &order,
    const HrsrOptions &options = {});

/// sigma^{-1}([e' | e^H]). `reduced_solution` has one bit per remaining column
/// in sigma order.
BitVec lift(const ReducedSystem &reduced, const BitVec &reduced_solution);

/// Restriction of a full estimate to the remaining columns, in sigma order.
BitVec project(const ReducedSystem &reduced, const BitVec &estimate);

/// True iff every column of A has weight below d - 1.
bool corollary_check(std::span<const uint32_t> column_weights, size_t d);
inline bool corollary_check(const OsdSystem &system, size_t d) {
    return corollary_check(system.a_column_weights(), d);
}

enum class FlipClass { kStabilizer, kNontrivialLogical };

/// Whether flipping reliable position j changes the estimate by a stabilizer.
FlipClass stabilizer_flip_check(const OsdSystem &system, const StabilizerCode &code, size_t j);

struct DegeneracyReport {
    bool all_columns_light = false;
    /// Filled when classification was requested.
    std::vector<char> is_stabilizer;
    size_t nontrivial_columns = 0;
};

DegeneracyReport degeneracy_report(
    const OsdSystem &system, const StabilizerCode &code, bool classify_columns);

struct AdosdConfig {
    double theta = kDefaultTheta;
    /// Candidate budget Gamma. Zero means the OSD-2 budget of the code.
    uint64_t budget = 0;
    size_t w_backup = 2;
    ReliabilityMetric metric = ReliabilityMetric::kHardThenSoft;
    /// Classify every reliable column and count the nontrivial ones.
    bool count_nontrivial = false;
    /// Flip only columns that induce nontrivial logicals. Unsound for
    /// minimum-weight decoding, so off by default.
    bool nontrivial_only = false;
};

enum class AdosdPath { kOrder0, kOrderW, kFallback };
std::string_view adosd_path_name(AdosdPath path);

struct AdosdOutcome {
    BitVec estimate;
    AdosdPath path = AdosdPath::kOrder0;
    HrsrStatus hrsr_status = HrsrStatus::kOk;
    size_t order = 0;
    size_t v = 0;
    size_t m_reduced = 0;
    size_t cols_reduced = 0;
    uint64_t candidates = 0;
    DegeneracyReport report;
};

/// HRSR, then OSD on the reduced system with the order collapsed to 0 when the
/// light-column condition holds. Falls back to OSD-w_backup on the full system
/// when HRSR fails. The corollary shortcut needs a trusted code distance.
AdosdOutcome adosd(
    const StabilizerCode &code, const BitVec &syndrome, const BeliefState &belief, const AdosdConfig &config);

}  // namespace qosd

#endif
