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

#ifndef QOSD_OSD_H
#define QOSD_OSD_H

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "qosd/reliability.h"
#include "qosd/stabilizer_code.h"

namespace qosd {

constexpr uint64_t kUnboundedBudget = std::numeric_limits<uint64_t>::max();

/// A linear system H' e^T = s' over a subset of the 2n error bits, plus bits
/// outside that subset whose values are already fixed.
///
/// Row supports and column indices are global bit indices in [0, 2n). `columns`
/// lists the free columns, least reliable first.
struct OsdProblem {
    size_t num_qubits = 0;
    std::span<const std::vector<uint32_t>> rows;
    /// Indices into `rows` forming the system, in order. Null means all rows.
    const std::vector<uint32_t> *row_subset = nullptr;
    std::span<const uint32_t> columns;
    /// One bit per row of the system (per entry of row_subset when given).
    BitVec syndrome;
    /// Hard decision over all 2n bits. Only entries in `columns` are read.
    BitVec hard;
    /// Values of bits outside `columns` (all zero for the unreduced system).
    BitVec fixed;
};

struct OsdOptions {
    bool record_row_ops = false;
};

/// Reduced row echelon form of a column-permuted check matrix.
///
/// Position t refers to the t-th column after both permutations: positions
/// [0, rank) are pivots and [rank, num_cols) are the reliable bits, each group in
/// reliability order. column_map()[t] is the global bit index at position t.
/// Every estimate produced from the system is in global coordinates and
/// includes the fixed bits.
class OsdSystem {
   public:
    static OsdSystem build(const OsdProblem &problem, const OsdOptions &options = {});

    /// False when the syndrome is not in the column space; nothing else is valid then.
    bool consistent() const {
        return consistent_;
    }
    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t num_rows() const {
        return reduced_.rows();
    }
    size_t num_cols() const {
        return column_map_.size();
    }
    size_t rank() const {
        return rank_;
    }
    /// Number of reliable positions, i.e. the length of e^R.
    size_t reliable_length() const {
        return column_map_.size() - rank_;
    }
    std::span<const uint32_t> column_map() const {
        return column_map_;
    }
    /// R applied to the syndrome (full length, rows past rank are zero).
    const BitVec &transformed_syndrome() const {
        return s_prime_;
    }
    const RowOpLog &row_ops() const {
        return row_ops_;
    }
    /// The reduced matrix with columns in the input order (before mu).
    const GF2Matrix &reduced() const {
        return reduced_;
    }
    /// mu: position t holds input column mu[t].
    std::span<const uint32_t> mu() const {
        return mu_;
    }
    /// Hard-decision values of the reliable positions.
    const BitVec &reliable_hard() const {
        return reliable_hard_;
    }
    /// OSD-0 estimate: reliable bits from the hard decision, pivots solved.
    const BitVec &osd0_estimate() const {
        return osd0_;
    }
    const BitVec &fixed() const {
        return fixed_;
    }

    /// Hamming weight of column j of A (the reliable position rank + j).
    std::span<const uint32_t> a_column_weights() const {
        return a_column_weights_;
    }
    /// Flip vector of reliable position j in global coordinates: the unit at
    /// that column plus the pivots it feeds.
    const BitVec &flip_vector(size_t j) const;
    /// base xor flip_vector(j).
    BitVec flip_candidate(const BitVec &base, size_t j) const;

    /// Solves for the pivots given every reliable bit value (length
    /// reliable_length()), and returns the full estimate.
    BitVec reconstruct(const BitVec &reliable_bits) const;

   private:
    void build_flip_vectors() const;

    bool consistent_ = false;
    size_t num_qubits_ = 0;
    size_t rank_ = 0;
    GF2Matrix reduced_;
    RowOpLog row_ops_;
    std::vector<uint32_t> mu_;
    std::vector<uint32_t> column_map_;
    BitVec s_prime_;
    BitVec reliable_hard_;
    BitVec fixed_;
    BitVec osd0_;
    std::vector<uint32_t> a_column_weights_;
    mutable std::vector<BitVec> flip_vectors_;
};

/// Builds the unreduced system for a code: all m rows of H Lambda, columns in
/// `order`, nothing fixed.
OsdSystem build_full_system(
    const StabilizerCode &code, const BitVec &syndrome, std::span<const uint32_t> order, const BitVec &hard,
    const OsdOptions &options = {});

struct OsdResult {
    BitVec estimate;
    size_t weight = 0;
    size_t order = 0;
    uint64_t candidates = 0;
    bool budget_exhausted = false;
};

/// OSD-0 on the unreduced system. Throws CodeError if H has rank < n - k or the
/// syndrome is inconsistent.
OsdResult osd0(
    const StabilizerCode &code, const BitVec &syndrome, const ReliabilityOrder &order, const BitVec &hard);

struct OsdSearchOptions {
    /// When set, only reliable positions j with allowed[j] != 0 are flipped.
    const std::vector<char> *allowed = nullptr;
};

/// Depth-first search over every flip pattern of weight <= w on the reliable
/// positions, children flipping positions after the last one set. Stops after
/// `budget` candidates (the OSD-0 candidate counts as one) and returns the
/// lowest Pauli weight seen, ties to the first found.
OsdResult osd_w(const OsdSystem &system, size_t w, uint64_t budget = kUnboundedBudget, const OsdSearchOptions &options = {});

/// sum_{i=0}^{w} C(length, i), saturating at kUnboundedBudget.
uint64_t candidate_count(size_t length, size_t w);

/// Largest w <= length with candidate_count(length, w) <= budget (0 if none).
size_t order_from_budget(size_t length, uint64_t budget);

/// The OSD-2 budget 1 + (n + k) + C(n + k, 2).
uint64_t osd2_budget(const StabilizerCode &code);

}  // namespace qosd

#endif
