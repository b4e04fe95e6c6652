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

#include "qosd/osd.h"

#include <algorithm>

namespace qosd {

OsdSystem OsdSystem::build(const OsdProblem &problem, const OsdOptions &options) {
    const size_t total_bits = 2 * problem.num_qubits;
    const size_t c = problem.columns.size();
    if (problem.hard.size() != total_bits || problem.fixed.size() != total_bits) {
        throw std::invalid_argument("OSD problem bit vectors must have length 2n");
    }
    const std::vector<uint32_t> *subset = problem.row_subset;
    const size_t num_rows = subset != nullptr ? subset->size() : problem.rows.size();
    if (problem.syndrome.size() != num_rows) {
        throw std::invalid_argument("OSD problem syndrome length must equal the row count");
    }
    std::vector<int32_t> position(total_bits, -1);
    for (size_t t = 0; t < c; t++) {
        if (problem.columns[t] >= total_bits || position[problem.columns[t]] >= 0) {
            throw std::invalid_argument("OSD columns must be distinct bit indices below 2n");
        }
        position[problem.columns[t]] = static_cast<int32_t>(t);
    }
    GF2Matrix permuted(num_rows, c);
    for (size_t r = 0; r < num_rows; r++) {
        auto row = permuted.row(r);
        for (uint32_t g : problem.rows[subset != nullptr ? (*subset)[r] : r]) {
            if (position[g] >= 0) {
                flip_bit(row, static_cast<size_t>(position[g]));
            }
        }
    }

    OsdSystem sys;
    sys.num_qubits_ = problem.num_qubits;
    sys.s_prime_ = problem.syndrome;
    EliminationOptions elim_options;
    elim_options.record_row_ops = options.record_row_ops;
    elim_options.rhs = &sys.s_prime_;
    Elimination elim = gauss_eliminate(std::move(permuted), elim_options);
    sys.rank_ = elim.rank;
    sys.reduced_ = std::move(elim.reduced);
    sys.row_ops_ = std::move(elim.row_ops);
    sys.mu_ = std::move(elim.column_order);
    sys.fixed_ = problem.fixed;

    sys.consistent_ = true;
    for (size_t r = sys.rank_; r < sys.s_prime_.size(); r++) {
        if (sys.s_prime_[r]) {
            sys.consistent_ = false;
            return sys;
        }
    }

    const size_t rank = sys.rank_;
    const size_t reliable = c - rank;
    sys.column_map_.resize(c);
    for (size_t t = 0; t < c; t++) {
        sys.column_map_[t] = problem.columns[sys.mu_[t]];
    }
    sys.reliable_hard_ = BitVec(reliable);
    for (size_t j = 0; j < reliable; j++) {
        if (problem.hard[sys.column_map_[rank + j]]) {
            sys.reliable_hard_.set(j, true);
        }
    }
    sys.osd0_ = sys.reconstruct(sys.reliable_hard_);

    // Position (input order) of reliable column j is mu[rank + j].
    std::vector<int32_t> reliable_index(c, -1);
    for (size_t j = 0; j < reliable; j++) {
        reliable_index[sys.mu_[rank + j]] = static_cast<int32_t>(j);
    }
    sys.a_column_weights_.assign(reliable, 0);
    for (size_t i = 0; i < rank; i++) {
        for_each_set_bit(sys.reduced_.row(i), [&](size_t p) {
            int32_t j = reliable_index[p];
            if (j >= 0) {
                sys.a_column_weights_[j]++;
            }
        });
    }
    return sys;
}

BitVec OsdSystem::reconstruct(const BitVec &reliable_bits) const {
    if (!consistent_) {
        throw std::logic_error("cannot reconstruct from an inconsistent OSD system");
    }
    const size_t reliable = reliable_length();
    if (reliable_bits.size() != reliable) {
        throw std::invalid_argument("reliable bit vector has the wrong length");
    }
    BitVec mask(num_cols());
    BitVec out = fixed_;
    for (size_t j = 0; j < reliable; j++) {
        if (reliable_bits[j]) {
            mask.set(mu_[rank_ + j], true);
            out.set(column_map_[rank_ + j], true);
        }
    }
    for (size_t i = 0; i < rank_; i++) {
        if (s_prime_[i] ^ and_parity(reduced_.row(i), mask.words())) {
            out.set(column_map_[i], true);
        }
    }
    return out;
}

void OsdSystem::build_flip_vectors() const {
    const size_t reliable = reliable_length();
    flip_vectors_.assign(reliable, BitVec(2 * num_qubits_));
    std::vector<int32_t> reliable_index(num_cols(), -1);
    for (size_t j = 0; j < reliable; j++) {
        reliable_index[mu_[rank_ + j]] = static_cast<int32_t>(j);
        flip_vectors_[j].set(column_map_[rank_ + j], true);
    }
    for (size_t i = 0; i < rank_; i++) {
        const uint32_t pivot_bit = column_map_[i];
        for_each_set_bit(reduced_.row(i), [&](size_t p) {
            int32_t j = reliable_index[p];
            if (j >= 0) {
                flip_vectors_[j].flip(pivot_bit);
            }
        });
    }
}

const BitVec &OsdSystem::flip_vector(size_t j) const {
    if (j >= reliable_length()) {
        throw std::out_of_range("reliable position " + std::to_string(j) + " out of range");
    }
    if (flip_vectors_.empty()) {
        build_flip_vectors();
    }
    return flip_vectors_[j];
}

BitVec OsdSystem::flip_candidate(const BitVec &base, size_t j) const {
    return base ^ flip_vector(j);
}

OsdSystem build_full_system(
    const StabilizerCode &code, const BitVec &syndrome, std::span<const uint32_t> order, const BitVec &hard,
    const OsdOptions &options) {
    OsdProblem problem;
    problem.num_qubits = code.n();
    problem.rows = code.check_lambda_support();
    problem.columns = order;
    problem.syndrome = syndrome;
    problem.hard = hard;
    problem.fixed = BitVec(2 * code.n());
    return OsdSystem::build(problem, options);
}

OsdResult osd0(const StabilizerCode &code, const BitVec &syndrome, const ReliabilityOrder &order, const BitVec &hard) {
    OsdSystem system = build_full_system(code, syndrome, order.order, hard);
    if (system.rank() + code.k() < code.n()) {
        throw CodeError("check matrix rank " + std::to_string(system.rank()) + " is below n - k");
    }
    if (!system.consistent()) {
        throw CodeError("syndrome is not in the column space of H Lambda");
    }
    return osd_w(system, 0, 1);
}

OsdResult osd_w(const OsdSystem &system, size_t w, uint64_t budget, const OsdSearchOptions &options) {
    if (!system.consistent()) {
        throw std::logic_error("OSD search on an inconsistent system");
    }
    const size_t n = system.num_qubits();
    OsdResult result;
    result.estimate = system.osd0_estimate();
    result.weight = pauli_weight(result.estimate.words(), n);
    result.candidates = 1;

    std::vector<uint32_t> flippable;
    for (size_t j = 0; j < system.reliable_length(); j++) {
        if (options.allowed == nullptr || (*options.allowed)[j]) {
            flippable.push_back(static_cast<uint32_t>(j));
        }
    }
    w = std::min(w, flippable.size());
    result.order = w;
    if (w == 0) {
        return result;
    }
    if (budget <= 1) {
        result.budget_exhausted = true;
        return result;
    }

    const size_t num_words = result.estimate.num_words();
    // levels[d] holds the candidate with d flips along the current DFS path.
    std::vector<uint64_t> levels((w + 1) * num_words);
    std::copy_n(result.estimate.words().begin(), num_words, levels.begin());
    bool stop = false;
    size_t best_level_weight = result.weight;
    std::vector<uint64_t> best_words(result.estimate.words().begin(), result.estimate.words().end());

    auto dfs = [&](auto &&self, size_t depth, size_t start) -> void {
        const uint64_t *parent = levels.data() + depth * num_words;
        uint64_t *child = levels.data() + (depth + 1) * num_words;
        for (size_t idx = start; idx < flippable.size(); idx++) {
            if (result.candidates >= budget) {
                stop = true;
                return;
            }
            auto g = system.flip_vector(flippable[idx]).words();
            for (size_t k = 0; k < num_words; k++) {
                child[k] = parent[k] ^ g[k];
            }
            result.candidates++;
            size_t weight = pauli_weight(std::span<const uint64_t>(child, num_words), n);
            if (weight < best_level_weight) {
                best_level_weight = weight;
                std::copy_n(child, num_words, best_words.begin());
            }
            if (depth + 1 < w) {
                self(self, depth + 1, idx + 1);
                if (stop) {
                    return;
                }
            }
        }
    };
    dfs(dfs, 0, 0);
    result.budget_exhausted = stop;
    result.weight = best_level_weight;
    std::copy(best_words.begin(), best_words.end(), result.estimate.words().begin());
    return result;
}

uint64_t candidate_count(size_t length, size_t w) {
    w = std::min(w, length);
    unsigned __int128 total = 0;
    unsigned __int128 term = 1;
    for (size_t i = 0; i <= w; i++) {
        if (i > 0) {
            term = term * (length - i + 1) / i;
        }
        total += term;
        if (total >= kUnboundedBudget || term >= kUnboundedBudget) {
            return kUnboundedBudget;
        }
    }
    return static_cast<uint64_t>(total);
}

size_t order_from_budget(size_t length, uint64_t budget) {
    size_t w = 0;
    while (w < length && candidate_count(length, w + 1) <= budget) {
        if (candidate_count(length, w + 1) == kUnboundedBudget && budget != kUnboundedBudget) {
            break;
        }
        w++;
    }
    return w;
}

uint64_t osd2_budget(const StabilizerCode &code) {
    return candidate_count(code.n() + code.k(), 2);
}

}  // namespace qosd
