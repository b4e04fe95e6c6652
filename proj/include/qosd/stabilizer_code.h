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

#ifndef QOSD_STABILIZER_CODE_H
#define QOSD_STABILIZER_CODE_H

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qosd/gf2_matrix.h"
#include "qosd/pauli.h"

namespace qosd {

struct CodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a decoder estimate does not reproduce the syndrome it was
/// given. Valid decoder outputs never trigger it.
struct ResidualSyndromeError : std::logic_error {
    using std::logic_error::logic_error;
};

/// An [[n,k,d]] stabilizer code: check matrix H (m x 2n) and logical matrix L
/// (2k x 2n, rows X_1..X_k then Z_1..Z_k). Immutable once built.
class StabilizerCode {
   public:
    StabilizerCode() = default;
    /// `d == 0` means the distance is unknown. `distance_trusted` marks whether
    /// degeneracy shortcuts may rely on `d`.
    StabilizerCode(
        std::string name, size_t n, size_t k, size_t d, GF2Matrix check, GF2Matrix logicals,
        bool distance_trusted = true);

    const std::string &name() const {
        return name_;
    }
    size_t n() const {
        return n_;
    }
    size_t k() const {
        return k_;
    }
    size_t d() const {
        return d_;
    }
    size_t m() const {
        return check_.rows();
    }
    bool distance_trusted() const {
        return distance_trusted_ && d_ > 0;
    }

    const GF2Matrix &check() const {
        return check_;
    }
    const GF2Matrix &logicals() const {
        return logicals_;
    }
    /// H Lambda, i.e. H with its X and Z column halves exchanged.
    const GF2Matrix &check_lambda() const {
        return check_lambda_;
    }
    const std::vector<std::vector<uint32_t>> &check_lambda_support() const {
        return check_lambda_support_;
    }
    const GF2Matrix &logical_lambda() const {
        return logical_lambda_;
    }

    /// s = H Lambda e^T, using the sparse rows.
    BitVec syndrome(const BitVec &e) const;
    BitVec syndrome(const SymplecticVector &e) const {
        return syndrome(e.bits());
    }
    /// L Lambda e^T.
    BitVec logical_action(const BitVec &e) const;

    StabilizerCode with_distance_trust(bool trusted) const;

   private:
    std::string name_;
    size_t n_ = 0;
    size_t k_ = 0;
    size_t d_ = 0;
    bool distance_trusted_ = false;
    GF2Matrix check_;
    GF2Matrix logicals_;
    GF2Matrix check_lambda_;
    GF2Matrix logical_lambda_;
    std::vector<std::vector<uint32_t>> check_lambda_support_;
};

/// s = H Lambda e^T for an explicit check matrix.
BitVec syndrome_of(const GF2Matrix &check, const SymplecticVector &e);

/// Whether decoding `actual` as `estimate` corrupts the logical state. A failed
/// decode counts as a logical error. Throws ResidualSyndromeError when the
/// estimate does not reproduce the syndrome of `actual`.
bool is_logical_error(const StabilizerCode &code, const BitVec &actual, const BitVec &estimate);
bool is_logical_error(
    const StabilizerCode &code, const SymplecticVector &actual, const SymplecticVector &estimate);

struct CodeCheckReport {
    std::vector<std::string> failures;
    size_t rank = 0;
    size_t logical_pairing_rank = 0;
    std::map<size_t, size_t> check_weight_histogram;

    bool ok() const {
        return failures.empty();
    }
};

/// Runs every structural check on (H, L, n, k) and reports each failure
/// individually instead of stopping at the first.
CodeCheckReport check_code(
    size_t n, size_t k, const GF2Matrix &check, const GF2Matrix &logicals);
inline CodeCheckReport check_code(const StabilizerCode &code) {
    return check_code(code.n(), code.k(), code.check(), code.logicals());
}

}  // namespace qosd

#endif
