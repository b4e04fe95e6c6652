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

#include "qosd/stabilizer_code.h"

namespace qosd {

namespace {

GF2Matrix lambda_of(const GF2Matrix &m, size_t n) {
    GF2Matrix out(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); r++) {
        for_each_set_bit(m.row(r), [&](size_t c) {
            out.set(r, c < n ? c + n : c - n, true);
        });
    }
    return out;
}

}  // namespace

StabilizerCode::StabilizerCode(
    std::string name, size_t n, size_t k, size_t d, GF2Matrix check, GF2Matrix logicals, bool distance_trusted)
    : name_(std::move(name)),
      n_(n),
      k_(k),
      d_(d),
      distance_trusted_(distance_trusted),
      check_(std::move(check)),
      logicals_(std::move(logicals)) {
    if (check_.cols() != 2 * n_) {
        throw CodeError("check matrix has " + std::to_string(check_.cols()) + " columns, expected 2n = " +
                        std::to_string(2 * n_));
    }
    if (logicals_.cols() != 2 * n_ || logicals_.rows() != 2 * k_) {
        throw CodeError("logical matrix must be 2k x 2n = " + std::to_string(2 * k_) + " x " +
                        std::to_string(2 * n_));
    }
    check_lambda_ = lambda_of(check_, n_);
    logical_lambda_ = lambda_of(logicals_, n_);
    check_lambda_support_ = check_lambda_.sparse_rows();
}

BitVec StabilizerCode::syndrome(const BitVec &e) const {
    if (e.size() != 2 * n_) {
        throw std::invalid_argument("error vector length " + std::to_string(e.size()) + " != 2n");
    }
    BitVec s(check_lambda_support_.size());
    auto words = e.words();
    for (size_t r = 0; r < check_lambda_support_.size(); r++) {
        bool parity = false;
        for (uint32_t c : check_lambda_support_[r]) {
            parity ^= get_bit(words, c);
        }
        if (parity) {
            s.set(r, true);
        }
    }
    return s;
}

BitVec StabilizerCode::logical_action(const BitVec &e) const {
    return logical_lambda_.multiply(e);
}

StabilizerCode StabilizerCode::with_distance_trust(bool trusted) const {
    StabilizerCode out = *this;
    out.distance_trusted_ = trusted;
    return out;
}

BitVec syndrome_of(const GF2Matrix &check, const SymplecticVector &e) {
    if (check.cols() != e.bits().size()) {
        throw std::invalid_argument(
            "check matrix has " + std::to_string(check.cols()) + " columns but error has " +
            std::to_string(e.bits().size()) + " bits");
    }
    BitVec twisted = swap_halves(e.bits());
    return check.multiply(twisted);
}

bool is_logical_error(const StabilizerCode &code, const BitVec &actual, const BitVec &estimate) {
    BitVec residual = actual ^ estimate;
    if (code.syndrome(residual).any()) {
        throw ResidualSyndromeError("estimate does not reproduce the syndrome of the injected error");
    }
    return code.logical_action(residual).any();
}

bool is_logical_error(
    const StabilizerCode &code, const SymplecticVector &actual, const SymplecticVector &estimate) {
    return is_logical_error(code, actual.bits(), estimate.bits());
}

CodeCheckReport check_code(size_t n, size_t k, const GF2Matrix &check, const GF2Matrix &logicals) {
    CodeCheckReport report;
    if (check.cols() != 2 * n) {
        report.failures.push_back("H has " + std::to_string(check.cols()) + " columns, expected " +
                                  std::to_string(2 * n));
        return report;
    }
    if (logicals.cols() != 2 * n || logicals.rows() != 2 * k) {
        report.failures.push_back("L has shape " + std::to_string(logicals.rows()) + "x" +
                                  std::to_string(logicals.cols()) + ", expected " + std::to_string(2 * k) +
                                  "x" + std::to_string(2 * n));
        return report;
    }
    GF2Matrix hl = lambda_of(check, n);
    for (size_t a = 0; a < check.rows(); a++) {
        report.check_weight_histogram[pauli_weight(check.row(a), n)]++;
        for (size_t b = a + 1; b < check.rows(); b++) {
            if (and_parity(hl.row(a), check.row(b))) {
                report.failures.push_back(
                    "stabilizer rows " + std::to_string(a) + " and " + std::to_string(b) + " anticommute");
            }
        }
    }
    for (size_t a = 0; a < check.rows(); a++) {
        for (size_t b = 0; b < logicals.rows(); b++) {
            if (and_parity(hl.row(a), logicals.row(b))) {
                report.failures.push_back(
                    "stabilizer row " + std::to_string(a) + " anticommutes with logical row " + std::to_string(b));
            }
        }
    }
    report.rank = check.rank();
    if (report.rank + k != n) {
        report.failures.push_back(
            "rank(H) = " + std::to_string(report.rank) + " but n - k = " + std::to_string(n - k));
    }
    GF2Matrix ll = lambda_of(logicals, n);
    GF2Matrix gram(logicals.rows(), logicals.rows());
    for (size_t a = 0; a < logicals.rows(); a++) {
        for (size_t b = 0; b < logicals.rows(); b++) {
            gram.set(a, b, and_parity(ll.row(a), logicals.row(b)));
        }
    }
    report.logical_pairing_rank = gram.rank();
    if (report.logical_pairing_rank != 2 * k) {
        report.failures.push_back(
            "rank(L Lambda L^T) = " + std::to_string(report.logical_pairing_rank) + ", expected 2k = " +
            std::to_string(2 * k));
    }
    return report;
}

}  // namespace qosd
