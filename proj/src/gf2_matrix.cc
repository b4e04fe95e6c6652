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

#include "qosd/gf2_matrix.h"

#include <algorithm>
#include <stdexcept>

namespace qosd {

GF2Matrix::GF2Matrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for_bits(cols)), data_(rows * words_for_bits(cols), 0) {
}

GF2Matrix GF2Matrix::identity(size_t size) {
    GF2Matrix result(size, size);
    for (size_t k = 0; k < size; k++) {
        result.set(k, k, true);
    }
    return result;
}

GF2Matrix GF2Matrix::from_rows(size_t cols, std::span<const BitVec> rows) {
    GF2Matrix result(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != cols) {
            throw std::invalid_argument("row length mismatch building GF2Matrix");
        }
        std::copy(rows[r].words().begin(), rows[r].words().end(), result.row(r).begin());
    }
    return result;
}

GF2Matrix GF2Matrix::from_sparse(size_t cols, const std::vector<std::vector<uint32_t>> &rows) {
    GF2Matrix result(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        for (uint32_t c : rows[r]) {
            if (c >= cols) {
                throw std::out_of_range("column index " + std::to_string(c) + " out of range");
            }
            result.flip(r, c);
        }
    }
    return result;
}

GF2Matrix GF2Matrix::from_strings(const std::vector<std::string> &rows) {
    std::vector<BitVec> parsed;
    for (const auto &text : rows) {
        parsed.push_back(BitVec::from_string(text));
    }
    size_t cols = parsed.empty() ? 0 : parsed.front().size();
    return from_rows(cols, parsed);
}

BitVec GF2Matrix::row_vec(size_t r) const {
    BitVec out(cols_);
    std::copy(row(r).begin(), row(r).end(), out.words().begin());
    return out;
}

std::vector<uint32_t> GF2Matrix::row_support(size_t r) const {
    std::vector<uint32_t> out;
    for_each_set_bit(row(r), [&](size_t c) {
        out.push_back(static_cast<uint32_t>(c));
    });
    return out;
}

BitVec GF2Matrix::column_vec(size_t c) const {
    BitVec out(rows_);
    for (size_t r = 0; r < rows_; r++) {
        if (get(r, c)) {
            out.set(r, true);
        }
    }
    return out;
}

void GF2Matrix::xor_row(size_t dst, size_t src) {
    uint64_t *d = data_.data() + dst * stride_;
    const uint64_t *s = data_.data() + src * stride_;
    for (size_t k = 0; k < stride_; k++) {
        d[k] ^= s[k];
    }
}

void GF2Matrix::swap_rows(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
}

BitVec GF2Matrix::multiply(const BitVec &v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument(
            "matrix-vector dimension mismatch: " + std::to_string(cols_) + " columns vs vector of " +
            std::to_string(v.size()));
    }
    BitVec out(rows_);
    for (size_t r = 0; r < rows_; r++) {
        if (and_parity(row(r), v.words())) {
            out.set(r, true);
        }
    }
    return out;
}

GF2Matrix GF2Matrix::transpose() const {
    GF2Matrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for_each_set_bit(row(r), [&](size_t c) {
            out.set(c, r, true);
        });
    }
    return out;
}

GF2Matrix GF2Matrix::permute_columns(std::span<const uint32_t> order) const {
    if (order.size() != cols_) {
        throw std::invalid_argument("column permutation has wrong length");
    }
    std::vector<uint32_t> position(cols_);
    for (size_t t = 0; t < cols_; t++) {
        position[order[t]] = static_cast<uint32_t>(t);
    }
    GF2Matrix out(rows_, cols_);
    for (size_t r = 0; r < rows_; r++) {
        auto dst = out.row(r);
        for_each_set_bit(row(r), [&](size_t c) {
            flip_bit(dst, position[c]);
        });
    }
    return out;
}

GF2Matrix GF2Matrix::select_rows(std::span<const uint32_t> rows) const {
    GF2Matrix out(rows.size(), cols_);
    for (size_t k = 0; k < rows.size(); k++) {
        std::copy(row(rows[k]).begin(), row(rows[k]).end(), out.row(k).begin());
    }
    return out;
}

std::vector<std::vector<uint32_t>> GF2Matrix::sparse_rows() const {
    std::vector<std::vector<uint32_t>> out(rows_);
    for (size_t r = 0; r < rows_; r++) {
        out[r] = row_support(r);
    }
    return out;
}

size_t GF2Matrix::rank() const {
    return gauss_eliminate(*this).rank;
}

bool GF2Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](uint64_t w) {
        return w == 0;
    });
}

std::string GF2Matrix::str() const {
    std::string out;
    for (size_t r = 0; r < rows_; r++) {
        out += row_vec(r).str();
        out += '\n';
    }
    return out;
}

void RowOpLog::apply(BitVec &v) const {
    for (const RowOp &op : ops_) {
        if (op.kind == RowOp::Kind::kSwap) {
            bool a = v[op.src];
            bool b = v[op.dst];
            v.set(op.src, b);
            v.set(op.dst, a);
        } else if (v[op.src]) {
            v.flip(op.dst);
        }
    }
}

void RowOpLog::apply(GF2Matrix &m) const {
    for (const RowOp &op : ops_) {
        if (op.kind == RowOp::Kind::kSwap) {
            m.swap_rows(op.src, op.dst);
        } else {
            m.xor_row(op.dst, op.src);
        }
    }
}

Elimination gauss_eliminate(GF2Matrix m, const EliminationOptions &options) {
    const size_t rows = m.rows();
    const size_t cols = m.cols();
    BitVec *rhs = options.rhs;
    if (rhs != nullptr && rhs->size() != rows) {
        throw std::invalid_argument("elimination right-hand side has wrong length");
    }

    Elimination result;
    result.column_order.reserve(cols);
    std::vector<char> is_pivot(cols, 0);
    size_t rank = 0;
    const size_t max_rank = std::min({rows, cols, options.max_rank});

    for (size_t c = 0; c < cols && rank < max_rank; c++) {
        const size_t word = c / kWordBits;
        const uint64_t mask = uint64_t{1} << (c % kWordBits);
        size_t pivot = rank;
        while (pivot < rows && !(m.row(pivot)[word] & mask)) {
            pivot++;
        }
        if (pivot == rows) {
            continue;
        }
        if (pivot != rank) {
            m.swap_rows(pivot, rank);
            if (options.record_row_ops) {
                result.row_ops.push_swap(static_cast<uint32_t>(pivot), static_cast<uint32_t>(rank));
            }
            if (rhs != nullptr) {
                bool a = (*rhs)[pivot];
                bool b = (*rhs)[rank];
                rhs->set(pivot, b);
                rhs->set(rank, a);
            }
        }
        const bool rhs_pivot = rhs != nullptr && (*rhs)[rank];
        for (size_t r = 0; r < rows; r++) {
            if (r != rank && (m.row(r)[word] & mask)) {
                m.xor_row(r, rank);
                if (options.record_row_ops) {
                    result.row_ops.push_xor(static_cast<uint32_t>(r), static_cast<uint32_t>(rank));
                }
                if (rhs_pivot) {
                    rhs->flip(r);
                }
            }
        }
        is_pivot[c] = 1;
        result.column_order.push_back(static_cast<uint32_t>(c));
        rank++;
    }
    for (size_t c = 0; c < cols; c++) {
        if (!is_pivot[c]) {
            result.column_order.push_back(static_cast<uint32_t>(c));
        }
    }
    result.rank = rank;
    result.reduced = std::move(m);
    return result;
}

std::vector<BitVec> nullspace_basis(const GF2Matrix &m) {
    Elimination elim = gauss_eliminate(m);
    std::vector<BitVec> basis;
    for (uint32_t f : elim.free_columns()) {
        BitVec v(m.cols());
        v.set(f, true);
        for (size_t i = 0; i < elim.rank; i++) {
            if (elim.reduced.get(i, f)) {
                v.set(elim.column_order[i], true);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace qosd
