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

#ifndef QOSD_GF2_MATRIX_H
#define QOSD_GF2_MATRIX_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qosd/bit_vec.h"

namespace qosd {

/// Row-major bit-packed matrix over GF(2). Each row occupies
/// `words_per_row()` consecutive words; padding bits stay zero.
class GF2Matrix {
   public:
    GF2Matrix() = default;
    GF2Matrix(size_t rows, size_t cols);

    static GF2Matrix identity(size_t size);
    static GF2Matrix from_rows(size_t cols, std::span<const BitVec> rows);
    static GF2Matrix from_sparse(size_t cols, const std::vector<std::vector<uint32_t>> &rows);
    /// Rows given as strings of '0'/'1'; whitespace and '|' are ignored.
    static GF2Matrix from_strings(const std::vector<std::string> &rows);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    size_t words_per_row() const {
        return stride_;
    }

    bool get(size_t r, size_t c) const {
        return get_bit(row(r), c);
    }
    void set(size_t r, size_t c, bool value) {
        set_bit(row(r), c, value);
    }
    void flip(size_t r, size_t c) {
        flip_bit(row(r), c);
    }

    std::span<uint64_t> row(size_t r) {
        return {data_.data() + r * stride_, stride_};
    }
    std::span<const uint64_t> row(size_t r) const {
        return {data_.data() + r * stride_, stride_};
    }
    BitVec row_vec(size_t r) const;
    std::vector<uint32_t> row_support(size_t r) const;
    size_t row_weight(size_t r) const {
        return popcount_words(row(r));
    }
    BitVec column_vec(size_t c) const;

    /// row[dst] ^= row[src].
    void xor_row(size_t dst, size_t src);
    void swap_rows(size_t a, size_t b);

    /// Computes M v^T.
    BitVec multiply(const BitVec &v) const;
    GF2Matrix transpose() const;
    /// Matrix whose column t is column `order[t]` of this matrix.
    GF2Matrix permute_columns(std::span<const uint32_t> order) const;
    GF2Matrix select_rows(std::span<const uint32_t> rows) const;
    std::vector<std::vector<uint32_t>> sparse_rows() const;

    size_t rank() const;
    bool is_zero() const;

    bool operator==(const GF2Matrix &other) const = default;
    std::string str() const;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> data_;
};

/// One elementary row operation recorded during elimination.
struct RowOp {
    enum class Kind : uint8_t { kSwap, kXor };
    Kind kind;
    uint32_t src;
    uint32_t dst;  // for kXor: row[dst] ^= row[src]
};

/// The row operations R of an elimination, stored as a replayable sequence.
class RowOpLog {
   public:
    void push_swap(uint32_t a, uint32_t b) {
        ops_.push_back({RowOp::Kind::kSwap, a, b});
    }
    void push_xor(uint32_t dst, uint32_t src) {
        ops_.push_back({RowOp::Kind::kXor, src, dst});
    }
    /// Applies R to a column vector whose length equals the matrix row count.
    void apply(BitVec &v) const;
    void apply(GF2Matrix &m) const;
    size_t size() const {
        return ops_.size();
    }
    std::span<const RowOp> ops() const {
        return ops_;
    }

   private:
    std::vector<RowOp> ops_;
};

struct EliminationOptions {
    bool record_row_ops = false;
    /// Extra right-hand side column that receives the same row operations.
    BitVec *rhs = nullptr;
    /// Stop after this many pivots (defaults to no limit).
    size_t max_rank = SIZE_MAX;
};

/// Result of reducing a matrix to reduced row echelon form.
///
/// Pivots are chosen by scanning columns left to right and taking the lowest
/// unused row with a one in that column. Row i of `reduced` carries the pivot in
/// column `column_order[i]` for i < rank. `column_order` is the permutation mu:
/// pivot columns first, then the remaining columns, each group keeping the input
/// order. Permuting `reduced` by mu yields [I_rank | A ; 0 | 0].
struct Elimination {
    GF2Matrix reduced;
    RowOpLog row_ops;
    std::vector<uint32_t> column_order;
    size_t rank = 0;

    std::span<const uint32_t> pivot_columns() const {
        return std::span<const uint32_t>(column_order).first(rank);
    }
    std::span<const uint32_t> free_columns() const {
        return std::span<const uint32_t>(column_order).subspan(rank);
    }
    /// Explicit mu(R(M)).
    GF2Matrix standard_form() const {
        return reduced.permute_columns(column_order);
    }
};

Elimination gauss_eliminate(GF2Matrix m, const EliminationOptions &options = {});

/// Basis of {v : M v^T = 0}, one vector per free column.
std::vector<BitVec> nullspace_basis(const GF2Matrix &m);

}  // namespace qosd

#endif
