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

// Slow reference implementations that share no code paths with the decoders.
// They operate on plain byte vectors rather than packed bits.

#ifndef QOSD_TESTING_ORACLES_H
#define QOSD_TESTING_ORACLES_H

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qosd/stabilizer_code.h"

namespace qosd::testing {

using Bits = std::vector<uint8_t>;
using DenseMatrix = std::vector<Bits>;

Bits to_bits(const BitVec &v);
BitVec from_bits(const Bits &b);
DenseMatrix to_dense(const GF2Matrix &m);

/// Whether two Paulis commute, decided by multiplying explicit 2^n x 2^n
/// complex matrices. n must be at most 4.
bool paulis_commute_by_matrices(const std::string &a, const std::string &b);

/// Syndrome bit j is the parity of qubits where the error anticommutes with
/// stabilizer j, computed qubit by qubit on Pauli letters.
Bits letterwise_syndrome(const StabilizerCode &code, const Bits &error);

/// Minimum Pauli weight of any error with each syndrome, by enumerating all
/// 4^n errors. Entry s is indexed by the syndrome bits read as a little-endian
/// integer; -1 marks syndromes that never occur. n must be at most 12.
std::vector<int> brute_force_min_weights(const StabilizerCode &code);
uint64_t syndrome_index(const Bits &syndrome);

/// Solves the listed rows of H Lambda for the pivot bits with every other bit
/// given by `known`, using dense elimination restricted to `pivots`. Returns
/// nullopt when the pivot columns are singular or the system is inconsistent.
std::optional<Bits> solve_for_pivots(
    const StabilizerCode &code,
    const std::vector<uint32_t> &rows,
    const Bits &syndrome_of_rows,
    const std::vector<uint32_t> &pivots,
    const Bits &known);

/// g is a stabilizer iff it has zero syndrome and commutes with every logical.
bool is_stabilizer_by_letters(const StabilizerCode &code, const Bits &g);

/// Number of subsets of size <= w of an R-element set, by bitmask enumeration.
uint64_t count_subsets_up_to(size_t r, size_t w);

}  // namespace qosd::testing

#endif
