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

#ifndef QOSD_PAULI_H
#define QOSD_PAULI_H

#include <cstdint>
#include <string>
#include <string_view>

#include "qosd/bit_vec.h"

namespace qosd {

/// Single-qubit Pauli up to phase. The numeric order I < X < Y < Z is the
/// tie-break order used by hard decisions.
enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr bool has_x(Pauli p) {
    return p == Pauli::X || p == Pauli::Y;
}
inline constexpr bool has_z(Pauli p) {
    return p == Pauli::Z || p == Pauli::Y;
}
inline constexpr Pauli pauli_from_bits(bool x, bool z) {
    return x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I);
}
/// True iff both are non-identity and different.
inline constexpr bool anticommute(Pauli a, Pauli b) {
    return a != Pauli::I && b != Pauli::I && a != b;
}
char pauli_char(Pauli p);

/// An n-qubit Pauli operator up to phase in binary symplectic form: a bit
/// vector of length 2n laid out as [X part | Z part].
class SymplecticVector {
   public:
    SymplecticVector() = default;
    explicit SymplecticVector(size_t num_qubits) : num_qubits_(num_qubits), bits_(2 * num_qubits) {
    }
    SymplecticVector(size_t num_qubits, BitVec bits);

    /// Maps I->(0|0), X->(1|0), Z->(0|1), Y->(1|1) qubit by qubit. Accepts '_' as I.
    static SymplecticVector from_str(std::string_view paulis);

    size_t num_qubits() const {
        return num_qubits_;
    }
    const BitVec &bits() const {
        return bits_;
    }
    BitVec &bits() {
        return bits_;
    }

    Pauli at(size_t qubit) const {
        return pauli_from_bits(bits_[qubit], bits_[num_qubits_ + qubit]);
    }
    void set(size_t qubit, Pauli p);

    /// Number of qubits acted on non-trivially.
    size_t weight() const;
    bool is_identity() const {
        return !bits_.any();
    }

    SymplecticVector &operator^=(const SymplecticVector &other);
    SymplecticVector operator^(const SymplecticVector &other) const;
    bool operator==(const SymplecticVector &other) const = default;

    std::string str() const;

   private:
    size_t num_qubits_ = 0;
    BitVec bits_;
};

SymplecticVector pauli_to_bits(std::string_view paulis);

/// a Lambda b^T mod 2; one iff the Paulis anticommute.
bool symplectic_product(const SymplecticVector &a, const SymplecticVector &b);
/// Same on raw flat vectors of length 2n.
bool symplectic_product(const BitVec &a, const BitVec &b);

/// Qubit-support weight of a flat [X | Z] word array holding `num_qubits` qubits.
size_t pauli_weight(std::span<const uint64_t> words, size_t num_qubits);

/// Swaps the X and Z halves of a flat [X | Z] vector (the action of Lambda).
BitVec swap_halves(const BitVec &v);

}  // namespace qosd

#endif
