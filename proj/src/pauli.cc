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

#include "qosd/pauli.h"

#include <stdexcept>

namespace qosd {

char pauli_char(Pauli p) {
    return "IXYZ"[static_cast<int>(p)];
}

SymplecticVector::SymplecticVector(size_t num_qubits, BitVec bits)
    : num_qubits_(num_qubits), bits_(std::move(bits)) {
    if (bits_.size() != 2 * num_qubits_) {
        throw std::invalid_argument(
            "symplectic vector needs " + std::to_string(2 * num_qubits_) + " bits, got " +
            std::to_string(bits_.size()));
    }
}

SymplecticVector SymplecticVector::from_str(std::string_view paulis) {
    SymplecticVector out(paulis.size());
    for (size_t q = 0; q < paulis.size(); q++) {
        switch (paulis[q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                out.set(q, Pauli::X);
                break;
            case 'Y':
                out.set(q, Pauli::Y);
                break;
            case 'Z':
                out.set(q, Pauli::Z);
                break;
            default:
                throw std::invalid_argument(std::string("not a Pauli character: '") + paulis[q] + "'");
        }
    }
    return out;
}

void SymplecticVector::set(size_t qubit, Pauli p) {
    bits_.set(qubit, has_x(p));
    bits_.set(num_qubits_ + qubit, has_z(p));
}

size_t SymplecticVector::weight() const {
    return pauli_weight(bits_.words(), num_qubits_);
}

SymplecticVector &SymplecticVector::operator^=(const SymplecticVector &other) {
    bits_ ^= other.bits_;
    return *this;
}

SymplecticVector SymplecticVector::operator^(const SymplecticVector &other) const {
    SymplecticVector out = *this;
    out ^= other;
    return out;
}

std::string SymplecticVector::str() const {
    std::string out(num_qubits_, 'I');
    for (size_t q = 0; q < num_qubits_; q++) {
        out[q] = pauli_char(at(q));
    }
    return out;
}

SymplecticVector pauli_to_bits(std::string_view paulis) {
    if (paulis.empty()) {
        throw std::invalid_argument("empty Pauli string");
    }
    return SymplecticVector::from_str(paulis);
}

bool symplectic_product(const BitVec &a, const BitVec &b) {
    if (a.size() != b.size() || a.size() % 2 != 0) {
        throw std::invalid_argument(
            "symplectic product needs equal even lengths, got " + std::to_string(a.size()) + " and " +
            std::to_string(b.size()));
    }
    return swap_halves(a).dot(b);
}

bool symplectic_product(const SymplecticVector &a, const SymplecticVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("symplectic product of Paulis on different qubit counts");
    }
    size_t n = a.num_qubits();
    bool acc = false;
    for (size_t q = 0; q < n; q++) {
        acc ^= (a.bits()[q] & b.bits()[n + q]) ^ (a.bits()[n + q] & b.bits()[q]);
    }
    return acc;
}

namespace {

/// 64 bits of `words` starting at bit `offset` (zero-filled past the end).
inline uint64_t load_bits(std::span<const uint64_t> words, size_t offset) {
    size_t w = offset / kWordBits;
    size_t shift = offset % kWordBits;
    uint64_t lo = w < words.size() ? words[w] : 0;
    if (shift == 0) {
        return lo;
    }
    uint64_t hi = w + 1 < words.size() ? words[w + 1] : 0;
    return (lo >> shift) | (hi << (kWordBits - shift));
}

}  // namespace

size_t pauli_weight(std::span<const uint64_t> words, size_t num_qubits) {
    size_t total = 0;
    size_t full = num_qubits / kWordBits;
    for (size_t w = 0; w < full; w++) {
        total += std::popcount(words[w] | load_bits(words, num_qubits + w * kWordBits));
    }
    size_t rest = num_qubits % kWordBits;
    if (rest) {
        uint64_t mask = (uint64_t{1} << rest) - 1;
        uint64_t x = load_bits(words, full * kWordBits) & mask;
        uint64_t z = load_bits(words, num_qubits + full * kWordBits) & mask;
        total += std::popcount(x | z);
    }
    return total;
}

BitVec swap_halves(const BitVec &v) {
    size_t n = v.size() / 2;
    BitVec out(v.size());
    for_each_set_bit(v.words(), [&](size_t k) {
        out.set(k < n ? k + n : k - n, true);
    });
    return out;
}

}  // namespace qosd
