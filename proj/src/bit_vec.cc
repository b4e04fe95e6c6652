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

#include "qosd/bit_vec.h"

#include <algorithm>
#include <stdexcept>

namespace qosd {

BitVec BitVec::from_indices(size_t num_bits, std::span<const uint32_t> indices) {
    BitVec result(num_bits);
    for (uint32_t k : indices) {
        if (k >= num_bits) {
            throw std::out_of_range("bit index " + std::to_string(k) + " >= " + std::to_string(num_bits));
        }
        result.flip(k);
    }
    return result;
}

BitVec BitVec::from_string(std::string_view text) {
    size_t n = std::count_if(text.begin(), text.end(), [](char c) {
        return c == '0' || c == '1';
    });
    BitVec result(n);
    size_t k = 0;
    for (char c : text) {
        if (c == '0' || c == '1') {
            result.set(k++, c == '1');
        }
    }
    return result;
}

void BitVec::clear() {
    std::fill(words_.begin(), words_.end(), 0);
}

BitVec &BitVec::operator^=(const BitVec &other) {
    if (other.num_bits_ != num_bits_) {
        throw std::invalid_argument("BitVec length mismatch in xor");
    }
    xor_words(words_, other.words_);
    return *this;
}

BitVec BitVec::operator^(const BitVec &other) const {
    BitVec result = *this;
    result ^= other;
    return result;
}

bool BitVec::any() const {
    return std::any_of(words_.begin(), words_.end(), [](uint64_t w) {
        return w != 0;
    });
}

std::vector<uint32_t> BitVec::set_indices() const {
    std::vector<uint32_t> out;
    for_each_set_bit(words_, [&](size_t k) {
        out.push_back(static_cast<uint32_t>(k));
    });
    return out;
}

std::string BitVec::str() const {
    std::string out(num_bits_, '0');
    for (size_t k = 0; k < num_bits_; k++) {
        if (get(k)) {
            out[k] = '1';
        }
    }
    return out;
}

}  // namespace qosd
