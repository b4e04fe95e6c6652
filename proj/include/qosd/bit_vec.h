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

#ifndef QOSD_BIT_VEC_H
#define QOSD_BIT_VEC_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qosd {

constexpr size_t kWordBits = 64;

inline constexpr size_t words_for_bits(size_t num_bits) {
    return (num_bits + kWordBits - 1) / kWordBits;
}

/// XORs `src` into `dst` word by word. Both spans must have equal length.
inline void xor_words(std::span<uint64_t> dst, std::span<const uint64_t> src) {
    for (size_t k = 0; k < dst.size(); k++) {
        dst[k] ^= src[k];
    }
}

/// Parity of the bitwise AND of two equal-length word spans.
inline bool and_parity(std::span<const uint64_t> a, std::span<const uint64_t> b) {
    uint64_t acc = 0;
    for (size_t k = 0; k < a.size(); k++) {
        acc ^= a[k] & b[k];
    }
    return std::popcount(acc) & 1;
}

inline size_t popcount_words(std::span<const uint64_t> words) {
    size_t total = 0;
    for (uint64_t w : words) {
        total += std::popcount(w);
    }
    return total;
}

inline bool get_bit(std::span<const uint64_t> words, size_t k) {
    return (words[k / kWordBits] >> (k % kWordBits)) & 1;
}

inline void flip_bit(std::span<uint64_t> words, size_t k) {
    words[k / kWordBits] ^= uint64_t{1} << (k % kWordBits);
}

inline void set_bit(std::span<uint64_t> words, size_t k, bool value) {
    uint64_t mask = uint64_t{1} << (k % kWordBits);
    if (value) {
        words[k / kWordBits] |= mask;
    } else {
        words[k / kWordBits] &= ~mask;
    }
}

/// Calls `f(index)` for every set bit, in increasing order.
template <typename F>
inline void for_each_set_bit(std::span<const uint64_t> words, F &&f) {
    for (size_t w = 0; w < words.size(); w++) {
        uint64_t v = words[w];
        while (v) {
            f(w * kWordBits + static_cast<size_t>(std::countr_zero(v)));
            v &= v - 1;
        }
    }
}

/// Dense GF(2) vector packed into 64-bit words. Bits past `size()` in the last
/// word are always zero.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t num_bits) : num_bits_(num_bits), words_(words_for_bits(num_bits), 0) {
    }

    static BitVec from_indices(size_t num_bits, std::span<const uint32_t> indices);
    /// Parses a string of '0'/'1' characters (other characters are skipped).
    static BitVec from_string(std::string_view text);

    size_t size() const {
        return num_bits_;
    }
    bool empty() const {
        return num_bits_ == 0;
    }
    size_t num_words() const {
        return words_.size();
    }

    bool operator[](size_t k) const {
        return get_bit(words_, k);
    }
    bool get(size_t k) const {
        return get_bit(words_, k);
    }
    void set(size_t k, bool value) {
        set_bit(words_, k, value);
    }
    void flip(size_t k) {
        flip_bit(words_, k);
    }
    void clear();

    std::span<uint64_t> words() {
        return words_;
    }
    std::span<const uint64_t> words() const {
        return words_;
    }

    BitVec &operator^=(const BitVec &other);
    BitVec operator^(const BitVec &other) const;
    bool operator==(const BitVec &other) const = default;

    size_t popcount() const {
        return popcount_words(words_);
    }
    bool any() const;
    bool dot(const BitVec &other) const {
        return and_parity(words_, other.words_);
    }
    std::vector<uint32_t> set_indices() const;
    std::string str() const;

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace qosd

#endif
