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

#include "qosd/channel.h"

#include <stdexcept>

namespace qosd {

void ChannelModel::validate() const {
    if (!(epsilon >= 0 && epsilon < 0.75)) {
        throw std::invalid_argument("depolarizing rate must lie in [0, 3/4)");
    }
}

BitVec sample_error(const ChannelModel &channel, size_t num_qubits, std::mt19937_64 &rng) {
    BitVec e(2 * num_qubits);
    if (channel.epsilon <= 0) {
        return e;
    }
    const double third = channel.epsilon / 3;
    for (size_t i = 0; i < num_qubits; i++) {
        double u = uniform_unit(rng);
        if (u >= channel.epsilon) {
            continue;
        }
        int which = u < third ? 0 : (u < 2 * third ? 1 : 2);
        // 0 -> X, 1 -> Y, 2 -> Z
        if (which <= 1) {
            e.set(i, true);
        }
        if (which >= 1) {
            e.set(num_qubits + i, true);
        }
    }
    return e;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

uint64_t trial_seed(uint64_t seed, uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x5851F42D4C957F2Dull));
}

}  // namespace qosd
