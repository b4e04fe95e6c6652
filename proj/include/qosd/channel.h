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

#ifndef QOSD_CHANNEL_H
#define QOSD_CHANNEL_H

#include <cstdint>
#include <random>

#include "qosd/bit_vec.h"

namespace qosd {

/// Depolarizing noise: each qubit is I with probability 1 - epsilon and X, Y, Z
/// with probability epsilon / 3 each.
struct ChannelModel {
    double epsilon = 0;

    void validate() const;
};

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform_unit(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

BitVec sample_error(const ChannelModel &channel, size_t num_qubits, std::mt19937_64 &rng);

uint64_t splitmix64(uint64_t x);

/// Seed of trial `index` in a run seeded by `seed`. Independent of how trials
/// are split across workers.
uint64_t trial_seed(uint64_t seed, uint64_t index);

}  // namespace qosd

#endif
