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

#ifndef QOSD_TESTING_SELFTEST_H
#define QOSD_TESTING_SELFTEST_H

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qosd::testing {

struct SuiteResult {
    std::string name;
    bool passed = false;
    uint64_t checks = 0;
    /// First failure, empty on success.
    std::string detail;
};

struct Suite {
    std::string name;
    std::function<SuiteResult(uint64_t seed)> run;
};

/// The invariant suites: commutation, syndrome invariance, elimination replay,
/// reduction lift soundness, DFS candidate counts, and the stabilizer flip
/// classification. Deterministic for a fixed seed.
const std::vector<Suite> &selftest_suites();

std::vector<SuiteResult> run_selftest(uint64_t seed = 20260101);

}  // namespace qosd::testing

#endif
