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

#ifndef QOSD_CODE_LIBRARY_H
#define QOSD_CODE_LIBRARY_H

#include <string>
#include <string_view>
#include <vector>

#include "qosd/stabilizer_code.h"

namespace qosd {

/// Monomial x^x_exp y^y_exp in the group algebra of Z_l x Z_m.
struct Monomial {
    uint32_t x_exp = 0;
    uint32_t y_exp = 0;
    bool operator==(const Monomial &) const = default;
};

struct BivariateBicycleParams {
    std::string name;
    size_t l = 0;
    size_t m = 0;
    std::vector<Monomial> a;
    std::vector<Monomial> b;
    /// Published distance, 0 if unknown.
    size_t d = 0;
};

/// Parses a polynomial such as "x^3+y+y^2" or "1+x^2+x^7".
std::vector<Monomial> parse_bb_polynomial(std::string_view text);
std::string format_bb_polynomial(const std::vector<Monomial> &poly);

/// Named parameter sets shipped in data/bb_presets.txt.
const std::vector<BivariateBicycleParams> &bivariate_bicycle_presets();
const BivariateBicycleParams &bivariate_bicycle_preset(std::string_view name);
std::vector<BivariateBicycleParams> parse_bb_presets(std::string_view text);

enum class CodeFamily { kRotatedSurface, kRotatedToric, kBivariateBicycle, kFromFile };

/// What code to build. Text form: "surface:<d>", "toric:<d>", "bb:<preset>",
/// or "file:<path>".
struct CodeSpec {
    CodeFamily family = CodeFamily::kRotatedSurface;
    size_t distance = 3;
    std::string preset;
    std::string path;
    /// For imported codes: let degeneracy shortcuts rely on the declared d.
    bool trust_distance = false;

    static CodeSpec parse(std::string_view text);
    std::string str() const;
    bool operator==(const CodeSpec &) const = default;
};

/// [[d^2, 1, d]] rotated surface code: weight-4 plaquettes in a checkerboard,
/// weight-2 X checks on the top/bottom boundary and Z checks on the left/right.
StabilizerCode build_rotated_surface(size_t d);

/// [[d^2, 2, d]] rotated toric code on a d x d torus (d even). One of the two
/// dependent plaquettes is dropped, leaving n - k + 1 generators.
StabilizerCode build_rotated_toric(size_t d);

/// CSS code with H_X = [A | B] and H_Z = [B^T | A^T]. All 2 * l * m natural
/// generators are kept, so m > n - k.
StabilizerCode build_bivariate_bicycle(const BivariateBicycleParams &params);

/// Logical operators completing the row space of `check` to the normalizer,
/// as k anticommuting pairs ordered X_1..X_k, Z_1..Z_k.
GF2Matrix complete_logicals(size_t n, const GF2Matrix &check);

StabilizerCode build_code(const CodeSpec &spec);

}  // namespace qosd

#endif
