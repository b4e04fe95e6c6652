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


#include "qosd/code_library.h"

#include <gtest/gtest.h>

#include "qosd/testing/oracles.h"

namespace qosd {

namespace {

void expect_valid(const StabilizerCode &code) {
    CodeCheckReport report = check_code(code);
    for (const auto &f : report.failures) {
        ADD_FAILURE() << code.name() << ": " << f;
    }
    EXPECT_EQ(report.rank, code.n() - code.k());
    EXPECT_EQ(report.logical_pairing_rank, 2 * code.k());
}

}  // namespace

TEST(code_library, surface_parameters) {
    for (size_t d : {3, 5, 7, 11}) {
        StabilizerCode code = build_rotated_surface(d);
        EXPECT_EQ(code.n(), d * d);
        EXPECT_EQ(code.k(), 1u);
        EXPECT_EQ(code.d(), d);
        EXPECT_EQ(code.m(), d * d - 1);
        expect_valid(code);
    }
    StabilizerCode code = build_rotated_surface(5);
    for (size_t r = 0; r < code.m(); r++) {
        size_t w = code.check().row_weight(r);
        EXPECT_TRUE(w == 2 || w == 4) << r;
    }
    EXPECT_THROW(build_rotated_surface(4), std::invalid_argument);
}

TEST(code_library, surface_d3_distance_by_exhaustion) {
    StabilizerCode code = build_rotated_surface(3);
    int min_logical = 100;
    testing::Bits g(18);
    for (uint32_t idx = 1; idx < (1u << 18); idx++) {
        size_t weight = 0;
        for (size_t i = 0; i < 9; i++) {
            g[i] = (idx >> (2 * i)) & 1;
            g[9 + i] = (idx >> (2 * i + 1)) & 1;
            weight += g[i] || g[9 + i];
        }
        if (static_cast<int>(weight) >= min_logical) {
            continue;
        }
        bool zero_syndrome = true;
        for (uint8_t b : testing::letterwise_syndrome(code, g)) {
            zero_syndrome = zero_syndrome && b == 0;
        }
        if (zero_syndrome && !testing::is_stabilizer_by_letters(code, g)) {
            min_logical = static_cast<int>(weight);
        }
    }
    EXPECT_EQ(min_logical, 3);
}

TEST(code_library, toric_parameters) {
    for (size_t d : {2, 4, 6, 8}) {
        StabilizerCode code = build_rotated_toric(d);
        EXPECT_EQ(code.n(), d * d);
        EXPECT_EQ(code.k(), 2u);
        EXPECT_EQ(code.m(), d * d - 1);
        expect_valid(code);
    }
    StabilizerCode code = build_rotated_toric(4);
    for (size_t r = 0; r < code.m(); r++) {
        EXPECT_EQ(code.check().row_weight(r), 4u);
    }
}

TEST(code_library, bivariate_bicycle_presets) {
    struct Expected {
        const char *name;
        size_t n, k, d;
    };
    for (Expected e : {Expected{"72-12-6", 72, 12, 6}, Expected{"90-8-10", 90, 8, 10},
                       Expected{"108-8-10", 108, 8, 10}, Expected{"144-12-12", 144, 12, 12},
                       Expected{"288-12-18", 288, 12, 18}}) {
        StabilizerCode code = build_bivariate_bicycle(bivariate_bicycle_preset(e.name));
        EXPECT_EQ(code.n(), e.n) << e.name;
        EXPECT_EQ(code.k(), e.k) << e.name;
        EXPECT_EQ(code.d(), e.d) << e.name;
        EXPECT_EQ(code.m(), code.n()) << e.name;
        expect_valid(code);
    }
    EXPECT_THROW(bivariate_bicycle_preset("nope"), std::invalid_argument);
}

TEST(code_library, polynomial_round_trip) {
    auto p = parse_bb_polynomial("x^3+y+y^2");
    ASSERT_EQ(p.size(), 3u);
    EXPECT_EQ(p[0], (Monomial{3, 0}));
    EXPECT_EQ(p[1], (Monomial{0, 1}));
    EXPECT_EQ(format_bb_polynomial(p), "x^3+y+y^2");
    EXPECT_EQ(format_bb_polynomial(parse_bb_polynomial("1+x^2+x^7")), "1+x^2+x^7");
    EXPECT_THROW(parse_bb_polynomial("x^3+z"), std::invalid_argument);
}

TEST(code_library, code_spec_parse) {
    EXPECT_EQ(CodeSpec::parse("surface:7").distance, 7u);
    EXPECT_EQ(CodeSpec::parse("toric:4").family, CodeFamily::kRotatedToric);
    EXPECT_EQ(CodeSpec::parse("bb:144-12-12").preset, "144-12-12");
    EXPECT_EQ(CodeSpec::parse("file:/tmp/x.qcode").path, "/tmp/x.qcode");
    EXPECT_EQ(CodeSpec::parse("surface:9").str(), "surface:9");
    EXPECT_THROW(CodeSpec::parse("color:5"), std::invalid_argument);
    EXPECT_THROW(CodeSpec::parse("file:"), std::invalid_argument);
}

TEST(code_library, complete_logicals_pairs) {
    StabilizerCode code = build_rotated_toric(6);
    GF2Matrix l = complete_logicals(code.n(), code.check());
    ASSERT_EQ(l.rows(), 4u);
    for (size_t a = 0; a < 4; a++) {
        for (size_t b = 0; b < 4; b++) {
            bool anti = symplectic_product(l.row_vec(a), l.row_vec(b));
            // X_i anticommutes exactly with Z_i.
            EXPECT_EQ(anti, (a < 2) != (b < 2) && a % 2 == b % 2) << a << " " << b;
        }
    }
}

}  // namespace qosd
