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


#include "qosd/adosd.h"

#include <gtest/gtest.h>

#include <random>

#include "qosd/channel.h"
#include "qosd/code_library.h"
#include "qosd/testing/oracles.h"

namespace qosd {

namespace {

struct Sample {
    BitVec error;
    BitVec syndrome;
    BpOutcome bp;
};

Sample bp_sample(const StabilizerCode &code, double eps, size_t iterations, std::mt19937_64 &rng) {
    Sample out;
    out.error = sample_error(ChannelModel{eps}, code.n(), rng);
    out.syndrome = code.syndrome(out.error);
    out.bp = bp4_decode(code, out.syndrome, BpConfig{.max_iterations = iterations, .epsilon = eps});
    return out;
}

// Every qubit confidently identity and unchanged for the whole run.
BeliefState settled_identity(size_t n, size_t iterations) {
    BeliefState b;
    b.q.assign(n, {1 - 3e-9, 1e-9, 1e-9, 1e-9});
    b.hard.assign(n, Pauli::I);
    b.eta.assign(n, static_cast<uint32_t>(iterations + 1));
    b.iterations_run = iterations;
    return b;
}

}  // namespace

TEST(adosd, mask_needs_settled_and_confident_bits) {
    BeliefState b;
    b.q = {{0.999999, 0, 0, 0.000001}, {0.999999, 0, 0, 0.000001}, {0.999999, 0, 0, 0.000001}, {0.5, 0.5, 0, 0}};
    b.hard = {Pauli::I, Pauli::I, Pauli::I, Pauli::I};
    b.eta = {5, 6, 3, 6};
    HighlyReliableMask mask = select_highly_reliable(b, 5, 0.99);
    // Qubit 2 moved too recently. Qubit 3 has phi^Z = 1 but phi^X = 0.5.
    EXPECT_EQ(mask.selected.str(), "11001101");
    EXPECT_EQ(mask.v, 5u);
    mask = select_highly_reliable(b, 5, 0.4);
    EXPECT_EQ(mask.selected.str(), "11011101");
    EXPECT_EQ(mask.v, 6u);
}

TEST(adosd, theta_above_one_reduces_nothing) {
    std::mt19937_64 rng(41);
    StabilizerCode code = build_rotated_surface(5);
    for (int trial = 0; trial < 20; trial++) {
        Sample smp = bp_sample(code, 0.08, 10, rng);
        ReliabilityOrder order = build_order(smp.bp.belief);
        BitVec hard = smp.bp.belief.hard_bits();
        ReducedSystem red = hrsr(code, smp.syndrome, smp.bp.belief, hard, 1.5, order);
        ASSERT_TRUE(red.ok());
        EXPECT_EQ(red.mask.v, 0u);
        EXPECT_EQ(red.m_reduced, code.m());
        EXPECT_EQ(red.cols_reduced, 2 * code.n());
        EXPECT_EQ(red.s_tilde, smp.syndrome);
        EXPECT_EQ(red.sigma, order.order);
        OsdSystem full = build_full_system(code, smp.syndrome, order.order, hard);
        EXPECT_EQ(red.system->osd0_estimate(), full.osd0_estimate());
    }
}

TEST(adosd, fully_selected_consistent_hard_decision_leaves_no_rows) {
    std::mt19937_64 rng(42);
    StabilizerCode code = build_rotated_surface(5);
    BeliefState b = settled_identity(code.n(), 10);
    BitVec zero(code.m());
    ReducedSystem red = hrsr(code, zero, b, b.hard_bits(), kDefaultTheta, build_order(b));
    ASSERT_TRUE(red.ok());
    EXPECT_EQ(red.mask.v, 2 * code.n());
    EXPECT_EQ(red.m_reduced, 0u);
    EXPECT_EQ(red.cols_reduced, 0u);
    EXPECT_FALSE(lift(red, BitVec(0)).any());

    BitVec s = code.syndrome(sample_error(ChannelModel{0.2}, code.n(), rng));
    ASSERT_TRUE(s.any());
    red = hrsr(code, s, b, b.hard_bits(), kDefaultTheta, build_order(b));
    EXPECT_EQ(red.status, HrsrStatus::kVerificationFailed);
}

TEST(adosd, lifted_solutions_reproduce_the_syndrome) {
    std::mt19937_64 rng(43);
    StabilizerCode code = build_rotated_surface(7);
    int ok = 0;
    for (int trial = 0; trial < 200; trial++) {
        Sample smp = bp_sample(code, 0.06, 20, rng);
        BitVec hard = smp.bp.belief.hard_bits();
        ReducedSystem red = hrsr(code, smp.syndrome, smp.bp.belief, hard, 0.99, build_order(smp.bp.belief));
        if (!red.ok()) {
            continue;
        }
        ok++;
        const OsdSystem &sys = *red.system;
        EXPECT_EQ(code.syndrome(sys.osd0_estimate()), smp.syndrome);
        // Selected bits keep their hard decision.
        for_each_set_bit(red.mask.selected.words(), [&](size_t b) {
            EXPECT_EQ(sys.osd0_estimate()[b], hard[b]);
        });
        EXPECT_EQ(lift(red, project(red, sys.osd0_estimate())), sys.osd0_estimate());
        for (size_t j = 0; j < sys.reliable_length(); j++) {
            EXPECT_EQ(code.syndrome(sys.flip_candidate(sys.osd0_estimate(), j)), smp.syndrome);
        }
    }
    EXPECT_GT(ok, 100);
}

TEST(adosd, blocks_reassemble_the_permuted_check_matrix) {
    std::mt19937_64 rng(44);
    StabilizerCode code = build_rotated_surface(5);
    const GF2Matrix &hl = code.check_lambda();
    for (int trial = 0; trial < 20; trial++) {
        Sample smp = bp_sample(code, 0.05, 20, rng);
        BitVec hard = smp.bp.belief.hard_bits();
        ReducedSystem red = hrsr(
            code, smp.syndrome, smp.bp.belief, hard, 0.99, build_order(smp.bp.belief), {.keep_blocks = true});
        if (red.status == HrsrStatus::kVerificationFailed) {
            continue;
        }
        const size_t c = red.cols_reduced;
        for (size_t t = 0; t < code.m(); t++) {
            for (size_t p = 0; p < 2 * code.n(); p++) {
                bool want = hl.get(red.tau[t], red.sigma[p]);
                bool got;
                if (t < red.m_reduced) {
                    got = p < c ? red.h_tilde.get(t, p) : red.b_block.get(t, p - c);
                } else {
                    got = p < c ? false : red.c_block.get(t - red.m_reduced, p - c);
                }
                ASSERT_EQ(got, want) << "t=" << t << " p=" << p;
            }
        }
    }
}

TEST(adosd, corollary_check_examples) {
    std::vector<uint32_t> weights = {0, 1, 2};
    EXPECT_TRUE(corollary_check(weights, 4));
    EXPECT_FALSE(corollary_check(weights, 3));
    EXPECT_TRUE(corollary_check(std::vector<uint32_t>{}, 1));
}

TEST(adosd, flip_classification_matches_the_letter_oracle) {
    std::mt19937_64 rng(45);
    StabilizerCode code = build_rotated_surface(3);
    for (int trial = 0; trial < 20; trial++) {
        BitVec s = code.syndrome(sample_error(ChannelModel{0.2}, code.n(), rng));
        std::vector<uint32_t> order(2 * code.n());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        OsdSystem sys = build_full_system(code, s, order, BitVec(2 * code.n()));
        DegeneracyReport report = degeneracy_report(sys, code, true);
        size_t nontrivial = 0;
        for (size_t j = 0; j < sys.reliable_length(); j++) {
            bool oracle = testing::is_stabilizer_by_letters(code, testing::to_bits(sys.flip_vector(j)));
            EXPECT_EQ(stabilizer_flip_check(sys, code, j) == FlipClass::kStabilizer, oracle);
            EXPECT_EQ(report.is_stabilizer[j] != 0, oracle);
            nontrivial += !oracle;
        }
        EXPECT_EQ(report.nontrivial_columns, nontrivial);
    }
}

TEST(adosd, light_columns_only_flip_by_stabilizers) {
    std::mt19937_64 rng(46);
    StabilizerCode code = build_rotated_surface(7);
    int fired = 0;
    for (int trial = 0; trial < 300; trial++) {
        Sample smp = bp_sample(code, 0.05, 20, rng);
        BitVec hard = smp.bp.belief.hard_bits();
        ReducedSystem red = hrsr(code, smp.syndrome, smp.bp.belief, hard, kDefaultTheta, build_order(smp.bp.belief));
        if (!red.ok() || !corollary_check(*red.system, code.d())) {
            continue;
        }
        fired++;
        for (size_t j = 0; j < red.system->reliable_length(); j++) {
            ASSERT_EQ(stabilizer_flip_check(*red.system, code, j), FlipClass::kStabilizer);
        }
    }
    EXPECT_GT(fired, 0);
}

TEST(adosd, failed_reduction_falls_back_to_full_osd) {
    std::mt19937_64 rng(47);
    StabilizerCode code = build_rotated_surface(5);
    BeliefState b = settled_identity(code.n(), 10);
    BitVec s = code.syndrome(sample_error(ChannelModel{0.2}, code.n(), rng));
    AdosdOutcome out = adosd(code, s, b, AdosdConfig{});
    EXPECT_EQ(out.path, AdosdPath::kFallback);
    EXPECT_EQ(out.hrsr_status, HrsrStatus::kVerificationFailed);
    OsdSystem full = build_full_system(code, s, build_order(b).order, b.hard_bits());
    OsdResult want = osd_w(full, 2, osd2_budget(code));
    EXPECT_EQ(out.estimate, want.estimate);
    EXPECT_EQ(out.candidates, want.candidates);
    EXPECT_EQ(code.syndrome(out.estimate), s);
}

TEST(adosd, no_selection_matches_budgeted_osd) {
    std::mt19937_64 rng(48);
    StabilizerCode code = build_rotated_surface(5).with_distance_trust(false);
    for (int trial = 0; trial < 20; trial++) {
        Sample smp = bp_sample(code, 0.08, 10, rng);
        AdosdOutcome out = adosd(code, smp.syndrome, smp.bp.belief, AdosdConfig{.theta = 1.5});
        ASSERT_EQ(out.v, 0u);
        OsdSystem full = build_full_system(
            code, smp.syndrome, build_order(smp.bp.belief).order, smp.bp.belief.hard_bits());
        uint64_t budget = osd2_budget(code);
        OsdResult want = osd_w(full, order_from_budget(full.reliable_length(), budget), budget);
        EXPECT_EQ(out.estimate, want.estimate);
        EXPECT_EQ(out.path, AdosdPath::kOrderW);
    }
}

TEST(adosd, corollary_needs_a_trusted_distance) {
    std::mt19937_64 rng(49);
    StabilizerCode trusted = build_rotated_surface(5);
    ASSERT_TRUE(trusted.distance_trusted());
    StabilizerCode untrusted = trusted.with_distance_trust(false);
    int order0 = 0;
    for (int trial = 0; trial < 200; trial++) {
        Sample smp = bp_sample(trusted, 0.05, 20, rng);
        AdosdOutcome a = adosd(trusted, smp.syndrome, smp.bp.belief, AdosdConfig{});
        AdosdOutcome b = adosd(untrusted, smp.syndrome, smp.bp.belief, AdosdConfig{});
        EXPECT_EQ(trusted.syndrome(a.estimate), smp.syndrome);
        EXPECT_EQ(untrusted.syndrome(b.estimate), smp.syndrome);
        EXPECT_FALSE(b.report.all_columns_light);
        if (a.path == AdosdPath::kOrder0) {
            order0++;
            EXPECT_TRUE(a.report.all_columns_light || a.cols_reduced == a.m_reduced);
            // Both results lie in the same coset.
            EXPECT_FALSE(is_logical_error(trusted, a.estimate, b.estimate));
        }
    }
    EXPECT_GT(order0, 0);
}

TEST(adosd, nontrivial_only_search_stays_valid) {
    std::mt19937_64 rng(50);
    StabilizerCode code = build_rotated_surface(5);
    for (int trial = 0; trial < 30; trial++) {
        Sample smp = bp_sample(code, 0.1, 10, rng);
        AdosdOutcome out = adosd(
            code, smp.syndrome, smp.bp.belief, AdosdConfig{.count_nontrivial = true, .nontrivial_only = true});
        EXPECT_EQ(code.syndrome(out.estimate), smp.syndrome);
    }
}

}  // namespace qosd
