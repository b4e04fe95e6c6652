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

#include "qosd/testing/selftest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "qosd/adosd.h"
#include "qosd/channel.h"
#include "qosd/code_library.h"
#include "qosd/testing/oracles.h"

namespace qosd::testing {

namespace {

// Collects checks for one suite and remembers the first failure.
struct Checker {
    SuiteResult result;

    explicit Checker(std::string name) {
        result.name = std::move(name);
        result.passed = true;
    }
    bool expect(bool ok, const std::string &what) {
        result.checks++;
        if (!ok && result.passed) {
            result.passed = false;
            result.detail = what;
        }
        return ok;
    }
};

std::string random_paulis(size_t n, std::mt19937_64 &rng) {
    std::string out;
    for (size_t q = 0; q < n; q++) {
        out += "IXYZ"[rng() % 4];
    }
    return out;
}

BitVec random_bits(size_t n, std::mt19937_64 &rng, double density = 0.5) {
    BitVec v(n);
    for (size_t k = 0; k < n; k++) {
        if (uniform_unit(rng) < density) {
            v.set(k, true);
        }
    }
    return v;
}

std::vector<uint32_t> random_permutation(size_t n, std::mt19937_64 &rng) {
    std::vector<uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

SuiteResult commutation_suite(uint64_t seed) {
    Checker c("symplectic commutation oracle");
    std::mt19937_64 rng(seed);
    for (char a : std::string("IXYZ")) {
        for (char b : std::string("IXYZ")) {
            std::string sa(1, a), sb(1, b);
            bool anti = symplectic_product(pauli_to_bits(sa), pauli_to_bits(sb));
            c.expect(anti == !paulis_commute_by_matrices(sa, sb), "single-qubit pair " + sa + "," + sb);
        }
    }
    for (int t = 0; t < 300; t++) {
        size_t n = 1 + rng() % 3;
        std::string a = random_paulis(n, rng), b = random_paulis(n, rng);
        bool anti = symplectic_product(pauli_to_bits(a), pauli_to_bits(b));
        c.expect(anti == !paulis_commute_by_matrices(a, b), "pair " + a + "," + b);
    }
    return c.result;
}

std::vector<StabilizerCode> small_codes() {
    return {build_rotated_surface(3), build_rotated_surface(5), build_rotated_toric(4),
            build_bivariate_bicycle(bivariate_bicycle_preset("72-12-6"))};
}

SuiteResult syndrome_invariance_suite(uint64_t seed) {
    Checker c("syndrome stabilizer invariance");
    std::mt19937_64 rng(seed);
    for (const auto &code : small_codes()) {
        for (int t = 0; t < 40; t++) {
            BitVec e = random_bits(2 * code.n(), rng, 0.1);
            BitVec stab(2 * code.n());
            for (size_t r = 0; r < code.m(); r++) {
                if (rng() & 1) {
                    stab ^= code.check().row_vec(r);
                }
            }
            BitVec s = code.syndrome(e);
            c.expect(code.syndrome(e ^ stab) == s, code.name() + ": stabilizer changed the syndrome");
            c.expect(to_bits(s) == letterwise_syndrome(code, to_bits(e)), code.name() + ": letterwise syndrome mismatch");
            c.expect(!code.logical_action(stab).any(), code.name() + ": stabilizer has logical action");
        }
    }
    return c.result;
}

bool check_replay(const GF2Matrix &input, std::mt19937_64 &rng, Checker &c, const std::string &label) {
    BitVec rhs = random_bits(input.rows(), rng);
    BitVec rhs_replay = rhs;
    EliminationOptions options;
    options.record_row_ops = true;
    options.rhs = &rhs;
    Elimination e = gauss_eliminate(input, options);
    GF2Matrix replay = input;
    e.row_ops.apply(replay);
    e.row_ops.apply(rhs_replay);
    bool ok = c.expect(replay == e.reduced, label + ": row-op replay differs from the reduced matrix");
    ok &= c.expect(rhs_replay == rhs, label + ": row-op replay differs on the right-hand side");
    GF2Matrix standard = e.standard_form();
    for (size_t r = 0; r < standard.rows(); r++) {
        for (size_t k = 0; k < e.rank; k++) {
            ok &= c.expect(standard.get(r, k) == (r == k), label + ": pivot block is not the identity");
        }
        if (r >= e.rank) {
            ok &= c.expect(standard.row_weight(r) == 0, label + ": row below the rank is nonzero");
        }
    }
    ok &= c.expect(e.rank == input.rank(), label + ": rank mismatch");
    return ok;
}

SuiteResult elimination_replay_suite(uint64_t seed) {
    Checker c("gaussian elimination replay");
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 60; t++) {
        size_t rows = 1 + rng() % 40, cols = 1 + rng() % 80;
        GF2Matrix m(rows, cols);
        double density = 0.05 + 0.4 * uniform_unit(rng);
        for (size_t r = 0; r < rows; r++) {
            for (size_t k = 0; k < cols; k++) {
                if (uniform_unit(rng) < density) {
                    m.set(r, k, true);
                }
            }
        }
        if (t % 5 == 0 && rows > 1) {
            // Duplicate rows exercise rank deficiency.
            for (size_t k = 0; k < cols; k++) {
                m.set(rows - 1, k, m.get(0, k));
            }
        }
        check_replay(m, rng, c, "random " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    for (const auto &code : small_codes()) {
        auto perm = random_permutation(2 * code.n(), rng);
        GF2Matrix permuted = code.check_lambda().permute_columns(perm);
        check_replay(permuted, rng, c, code.name() + " permuted H Lambda");
        c.expect(gauss_eliminate(permuted).rank + code.k() == code.n(), code.name() + ": rank is not n - k");
    }
    return c.result;
}

SuiteResult lift_soundness_suite(uint64_t seed) {
    Checker c("reduction lift soundness");
    std::mt19937_64 rng(seed);
    StabilizerCode code = build_rotated_surface(5);
    const size_t n = code.n();
    BpConfig bp_config;
    bp_config.max_iterations = 8;
    bp_config.epsilon = 0.09;
    Bp4Decoder bp(code, bp_config);
    int reduced_ok = 0;
    for (int t = 0; t < 4000 && reduced_ok < 60; t++) {
        BitVec e = sample_error(ChannelModel{0.09}, n, rng);
        BitVec s = code.syndrome(e);
        BpOutcome out = bp.decode(s, &rng);
        if (out.success()) {
            continue;
        }
        const double theta = (t % 2) ? kDefaultTheta : 0.99;
        BitVec hard = out.belief.hard_bits();
        ReliabilityOrder order = build_order(out.belief);
        HrsrOptions options;
        options.keep_blocks = true;
        ReducedSystem red = hrsr(code, s, out.belief, hard, theta, order, options);
        if (red.status == HrsrStatus::kVerificationFailed) {
            continue;
        }
        // Block structure [H~ B ; 0 C] against H Lambda.
        const size_t c_cols = red.cols_reduced;
        bool blocks = true;
        for (size_t r = 0; r < code.m(); r++) {
            for (size_t p = 0; p < 2 * n; p++) {
                bool want = code.check_lambda().get(red.tau[r], red.sigma[p]);
                bool got;
                if (r < red.m_reduced) {
                    got = p < c_cols ? red.h_tilde.get(r, p) : red.b_block.get(r, p - c_cols);
                } else {
                    got = p < c_cols ? false : red.c_block.get(r - red.m_reduced, p - c_cols);
                }
                blocks &= want == got;
            }
        }
        c.expect(blocks, "block reassembly differs from H Lambda");
        BitVec e_h(2 * n - c_cols);
        for (size_t p = c_cols; p < 2 * n; p++) {
            e_h.set(p - c_cols, red.e_fixed[red.sigma[p]]);
        }
        BitVec expected = red.b_block.multiply(e_h);
        for (size_t r = 0; r < red.m_reduced; r++) {
            expected.set(r, expected[r] ^ s[red.tau[r]]);
        }
        c.expect(expected == red.s_tilde, "reduced syndrome is not s'' + B e^H");
        if (!red.ok()) {
            continue;
        }
        reduced_ok++;
        const OsdSystem &sys = *red.system;
        for (int k = 0; k < 6; k++) {
            BitVec reliable = k == 0 ? sys.reliable_hard() : random_bits(sys.reliable_length(), rng);
            BitVec full = sys.reconstruct(reliable);
            BitVec reduced_solution = project(red, full);
            c.expect(red.h_tilde.multiply(reduced_solution) == red.s_tilde, "reduced solution misses s~");
            BitVec lifted = lift(red, reduced_solution);
            c.expect(lifted == full, "lift does not invert the projection");
            c.expect(code.syndrome(lifted) == s, "lifted estimate misses the syndrome");
        }
    }
    c.expect(reduced_ok >= 20, "too few successful reductions: " + std::to_string(reduced_ok));
    return c.result;
}

SuiteResult dfs_count_suite(uint64_t seed) {
    Checker c("DFS candidate counts");
    std::mt19937_64 rng(seed);
    const size_t qubits = 8;
    for (int t = 0; t < 40; t++) {
        size_t rows = 3 + rng() % 6;
        std::vector<std::vector<uint32_t>> support(rows);
        for (auto &row : support) {
            for (uint32_t b = 0; b < 2 * qubits; b++) {
                if (uniform_unit(rng) < 0.3) {
                    row.push_back(b);
                }
            }
        }
        auto columns = random_permutation(2 * qubits, rng);
        BitVec e = random_bits(2 * qubits, rng, 0.2);
        BitVec s(rows);
        for (size_t r = 0; r < rows; r++) {
            bool parity = false;
            for (uint32_t b : support[r]) {
                parity ^= e[b];
            }
            s.set(r, parity);
        }
        OsdProblem problem;
        problem.num_qubits = qubits;
        problem.rows = support;
        problem.columns = columns;
        problem.syndrome = s;
        problem.hard = random_bits(2 * qubits, rng, 0.2);
        problem.fixed = BitVec(2 * qubits);
        OsdSystem sys = OsdSystem::build(problem);
        if (!c.expect(sys.consistent(), "generated system is inconsistent")) {
            continue;
        }
        const size_t r = sys.reliable_length();
        for (size_t w = 0; w <= 4; w++) {
            OsdResult res = osd_w(sys, w);
            uint64_t want = count_subsets_up_to(r, w);
            c.expect(res.candidates == want, "R=" + std::to_string(r) + " w=" + std::to_string(w) + ": visited " +
                                                 std::to_string(res.candidates) + ", expected " + std::to_string(want));
            c.expect(candidate_count(r, w) == want, "candidate_count disagrees with enumeration");
            if (want > 2) {
                OsdResult cut = osd_w(sys, w, want - 1);
                c.expect(cut.candidates == want - 1 && cut.budget_exhausted, "budget cutoff not honored");
            }
        }
    }
    return c.result;
}

SuiteResult flip_classification_suite(uint64_t seed) {
    Checker c("stabilizer flip classification on [[9,1,3]]");
    std::mt19937_64 rng(seed);
    StabilizerCode code = build_rotated_surface(3);
    const size_t n = code.n();
    for (int t = 0; t < 200; t++) {
        auto order = random_permutation(2 * n, rng);
        BitVec e = random_bits(2 * n, rng, 0.15);
        BitVec hard = random_bits(2 * n, rng, 0.15);
        OsdSystem sys = build_full_system(code, code.syndrome(e), order, hard);
        for (size_t j = 0; j < sys.reliable_length(); j++) {
            bool lib = stabilizer_flip_check(sys, code, j) == FlipClass::kStabilizer;
            bool oracle = is_stabilizer_by_letters(code, to_bits(sys.flip_vector(j)));
            c.expect(lib == oracle, "column " + std::to_string(j) + " classified differently");
        }
    }
    return c.result;
}

}  // namespace

const std::vector<Suite> &selftest_suites() {
    static const std::vector<Suite> suites = {
        {"commutation", commutation_suite},
        {"syndrome_invariance", syndrome_invariance_suite},
        {"elimination_replay", elimination_replay_suite},
        {"lift_soundness", lift_soundness_suite},
        {"dfs_counts", dfs_count_suite},
        {"flip_classification", flip_classification_suite},
    };
    return suites;
}

std::vector<SuiteResult> run_selftest(uint64_t seed) {
    std::vector<SuiteResult> out;
    for (const auto &suite : selftest_suites()) {
        try {
            out.push_back(suite.run(seed));
        } catch (const std::exception &ex) {
            SuiteResult r;
            r.name = suite.name;
            r.passed = false;
            r.detail = std::string("exception: ") + ex.what();
            out.push_back(r);
        }
    }
    return out;
}

}  // namespace qosd::testing
