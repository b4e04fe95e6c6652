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

#ifndef QOSD_BP4_H
#define QOSD_BP4_H

#include <array>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qosd/stabilizer_code.h"

namespace qosd {

enum class BpSchedule { kParallel, kSerial, kSerialRandomOrder };

std::string_view schedule_name(BpSchedule schedule);
BpSchedule parse_schedule(std::string_view name);

struct BpConfig {
    size_t max_iterations = 100;
    /// Step size parameter. Incoming check messages are scaled by 1/alpha.
    double alpha = 1.0;
    /// Depolarizing rate used for the prior.
    double epsilon = 0.01;
    BpSchedule schedule = BpSchedule::kParallel;
    /// When false, all iterations run even after the hard decision matches.
    bool early_stop = true;
    /// Keep every iteration's hard decision in BeliefState::history.
    bool record_history = false;

    void validate() const;
};

/// Beliefs after the last iteration. q[i] is (q^I, q^X, q^Y, q^Z).
struct BeliefState {
    std::vector<std::array<double, 4>> q;
    std::vector<Pauli> hard;
    /// Length of the final constant run of each qubit's hard decision, counting
    /// the initial identity guess. Always in [1, T + 1].
    std::vector<uint32_t> eta;
    size_t iterations_run = 0;
    std::vector<std::vector<Pauli>> history;

    size_t num_qubits() const {
        return hard.size();
    }
    /// The hard decision as a symplectic 2n-bit vector.
    BitVec hard_bits() const;
};

enum class BpStatus { kSuccess, kFailure };

struct BpOutcome {
    BpStatus status = BpStatus::kFailure;
    /// Valid only on success.
    BitVec estimate;
    BeliefState belief;
    double alpha = 1.0;

    bool success() const {
        return status == BpStatus::kSuccess;
    }
};

/// Argmax of a quaternary distribution, ties going to the earlier of I, X, Y, Z.
Pauli hard_decision(const std::array<double, 4> &q);

/// max(q^X + q^Y, q^I + q^Z) for a == X, max(q^Z + q^Y, q^I + q^X) for a == Z.
double soft_reliability(const BeliefState &belief, size_t qubit, Pauli a);
double soft_reliability(const std::array<double, 4> &q, Pauli a);

/// Quaternary BP with scalar messages in the log domain.
///
/// The decoder owns the Tanner graph and scratch buffers, so one instance can
/// decode many syndromes without allocating. Not thread safe; use one per worker.
class Bp4Decoder {
   public:
    Bp4Decoder(const StabilizerCode &code, const BpConfig &config);

    const BpConfig &config() const {
        return config_;
    }
    void set_alpha(double alpha);

    /// `rng` supplies the sweep order for the random-order serial schedule and
    /// is otherwise unused.
    BpOutcome decode(const BitVec &syndrome, std::mt19937_64 *rng = nullptr);

   private:
    struct Edge {
        uint32_t check;
        uint32_t qubit;
        Pauli pauli;
    };

    void set_check_message(uint32_t edge, double product, bool flipped);
    void check_to_qubit(size_t check, const BitVec &syndrome);
    void update_qubit(size_t qubit);

    const StabilizerCode *code_;
    BpConfig config_;
    std::array<double, 4> prior_llr_;
    std::vector<Edge> edges_;
    std::vector<uint32_t> check_start_;
    // Edge ids grouped by qubit.
    std::vector<uint32_t> qubit_start_;
    std::vector<uint32_t> qubit_edges_;
    // Bit w set when some check acts on the qubit with Pauli w.
    std::vector<uint8_t> qubit_paulis_;
    // tanh(lambda / 2) of the prior qubit-to-check message, by Pauli.
    std::array<double, 4> prior_message_;
    // Qubit-to-check messages are stored as tanh(lambda / 2).
    std::vector<double> edge_tanh_;
    // Check-to-qubit messages delta, stored as e^{delta} and e^{-delta}.
    std::vector<double> check_ratio_;
    std::vector<double> check_inv_ratio_;
    // False when some qubit has so many same-type checks that multiplying
    // their ratios could overflow; update_qubit then sums logs instead.
    bool products_are_safe_ = true;
    std::vector<std::array<double, 4>> gamma_;
    std::vector<double> scratch_prefix_;
    std::vector<uint32_t> sweep_order_;
};

BpOutcome bp4_decode(
    const StabilizerCode &code, const BitVec &syndrome, const BpConfig &config, std::mt19937_64 *rng = nullptr);

/// Runs BP for each alpha in order and returns the first success, or the
/// failure of the last alpha.
BpOutcome bp4_decode_adaptive(
    const StabilizerCode &code,
    const BitVec &syndrome,
    const BpConfig &config,
    std::span<const double> alphas,
    std::mt19937_64 *rng = nullptr);
BpOutcome bp4_decode_adaptive(
    Bp4Decoder &decoder, const BitVec &syndrome, std::span<const double> alphas, std::mt19937_64 *rng = nullptr);

/// start, start + step, ... up to and including stop (within rounding).
std::vector<double> alpha_sequence(double start, double step, double stop);

/// -0.16 log10(eps) - 0.48, clamped to [0.5, 2.0].
double alpha_of_epsilon(double epsilon);
/// The formula without clamping.
double alpha_of_epsilon_unclamped(double epsilon);

}  // namespace qosd

#endif
