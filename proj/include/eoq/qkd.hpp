// Copyright 2026 The eoq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eoq/errors.hpp"

namespace eoq::qkd {

/// Frequency-coded qubit labels: sign and basis.
enum class Label { plus1 = 0, minus1 = 1, plus2 = 2, minus2 = 3 };

Label parse_label(std::string_view s);  // "+1", "-1", "+2", "-2"
std::string_view to_string(Label l);
int basis_of(Label l);
bool is_plus(Label l);

/// Amplitudes over (omega - Omega, omega, omega + Omega).
struct FcState {
  std::array<cplx, 3> amp{};
  Label label = Label::plus2;

  double norm_squared() const;
};

cplx inner_product(const FcState& a, const FcState& b);

/// Smallest positive root of J_0(m) = sqrt(2) J_1(m).
double solve_basis1_index();
/// First zero of J_0.
double solve_basis2_index();

/// Closed-form reference amplitudes of the four states.
FcState reference_state(Label l);

/// Alice's state: carrier phase-modulated with the label's (m, theta),
/// filtered to the first sidebands and renormalized. The result is checked
/// against reference_state() up to a global phase (1e-3, otherwise
/// ContractViolation("fc_state")) and returned with that phase removed.
FcState alice_state(Label l);

struct DetectorProbs {
  double p_d1 = 0.0;
  double p_d2 = 0.0;
};

/// Bob applies no modulation (basis 2) or the basis-1 phase modulation
/// with theta = -pi/2 (basis 1). D2 sees the carrier, D1 every other mode.
DetectorProbs bob_measure_probs(const FcState& state, int bob_basis);

/// Bob's bit: basis 2 reads D2 as '+', basis 1 reads D1 as '+'.
bool bob_reads_plus(int bob_basis, bool d1_fired);

struct SidebandPair {
  cplx lower;
  cplx upper;
  std::vector<std::string> warnings;
};

/// First-sideband coherent amplitudes of a carrier alpha after two
/// low-index phase modulators in cascade (first order in m).
SidebandPair b92_sideband_amplitude(double m_a, double theta_a, double m_b, double theta_b,
                                    cplx alpha);

struct SessionConfig {
  std::int64_t trials = 0;
  std::array<double, 4> rates{0.25, 0.25, 0.25, 0.25};  // indexed by Label
  std::uint64_t seed = 0;
  std::optional<int> bob_basis;  // forces Bob's basis when set
  int threads = 0;               // 0 = hardware concurrency
};

struct SessionStats {
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  // counts[label][bob_basis - 1][detector - 1]
  std::array<std::array<std::array<std::int64_t, 2>, 2>, 4> counts{};
  std::int64_t sifted = 0;
  std::int64_t errors = 0;
  double sift_rate = 0.0;
  double qber = 0.0;

  bool operator==(const SessionStats&) const = default;
};

/// Trials are split into fixed blocks, each with its own generator derived
/// from (seed, block index), so the result does not depend on `threads`.
SessionStats run_session(const SessionConfig& cfg);

/// QBER of an infinitely long session with the same configuration.
double expected_qber(const SessionConfig& cfg);

}  // namespace eoq::qkd
