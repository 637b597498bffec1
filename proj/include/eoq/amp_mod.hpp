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
#include <string_view>
#include <vector>

#include "eoq/drive.hpp"
#include "eoq/mode_space.hpp"
#include "eoq/phase_mod.hpp"
#include "eoq/splitters.hpp"

namespace eoq {

/// Mach-Zehnder amplitude modulator: input splitter, one phase modulator per
/// arm, output splitter. Arm 1 is the arm a photon entering port 1 reaches
/// with amplitude t' of the input splitter; arm 2 the one reached with r'.
/// Arm j feeds port j of the output splitter. With `asymmetric` set, arm 1
/// carries no modulator at all (identity, zero bias).
struct EomConfig {
  SplitterCoeffs input = make_splitter(SplitterKind::ybranch_split, 0.5);
  SplitterCoeffs output = make_splitter(SplitterKind::ybranch_combine, 0.5);
  ToneConfig arm1;
  ToneConfig arm2;
  bool asymmetric = false;

  /// arm1, or the identity when asymmetric.
  ToneConfig effective_arm1() const;
};

/// Validates both splitters (1e-12) and both arm configs.
void validate(const EomConfig& cfg);

/// Sampled classical modulation functions; element (a, b) maps the envelope
/// entering port b to the one leaving port a.
struct EomClassicalMatrix {
  TimeGrid grid;
  std::vector<cplx> m11, m12, m21, m22;
};

/// M(t) = T_out diag(e_1(t), e_2(t)) T_in with e_k = exp(i phi_Bk - i m_k x_k(t)).
/// Drive tones carry their own theta; each arm's m and phi_b come from cfg.
EomClassicalMatrix classical_matrix(const EomConfig& cfg, const DriveSignal& drive1,
                                    const DriveSignal& drive2);

/// Largest pointwise violation of the column-orthonormality identities.
double classical_unitarity_defect(const EomClassicalMatrix& M);

/// One-photon scattering between external ports: block(out, in) is the
/// matrix taking a photon entering port `in` to port `out`.
struct EomPortMatrices {
  std::array<std::array<OnePhotonMatrix, 2>, 2> blocks;

  const OnePhotonMatrix& block(int out_port, int in_port) const {
    return blocks[out_port - 1][in_port - 1];
  }
};

EomPortMatrices eom_port_matrices(const EomConfig& cfg, const ModeLattice& lattice);

/// Scatters a two-port state through the modulator. Every occupied mode
/// must be interior to both arm matrices (ContractViolation("guard_band")).
TwoPortState eom_apply(const EomConfig& cfg, const TwoPortState& state, const ModeLattice& lattice);

/// A single photon in mode q entering `input_port`.
TwoPortState eom_one_photon(const EomConfig& cfg, int input_port, int q, const ModeLattice& lattice);

enum class EomPreset { dsb_quadrature, ssb_lower_suppressed, ssb_upper_suppressed };

EomPreset parse_preset(std::string_view name);
std::string_view to_string(EomPreset preset);

/// Y-branch modulator (k = 1/2) with quadrature-biased arms. The DSB preset
/// drives the arms in antiphase; the SSB presets drive them in quadrature,
/// the sign of arm 2's phase choosing which first sideband cancels.
EomConfig preset(EomPreset kind, double m);

/// Two-photon switch: directional couplers (k = 1/2), equal arms (m, theta),
/// bias difference delta on arm 2, input a+_{1,q} a+_{2,q} |vac>.
EomConfig switch_config(double delta, double m, double theta);
TwoPortState eom_two_photon_switch(double delta, double m, double theta, int q,
                                   const ModeLattice& lattice);

/// Operator-level coefficients of the switch output before the arm
/// scattering: b+_1 b+_2 (cross), b+_1 b+_1 and b+_2 b+_2.
struct SwitchCoefficients {
  cplx cross;
  cplx same1;
  cplx same2;
};

SwitchCoefficients switch_coefficients(double delta);

}  // namespace eoq
