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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eoq/mode_space.hpp"

namespace eoq {

/// Single-tone phase modulator settings.
///
/// m is the modulation index (pi V_m / V_pi), theta the RF phase and phi_b
/// the bias phase. tone_index expresses the drive frequency as a multiple of
/// the lattice spacing. rf_gain is the modulator's RF response H at the drive
/// frequency; it scales the complex drive amplitude m e^{-i theta}. When
/// mode_phases is non-empty it holds one propagation phase per window mode,
/// applied after scattering.
struct ToneConfig {
  double m = 0.0;
  double theta = 0.0;
  double phi_b = 0.0;
  int tone_index = 1;
  cplx rf_gain{1.0};
  std::vector<double> mode_phases;

  double effective_m() const { return m * std::abs(rf_gain); }
  double effective_theta() const { return theta - std::arg(rf_gain); }
};

inline ToneConfig tone(double m, double theta, double phi_b) {
  ToneConfig cfg;
  cfg.m = m;
  cfg.theta = theta;
  cfg.phi_b = phi_b;
  return cfg;
}

/// Throws std::invalid_argument unless 0 <= m <= 12 and tone_index >= 1.
void validate(const ToneConfig& cfg);

struct SidebandSpectrum {
  std::vector<int> offsets;
  std::vector<cplx> coefficients;

  double total_power() const;
};

/// C_n = e^{i phi_b} (-i e^{-i theta})^n J_n(m): the classical amplitude of
/// the n-th sideband.
cplx classical_coeff(const ToneConfig& cfg, int n);

/// Classical sidebands over the smallest symmetric range |n| <= N whose
/// omitted power is at most tail_tolerance.
SidebandSpectrum sideband_spectrum(const ToneConfig& cfg, double tail_tolerance = 1e-15);

/// The two pieces of the exact one-photon amplitude S_{k,q} = S1 - S2:
/// `classical` equals C_{k-q} and `correction` is the positive-frequency
/// term carrying J_{k+q}.
struct ExactParts {
  cplx classical;
  cplx correction;
  cplx total() const { return classical - correction; }
};

ExactParts exact_parts(const ToneConfig& cfg, int k, int q);

/// Exact single-tone amplitude <1_k| S |1_q> from input mode q to output
/// mode k (k, q >= 1). Modes not connected by multiples of the tone give 0.
cplx exact_coeff(const ToneConfig& cfg, int k, int q);

/// Guard band in tone steps for index m: at least ceil(m) + 8, widened until
/// the one-sided Bessel tail beyond it carries less than 1e-20 of the power.
int guard_band(double m);

/// Dense exact matrix over the lattice window. Throws
/// ContractViolation("guard_band") if the window has no interior column.
OnePhotonMatrix exact_matrix(const ToneConfig& cfg, const ModeLattice& lattice);

/// I_0(m) (m/2)^{2q+2} / ((q+1)!)^2, evaluated in the log domain. Upper
/// bound on the squared norm of the positive-frequency correction acting on
/// |1_q>.
double unitarity_defect_bound(double m, int q);

/// sum_{k>=1} |J_{k+q}(m)|^2, the squared norm that the bound above limits.
double correction_norm_squared(double m, int q);

/// ceil(m) + 1.
int carson_band(double m);

/// alpha'_k = sum_q M(k, q) alpha_q for a multimode coherent state given as
/// one amplitude per window mode. Amplitude on non-interior modes is a
/// ContractViolation("coherent_support").
Eigen::VectorXcd coherent_scatter(const OnePhotonMatrix& M, const Eigen::VectorXcd& alpha);

/// One component of a multi-tone drive.
struct DriveTone {
  double amplitude = 1.0;  // A_k
  double theta = 0.0;
  int tone_index = 1;
  cplx rf_gain{1.0};
};

struct FirstOrderResult {
  OnePhotonMatrix matrix;
  std::vector<std::string> warnings;
};

/// First-order multi-tone operator e^{i phi_b}(1 - i G): unit diagonal plus
/// shift bands +-tone_index with amplitudes -i m A e^{-+i theta}/2. Tones
/// with m A |H| > 0.3 leave the perturbative regime and add a warning.
FirstOrderResult multitone_first_order(const std::vector<DriveTone>& tones, double m,
                                       const ModeLattice& lattice, double phi_b = 0.0);

}  // namespace eoq
