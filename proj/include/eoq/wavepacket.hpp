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

#include <optional>
#include <utility>
#include <vector>

#include "eoq/amp_mod.hpp"
#include "eoq/drive.hpp"

namespace eoq {

/// Single-photon envelope phi(t_j) on a power-of-two grid, around the
/// optical carrier omega0. Valid in the narrowband regime where the
/// envelope bandwidth is far below omega0.
class Wavepacket {
 public:
  Wavepacket(TimeGrid grid, std::vector<cplx> samples, double carrier = 0.0);

  const TimeGrid& grid() const { return grid_; }
  const std::vector<cplx>& samples() const { return phi_; }
  cplx operator[](int j) const { return phi_[j]; }
  double carrier() const { return carrier_; }

  /// sum_j |phi_j|^2 dt
  double norm_squared() const;
  /// ContractViolation("normalization") for an all-zero envelope.
  Wavepacket normalized() const;

 private:
  TimeGrid grid_;
  std::vector<cplx> phi_;
  double carrier_;
};

/// Normalized Gaussian with intensity standard deviation `width`, centred at
/// t_center, with an optional linear envelope phase e^{-i detuning t}.
Wavepacket gaussian_packet(const TimeGrid& grid, double t_center, double width,
                           double detuning = 0.0, double carrier = 0.0);

/// Phi_j = dt sum_n phi_n e^{+2 pi i j n / N}, times measured from t0. Bin j
/// holds the detuning nu_j = 2 pi j / (N dt) from the carrier (j taken in
/// [-N/2, N/2)).
std::vector<cplx> spectrum(const Wavepacket& wp);
std::vector<double> spectrum_detunings(const TimeGrid& grid);

/// Pointwise envelopes leaving the modulator, (phi_O, phi_R) =
/// (m11 phi, m21 phi), for a photon entering port 1. Unnormalized.
std::pair<Wavepacket, Wavepacket> modulate_wavepacket(const EomConfig& cfg, const Wavepacket& wp,
                                                      const DriveSignal& drive1,
                                                      const DriveSignal& drive2);

/// Tone drives cos(omega t + theta_k) for both arms, theta_k the arm's
/// effective RF phase.
std::pair<DriveSignal, DriveSignal> arm_tone_drives(const EomConfig& cfg, const TimeGrid& grid,
                                                    double omega);

/// Spectra of (phi_O, phi_R) obtained without leaving the frequency domain:
/// each port spectrum is sum_s a_s Phi(nu - s omega), the a_s built from the
/// arms' sideband coefficients. Equivalent to spectrum() of
/// modulate_wavepacket() with arm_tone_drives(cfg, grid, omega).
std::pair<std::vector<cplx>, std::vector<cplx>> modulated_spectra(const EomConfig& cfg,
                                                                  const Wavepacket& wp,
                                                                  double omega);

/// phi(t) e^{i phi_b - i m x(t)}; norm preserved exactly.
Wavepacket phase_modulate_wavepacket(const ToneConfig& cfg, const DriveSignal& drive,
                                     const Wavepacket& wp);
Wavepacket phase_modulate_wavepacket(const ToneConfig& cfg, double omega, const Wavepacket& wp);

/// alpha(t_j) = phi_b - m x(t_j).
std::vector<double> phase_function(const ToneConfig& cfg, const DriveSignal& drive);

struct HomCoincidence {
  double p_same1 = 0.0;
  double p_same2 = 0.0;
  double p_cross = 0.0;
};

/// Detection densities for two photons sharing the envelope phi, one of them
/// carrying the extra phase alpha(t), meeting at a balanced coupler. Times
/// must lie on the grid (std::invalid_argument otherwise).
HomCoincidence hom_coincidences(const Wavepacket& wp, const std::vector<double>& alpha, double t1,
                                double t2);

/// Normalized first-order correlation between port a at t1 and port b at
/// t2 for a photon entering port 1. nullopt where either factor vanishes.
std::optional<cplx> g1_correlation(const EomConfig& cfg, const Wavepacket& wp,
                                   const DriveSignal& drive1, const DriveSignal& drive2, int port_a,
                                   int port_b, double t1, double t2);

}  // namespace eoq
