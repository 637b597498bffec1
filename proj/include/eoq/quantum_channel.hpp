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

#include <Eigen/Dense>

#include "eoq/amp_mod.hpp"
#include "eoq/mode_space.hpp"

namespace eoq {

/// One-photon density matrix on a single port, over a window of modes.
struct OnePhotonDensity {
  int q_lo = 1;
  int q_hi = 1;
  Eigen::MatrixXcd rho;

  int size() const { return q_hi - q_lo + 1; }
};

/// Throws ContractViolation("density") unless rho is Hermitian (1e-12),
/// positive semidefinite (eigenvalues >= -1e-10) and of unit trace (1e-10).
void validate(const OnePhotonDensity& d);

/// |psi><psi| / <psi|psi> for one amplitude per window mode.
OnePhotonDensity pure_density(int q_lo, int q_hi, const Eigen::VectorXcd& psi);

struct VWOperators {
  OnePhotonMatrix V;  // port 1 -> port 1
  OnePhotonMatrix W;  // port 1 -> radiative port 2
};

VWOperators vw_operators(const EomConfig& cfg, const ModeLattice& lattice);

/// Largest deviation of V^+V + W^+W from the identity on interior modes.
double completeness_defect(const VWOperators& vw);

struct ChannelResult {
  double p0 = 0.0;  // photon lost to the radiative port
  double p1 = 0.0;  // photon kept on port 1
  std::optional<OnePhotonDensity> conditional;  // absent when p1 < 1e-12
};

/// Amplitude modulation followed by tracing out the radiative port. The
/// input must vanish outside the interior of the lattice window.
ChannelResult apply_channel(const OnePhotonDensity& rho_in, const EomConfig& cfg,
                            const ModeLattice& lattice);

struct KrausReport {
  double reconstruction_error = 0.0;  // max |T_kraus(rho) - T_direct(rho)|
  double completeness_error = 0.0;    // max |sum K^+K - 1| on interior modes
  double trace = 0.0;                 // trace of the direct output
  int kraus_count = 0;                // 1 + number of nonzero vacuum-projecting terms
  bool passed = false;                // both errors within 1e-10
};

/// Computes the channel output twice: by propagating each eigenvector of
/// rho through the full modulator and tracing out port 2, and from the
/// operator-sum form K0 = V, K_k = |vac><1_k| W. The output lives on
/// vacuum (+) window, vacuum first.
KrausReport kraus_consistency(const OnePhotonDensity& rho_in, const EomConfig& cfg,
                              const ModeLattice& lattice);

/// Density matrix of one port after tracing out the other. `keys` lists
/// the occupation keys of the kept port (the empty key is the vacuum).
struct ReducedState {
  std::vector<TwoPortState::Key> keys;
  Eigen::MatrixXcd rho;
};

ReducedState reduce_to_port(const TwoPortState& global, int keep_port);

struct BlockDecomposition {
  std::vector<double> weights;                  // p_k, k = 0 .. n
  std::vector<Eigen::MatrixXcd> blocks;         // Lambda^(k)
  std::vector<std::vector<TwoPortState::Key>> bases;
  std::vector<double> min_eigenvalues;
  double commutator_defect = 0.0;               // max |[rho, N]|
};

/// Splits the kept port's reduced state into photon-number blocks. `global`
/// must be a pure state of n <= 2 photons. A non-zero [rho, N] (1e-10) is
/// ContractViolation("number_commutation"); a block with an eigenvalue
/// below -1e-10 is ContractViolation("block_positivity").
BlockDecomposition block_decompose(const TwoPortState& global, int port = 1);

}  // namespace eoq
