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

#include "eoq/amp_mod.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace eoq {
namespace {

void check_splitter(const SplitterCoeffs& s, const char* which) {
  const double defect = unitarity_defect(s);
  if (defect > 1e-12) {
    throw ContractViolation("splitter_unitarity",
                            std::string(which) + " splitter defect " + std::to_string(defect));
  }
}

// Amplitude of the route in_port -> arm -> out_port, excluding the arm itself.
cplx route(const EomConfig& cfg, int in_port, int arm, int out_port) {
  return cfg.input.amplitude(in_port, arm) * cfg.output.amplitude(arm, out_port);
}

void check_interior(const OnePhotonMatrix& M, int q) {
  if (!M.is_interior(q)) {
    throw ContractViolation("guard_band", "mode " + std::to_string(q) +
                                              " is inside the guard band of window [" +
                                              std::to_string(M.q_lo) + ", " +
                                              std::to_string(M.q_hi) + "]");
  }
}

}  // namespace

ToneConfig EomConfig::effective_arm1() const {
  if (!asymmetric) return arm1;
  return ToneConfig{};
}

void validate(const EomConfig& cfg) {
  check_splitter(cfg.input, "input");
  check_splitter(cfg.output, "output");
  validate(cfg.effective_arm1());
  validate(cfg.arm2);
}

EomClassicalMatrix classical_matrix(const EomConfig& cfg, const DriveSignal& drive1,
                                    const DriveSignal& drive2) {
  validate(cfg);
  if (!(drive1.grid() == drive2.grid())) {
    throw std::invalid_argument("classical_matrix: drives sampled on different grids");
  }
  const ToneConfig a1 = cfg.effective_arm1();
  const ToneConfig& a2 = cfg.arm2;
  const Eigen::Matrix2cd Tin = cfg.input.transfer_matrix();
  const Eigen::Matrix2cd Tout = cfg.output.transfer_matrix();

  EomClassicalMatrix out;
  out.grid = drive1.grid();
  const int n = out.grid.n;
  out.m11.resize(n);
  out.m12.resize(n);
  out.m21.resize(n);
  out.m22.resize(n);
  for (int j = 0; j < n; ++j) {
    const double x1 = cfg.asymmetric ? 0.0 : drive1[j];
    const cplx e1 = std::polar(1.0, a1.phi_b - a1.effective_m() * x1);
    const cplx e2 = std::polar(1.0, a2.phi_b - a2.effective_m() * drive2[j]);
    Eigen::Matrix2cd D = Eigen::Matrix2cd::Zero();
    D(0, 0) = e1;
    D(1, 1) = e2;
    const Eigen::Matrix2cd M = Tout * D * Tin;
    out.m11[j] = M(0, 0);
    out.m12[j] = M(0, 1);
    out.m21[j] = M(1, 0);
    out.m22[j] = M(1, 1);
  }
  return out;
}

double classical_unitarity_defect(const EomClassicalMatrix& M) {
  double worst = 0.0;
  for (std::size_t j = 0; j < M.m11.size(); ++j) {
    worst = std::max(worst, std::fabs(std::norm(M.m11[j]) + std::norm(M.m21[j]) - 1.0));
    worst = std::max(worst, std::fabs(std::norm(M.m12[j]) + std::norm(M.m22[j]) - 1.0));
    worst = std::max(worst,
                     std::abs(M.m11[j] * std::conj(M.m12[j]) + M.m21[j] * std::conj(M.m22[j])));
  }
  return worst;
}

EomPortMatrices eom_port_matrices(const EomConfig& cfg, const ModeLattice& lattice) {
  validate(cfg);
  const OnePhotonMatrix arm[2] = {exact_matrix(cfg.effective_arm1(), lattice),
                                  exact_matrix(cfg.arm2, lattice)};
  EomPortMatrices P;
  for (int out = 1; out <= 2; ++out) {
    for (int in = 1; in <= 2; ++in) {
      OnePhotonMatrix b = route(cfg, in, 1, out) * arm[0] + route(cfg, in, 2, out) * arm[1];
      b.guard = std::max(arm[0].guard, arm[1].guard);
      P.blocks[out - 1][in - 1] = std::move(b);
    }
  }
  return P;
}

TwoPortState eom_apply(const EomConfig& cfg, const TwoPortState& state, const ModeLattice& lattice) {
  const EomPortMatrices P = eom_port_matrices(cfg, lattice);
  for (const auto& [key, amp] : state.terms()) {
    for (const auto& o : key) check_interior(P.block(1, 1), o.mode);
  }
  return transform_creators(state, [&](const Creator& c) -> CreatorImage {
    CreatorImage img;
    for (int out = 1; out <= 2; ++out) {
      const OnePhotonMatrix& B = P.block(out, c.port);
      for (int k = B.q_lo; k <= B.q_hi; ++k) {
        const cplx w = B(k, c.mode);
        if (w != cplx{}) img.push_back({Creator{out, k}, w});
      }
    }
    return img;
  });
}

TwoPortState eom_one_photon(const EomConfig& cfg, int input_port, int q, const ModeLattice& lattice) {
  if (input_port != 1 && input_port != 2) throw std::invalid_argument("input_port must be 1 or 2");
  if (!lattice.contains(q)) throw std::invalid_argument("eom_one_photon: mode outside window");
  return eom_apply(cfg, TwoPortState::fock(input_port, q), lattice);
}

EomPreset parse_preset(std::string_view name) {
  if (name == "dsb_quadrature") return EomPreset::dsb_quadrature;
  if (name == "ssb_lower_suppressed") return EomPreset::ssb_lower_suppressed;
  if (name == "ssb_upper_suppressed") return EomPreset::ssb_upper_suppressed;
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

std::string_view to_string(EomPreset preset) {
  switch (preset) {
    case EomPreset::dsb_quadrature: return "dsb_quadrature";
    case EomPreset::ssb_lower_suppressed: return "ssb_lower_suppressed";
    case EomPreset::ssb_upper_suppressed: return "ssb_upper_suppressed";
  }
  return "?";
}

EomConfig preset(EomPreset kind, double m) {
  if (!(m >= 0.0)) throw std::invalid_argument("preset: m must be >= 0");
  EomConfig cfg;
  cfg.arm1 = tone(m, 0.0, kPi / 2);
  switch (kind) {
    case EomPreset::dsb_quadrature:
      cfg.arm2 = tone(m, kPi, -kPi / 2);
      break;
    case EomPreset::ssb_lower_suppressed:
      cfg.arm2 = tone(m, -kPi / 2, 0.0);
      break;
    case EomPreset::ssb_upper_suppressed:
      cfg.arm2 = tone(m, kPi / 2, 0.0);
      break;
  }
  return cfg;
}

EomConfig switch_config(double delta, double m, double theta) {
  EomConfig cfg;
  cfg.input = make_splitter(SplitterKind::directional_coupler, 0.5);
  cfg.output = make_splitter(SplitterKind::directional_coupler, 0.5);
  cfg.arm1 = tone(m, theta, 0.0);
  cfg.arm2 = tone(m, theta, delta);
  return cfg;
}

TwoPortState eom_two_photon_switch(double delta, double m, double theta, int q,
                                   const ModeLattice& lattice) {
  const TwoPortState in = TwoPortState::from_creators({{1, q}, {2, q}});
  return eom_apply(switch_config(delta, m, theta), in, lattice);
}

SwitchCoefficients switch_coefficients(double delta) {
  const EomConfig cfg = switch_config(delta, 0.0, 0.0);
  const cplx bias[2] = {1.0, std::polar(1.0, delta)};
  // u[in][out]: image of a+ on input port `in` on output port `out`.
  cplx u[2][2];
  for (int in = 1; in <= 2; ++in) {
    for (int out = 1; out <= 2; ++out) {
      u[in - 1][out - 1] = route(cfg, in, 1, out) * bias[0] + route(cfg, in, 2, out) * bias[1];
    }
  }
  return SwitchCoefficients{u[0][0] * u[1][1] + u[0][1] * u[1][0], u[0][0] * u[1][0],
                            u[0][1] * u[1][1]};
}

}  // namespace eoq
