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

#include "eoq/phase_mod.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "eoq/numerics.hpp"

namespace eoq {
namespace {

cplx minus_i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

// Position of mode q within the comb of spacing p that contains it, counted
// from 1 at its lowest positive-frequency member.
int comb_label(int q, int p) {
  const int residue = (q - 1) % p + 1;
  return (q - residue) / p + 1;
}

bool same_comb(int k, int q, int p) { return (k - q) % p == 0; }

double bessel_from(const std::vector<double>& seq, int n) {
  const int an = n < 0 ? -n : n;
  const double v = an < static_cast<int>(seq.size()) ? seq[an] : 0.0;
  return (n < 0 && an % 2 == 1) ? -v : v;
}

ExactParts parts_from_sequence(const ToneConfig& cfg, const std::vector<double>& seq, int kl, int ql) {
  const int d = kl - ql;
  const cplx phase = std::polar(1.0, cfg.phi_b - cfg.effective_theta() * d);
  return ExactParts{phase * minus_i_pow(d) * bessel_from(seq, d),
                    phase * minus_i_pow(kl + ql) * bessel_from(seq, kl + ql)};
}

}  // namespace

void validate(const ToneConfig& cfg) {
  if (!std::isfinite(cfg.m) || cfg.m < 0.0 || cfg.effective_m() > 12.0) {
    throw std::invalid_argument("ToneConfig: modulation index must lie in [0, 12]");
  }
  if (!std::isfinite(cfg.theta) || !std::isfinite(cfg.phi_b)) {
    throw std::invalid_argument("ToneConfig: non-finite phase");
  }
  if (cfg.tone_index < 1) throw std::invalid_argument("ToneConfig: tone_index must be >= 1");
}

double SidebandSpectrum::total_power() const {
  double s = 0.0;
  for (const auto& c : coefficients) s += std::norm(c);
  return s;
}

cplx classical_coeff(const ToneConfig& cfg, int n) {
  return std::polar(1.0, cfg.phi_b - cfg.effective_theta() * n) * minus_i_pow(n) *
         numerics::bessel_j(n, cfg.effective_m());
}

SidebandSpectrum sideband_spectrum(const ToneConfig& cfg, double tail_tolerance) {
  validate(cfg);
  const double m = cfg.effective_m();
  const int reach = static_cast<int>(std::ceil(m)) + 60;
  const auto seq = numerics::bessel_j_sequence(reach, m);
  // tail[N] = power outside |n| <= N
  std::vector<double> tail(seq.size(), 0.0);
  for (int n = reach - 1; n >= 0; --n) tail[n] = tail[n + 1] + 2.0 * seq[n + 1] * seq[n + 1];
  int N = 0;
  while (N < reach && tail[N] > tail_tolerance) ++N;
  SidebandSpectrum s;
  for (int n = -N; n <= N; ++n) {
    s.offsets.push_back(n);
    s.coefficients.push_back(classical_coeff(cfg, n));
  }
  return s;
}

ExactParts exact_parts(const ToneConfig& cfg, int k, int q) {
  if (k < 1 || q < 1) throw std::invalid_argument("exact_coeff: mode indices must be >= 1");
  const int p = cfg.tone_index;
  if (!same_comb(k, q, p)) return {};
  const int kl = comb_label(k, p);
  const int ql = comb_label(q, p);
  const double m = cfg.effective_m();
  const int d = kl - ql;
  const cplx phase = std::polar(1.0, cfg.phi_b - cfg.effective_theta() * d);
  return ExactParts{phase * minus_i_pow(d) * numerics::bessel_j(d, m),
                    phase * minus_i_pow(kl + ql) * numerics::bessel_j(kl + ql, m)};
}

cplx exact_coeff(const ToneConfig& cfg, int k, int q) { return exact_parts(cfg, k, q).total(); }

int guard_band(double m) {
  if (!(m >= 0.0)) throw std::invalid_argument("guard_band: negative modulation index");
  const int base = static_cast<int>(std::ceil(m)) + 8;
  const int reach = base + 80;
  const auto seq = numerics::bessel_j_sequence(reach, m);
  double tail = 0.0;
  std::vector<double> tail_beyond(seq.size() + 1, 0.0);
  for (int n = reach; n >= 0; --n) {
    tail_beyond[n] = tail;
    tail += seq[n] * seq[n];
  }
  int g = base;
  while (g < reach && tail_beyond[g] > 1e-20) ++g;
  return g;
}

OnePhotonMatrix exact_matrix(const ToneConfig& cfg, const ModeLattice& lattice) {
  validate(cfg);
  const int p = cfg.tone_index;
  const int guard = guard_band(cfg.effective_m()) * p;
  OnePhotonMatrix M = OnePhotonMatrix::zero(lattice.q_lo, lattice.q_hi);
  M.guard = guard;
  if (M.interior_modes().empty()) {
    std::ostringstream os;
    os << "window [" << lattice.q_lo << ", " << lattice.q_hi << "] has no mode " << guard
       << " steps from its truncating edges (m = " << cfg.effective_m() << ")";
    throw ContractViolation("guard_band", os.str());
  }
  if (!cfg.mode_phases.empty() && static_cast<int>(cfg.mode_phases.size()) != lattice.size()) {
    throw std::invalid_argument("ToneConfig: mode_phases must have one entry per window mode");
  }

  const auto seq = numerics::bessel_j_sequence(2 * comb_label(lattice.q_hi, p) + 1, cfg.effective_m());
  for (int q = lattice.q_lo; q <= lattice.q_hi; ++q) {
    for (int k = lattice.q_lo; k <= lattice.q_hi; ++k) {
      if (!same_comb(k, q, p)) continue;
      M(k, q) = parts_from_sequence(cfg, seq, comb_label(k, p), comb_label(q, p)).total();
    }
  }
  if (!cfg.mode_phases.empty()) {
    for (int k = lattice.q_lo; k <= lattice.q_hi; ++k) {
      M.m.row(k - lattice.q_lo) *= std::polar(1.0, cfg.mode_phases[k - lattice.q_lo]);
    }
  }
  return M;
}

double unitarity_defect_bound(double m, int q) {
  if (!(m >= 0.0)) throw std::invalid_argument("unitarity_defect_bound: m must be >= 0");
  if (q < 1) throw std::invalid_argument("unitarity_defect_bound: q must be >= 1");
  if (m == 0.0) return 0.0;
  const double log_bound = std::log(numerics::bessel_i0(m)) + (2.0 * q + 2.0) * std::log(0.5 * m) -
                           2.0 * std::lgamma(q + 2.0);
  return std::exp(log_bound);
}

double correction_norm_squared(double m, int q) {
  if (q < 1) throw std::invalid_argument("correction_norm_squared: q must be >= 1");
  const int reach = q + static_cast<int>(std::ceil(m)) + 200;
  const auto seq = numerics::bessel_j_sequence(reach, m);
  double s = 0.0;
  for (int n = reach; n >= q + 1; --n) s += seq[n] * seq[n];
  return s;
}

int carson_band(double m) {
  if (!(m >= 0.0)) throw std::invalid_argument("carson_band: m must be >= 0");
  return static_cast<int>(std::ceil(m)) + 1;
}

Eigen::VectorXcd coherent_scatter(const OnePhotonMatrix& M, const Eigen::VectorXcd& alpha) {
  if (alpha.size() != M.size()) {
    throw std::invalid_argument("coherent_scatter: amplitude vector does not match window");
  }
  for (int q = M.q_lo; q <= M.q_hi; ++q) {
    if (alpha(q - M.q_lo) != cplx{} && !M.is_interior(q)) {
      throw ContractViolation("coherent_support",
                              "coherent amplitude on mode " + std::to_string(q) +
                                  " lies inside the guard band");
    }
  }
  return M.m * alpha;
}

FirstOrderResult multitone_first_order(const std::vector<DriveTone>& tones, double m,
                                       const ModeLattice& lattice, double phi_b) {
  FirstOrderResult out{OnePhotonMatrix::identity(lattice.q_lo, lattice.q_hi), {}};
  int guard = 0;
  for (const auto& tone : tones) {
    if (tone.tone_index < 1) throw std::invalid_argument("multitone: tone_index must be >= 1");
    const cplx drive = tone.rf_gain * tone.amplitude * std::polar(1.0, -tone.theta);
    const double strength = m * std::abs(drive);
    if (strength > 0.3) {
      std::ostringstream os;
      os << "tone at index " << tone.tone_index << " has m*A = " << strength
         << " > 0.3; first-order expansion is outside its perturbative regime";
      out.warnings.push_back(os.str());
    }
    const cplx up = cplx{0.0, -0.5 * m} * drive;
    const cplx down = cplx{0.0, -0.5 * m} * std::conj(drive);
    const int p = tone.tone_index;
    for (int q = lattice.q_lo; q <= lattice.q_hi; ++q) {
      if (lattice.contains(q + p)) out.matrix(q + p, q) += up;
      if (q - p >= 1 && lattice.contains(q - p)) out.matrix(q - p, q) += down;
    }
    guard = std::max(guard, p);
  }
  out.matrix.m *= std::polar(1.0, phi_b);
  out.matrix.guard = guard;
  return out;
}

}  // namespace eoq
