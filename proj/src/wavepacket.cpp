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

#include "eoq/wavepacket.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace eoq {
namespace {

int grid_index(const TimeGrid& g, double t) {
  const auto j = g.index_of(t);
  if (!j) {
    std::ostringstream os;
    os << "time " << t << " is not a grid sample";
    throw std::invalid_argument(os.str());
  }
  return *j;
}

void check_same_grid(const TimeGrid& a, const TimeGrid& b) {
  if (!(a == b)) throw std::invalid_argument("wavepacket and drive grids differ");
}

// Sideband coefficients a_s = sum_arm route * C_s(arm) from input port 1.
std::vector<cplx> port_sidebands(const EomConfig& cfg, int out_port, int reach) {
  const ToneConfig a1 = cfg.effective_arm1();
  const cplx r1 = cfg.input.amplitude(1, 1) * cfg.output.amplitude(1, out_port);
  const cplx r2 = cfg.input.amplitude(1, 2) * cfg.output.amplitude(2, out_port);
  std::vector<cplx> a(2 * reach + 1);
  for (int s = -reach; s <= reach; ++s) {
    a[s + reach] = r1 * classical_coeff(a1, s) + r2 * classical_coeff(cfg.arm2, s);
  }
  return a;
}

}  // namespace

Wavepacket::Wavepacket(TimeGrid grid, std::vector<cplx> samples, double carrier)
    : grid_(grid), phi_(std::move(samples)), carrier_(carrier) {
  validate(grid_);
  if (!is_power_of_two(grid_.n)) throw std::invalid_argument("Wavepacket: N must be a power of two");
  if (static_cast<int>(phi_.size()) != grid_.n) {
    throw std::invalid_argument("Wavepacket: sample count does not match grid");
  }
}

double Wavepacket::norm_squared() const {
  double s = 0.0;
  for (const auto& v : phi_) s += std::norm(v);
  return s * grid_.dt;
}

Wavepacket Wavepacket::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw ContractViolation("normalization", "cannot normalize a zero envelope");
  std::vector<cplx> out(phi_);
  const double f = 1.0 / std::sqrt(n2);
  for (auto& v : out) v *= f;
  return Wavepacket(grid_, std::move(out), carrier_);
}

Wavepacket gaussian_packet(const TimeGrid& grid, double t_center, double width, double detuning,
                           double carrier) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_packet: width must be positive");
  std::vector<cplx> phi(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    const double t = grid.time(j);
    const double u = (t - t_center) / width;
    phi[j] = std::polar(std::exp(-0.25 * u * u), -detuning * t);
  }
  return Wavepacket(grid, std::move(phi), carrier).normalized();
}

std::vector<cplx> spectrum(const Wavepacket& wp) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.inv(out, wp.samples());  // (1/N) sum e^{+2 pi i jn/N}
  const double scale = wp.grid().n * wp.grid().dt;
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<double> spectrum_detunings(const TimeGrid& grid) {
  std::vector<double> nu(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    const int sj = j < grid.n / 2 ? j : j - grid.n;
    nu[j] = 2.0 * kPi * sj / grid.duration();
  }
  return nu;
}

std::pair<Wavepacket, Wavepacket> modulate_wavepacket(const EomConfig& cfg, const Wavepacket& wp,
                                                      const DriveSignal& drive1,
                                                      const DriveSignal& drive2) {
  check_same_grid(wp.grid(), drive1.grid());
  const EomClassicalMatrix M = classical_matrix(cfg, drive1, drive2);
  const int n = wp.grid().n;
  std::vector<cplx> o(n), r(n);
  for (int j = 0; j < n; ++j) {
    o[j] = M.m11[j] * wp[j];
    r[j] = M.m21[j] * wp[j];
  }
  return {Wavepacket(wp.grid(), std::move(o), wp.carrier()),
          Wavepacket(wp.grid(), std::move(r), wp.carrier())};
}

std::pair<DriveSignal, DriveSignal> arm_tone_drives(const EomConfig& cfg, const TimeGrid& grid,
                                                    double omega) {
  return {tone_drive(grid, omega, cfg.effective_arm1().effective_theta()),
          tone_drive(grid, omega, cfg.arm2.effective_theta())};
}

std::pair<std::vector<cplx>, std::vector<cplx>> modulated_spectra(const EomConfig& cfg,
                                                                  const Wavepacket& wp,
                                                                  double omega) {
  validate(cfg);
  const TimeGrid& g = wp.grid();
  const int bins = periods_on_grid(g, omega);
  const int n = g.n;
  const int reach = guard_band(std::max(cfg.effective_arm1().effective_m(), cfg.arm2.effective_m()));
  const std::vector<cplx> phi = spectrum(wp);
  std::pair<std::vector<cplx>, std::vector<cplx>> out{std::vector<cplx>(n), std::vector<cplx>(n)};
  for (int port = 1; port <= 2; ++port) {
    const auto a = port_sidebands(cfg, port, reach);
    auto& dst = port == 1 ? out.first : out.second;
    for (int s = -reach; s <= reach; ++s) {
      // e^{-i s omega t} = e^{-i s omega t0} e^{-i s omega (t - t0)}
      const cplx w = a[s + reach] * std::polar(1.0, -s * omega * g.t0);
      if (w == cplx{}) continue;
      const long shift = static_cast<long>(s) * bins;
      for (int j = 0; j < n; ++j) {
        const long src = ((j - shift) % n + n) % n;
        dst[j] += w * phi[src];
      }
    }
  }
  return out;
}

Wavepacket phase_modulate_wavepacket(const ToneConfig& cfg, const DriveSignal& drive,
                                     const Wavepacket& wp) {
  check_same_grid(wp.grid(), drive.grid());
  const auto alpha = phase_function(cfg, drive);
  std::vector<cplx> out(wp.grid().n);
  for (int j = 0; j < wp.grid().n; ++j) out[j] = wp[j] * std::polar(1.0, alpha[j]);
  return Wavepacket(wp.grid(), std::move(out), wp.carrier());
}

Wavepacket phase_modulate_wavepacket(const ToneConfig& cfg, double omega, const Wavepacket& wp) {
  return phase_modulate_wavepacket(cfg, tone_drive(wp.grid(), omega, cfg.effective_theta()), wp);
}

std::vector<double> phase_function(const ToneConfig& cfg, const DriveSignal& drive) {
  validate(cfg);
  std::vector<double> alpha(drive.grid().n);
  for (int j = 0; j < drive.grid().n; ++j) alpha[j] = cfg.phi_b - cfg.effective_m() * drive[j];
  return alpha;
}

HomCoincidence hom_coincidences(const Wavepacket& wp, const std::vector<double>& alpha, double t1,
                                double t2) {
  if (static_cast<int>(alpha.size()) != wp.grid().n) {
    throw std::invalid_argument("hom_coincidences: phase samples do not match grid");
  }
  const int j1 = grid_index(wp.grid(), t1);
  const int j2 = grid_index(wp.grid(), t2);
  const double w = std::norm(wp[j1]) * std::norm(wp[j2]);
  const double c = std::cos(alpha[j1] - alpha[j2]);
  HomCoincidence h;
  h.p_same1 = 0.25 * w * (1.0 + c);
  h.p_same2 = h.p_same1;
  h.p_cross = 0.5 * w * (1.0 - c);
  return h;
}

std::optional<cplx> g1_correlation(const EomConfig& cfg, const Wavepacket& wp,
                                   const DriveSignal& drive1, const DriveSignal& drive2, int port_a,
                                   int port_b, double t1, double t2) {
  if ((port_a != 1 && port_a != 2) || (port_b != 1 && port_b != 2)) {
    throw std::invalid_argument("g1_correlation: ports must be 1 or 2");
  }
  check_same_grid(wp.grid(), drive1.grid());
  const int j1 = grid_index(wp.grid(), t1);
  const int j2 = grid_index(wp.grid(), t2);
  const EomClassicalMatrix M = classical_matrix(cfg, drive1, drive2);
  const auto& ma = port_a == 1 ? M.m11 : M.m21;
  const auto& mb = port_b == 1 ? M.m11 : M.m21;
  const cplx f1 = ma[j1] * wp[j1];
  const cplx f2 = mb[j2] * wp[j2];
  constexpr double kFloor = 1e-14;
  if (std::abs(f1) < kFloor || std::abs(f2) < kFloor) return std::nullopt;
  const cplx g = std::conj(f1) * f2;
  return g / std::abs(g);
}

}  // namespace eoq
