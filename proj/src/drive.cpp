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

#include "eoq/drive.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace eoq {

std::optional<int> TimeGrid::index_of(double t) const {
  const double pos = (t - t0) / dt;
  const double j = std::round(pos);
  if (std::fabs(pos - j) > 1e-9 || j < 0 || j >= n) return std::nullopt;
  return static_cast<int>(j);
}

void validate(const TimeGrid& grid) {
  if (!(grid.dt > 0.0) || !std::isfinite(grid.dt) || !std::isfinite(grid.t0)) {
    throw std::invalid_argument("TimeGrid: dt must be positive and finite");
  }
  if (grid.n < 1) throw std::invalid_argument("TimeGrid: n must be >= 1");
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

DriveSignal::DriveSignal(TimeGrid grid, std::vector<double> samples)
    : grid_(grid), x_(std::move(samples)) {
  validate(grid_);
  if (static_cast<int>(x_.size()) != grid_.n) {
    throw std::invalid_argument("DriveSignal: sample count does not match grid");
  }
  double sum = 0.0;
  for (double v : x_) {
    if (!std::isfinite(v)) throw std::invalid_argument("DriveSignal: non-finite sample");
    sum += v;
  }
  const double mean = sum / grid_.n;
  if (std::fabs(mean) > 1e-10) {
    std::ostringstream os;
    os << "drive mean is " << mean << ", expected 0";
    throw ContractViolation("dc_balance", os.str());
  }
}

DriveSignal zero_drive(const TimeGrid& grid) {
  validate(grid);
  return DriveSignal(grid, std::vector<double>(grid.n, 0.0));
}

int periods_on_grid(const TimeGrid& grid, double omega) {
  validate(grid);
  const double cycles = omega * grid.duration() / (2.0 * kPi);
  const double rounded = std::round(cycles);
  if (std::fabs(cycles - rounded) > 1e-9 * std::max(1.0, std::fabs(cycles))) {
    std::ostringstream os;
    os << "tone spans " << cycles << " periods of the grid; it must be an integer";
    throw ContractViolation("grid_alignment", os.str());
  }
  return static_cast<int>(rounded);
}

DriveSignal tone_drive(const TimeGrid& grid, double omega, double theta, double amplitude) {
  const int cycles = periods_on_grid(grid, omega);
  std::vector<double> x(grid.n);
  // Phase from the integer cycle count keeps the samples exactly periodic.
  const double step = 2.0 * kPi * cycles / grid.n;
  const double phase0 = omega * grid.t0 + theta;
  for (int j = 0; j < grid.n; ++j) x[j] = amplitude * std::cos(step * j + phase0);
  if (cycles == 0) std::fill(x.begin(), x.end(), 0.0);
  // Remove the rounding residue of the sum.
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / grid.n;
  for (double& v : x) v -= mean;
  return DriveSignal(grid, std::move(x));
}

DriveSignal step_drive(const TimeGrid& grid) {
  validate(grid);
  if (grid.n % 2 != 0) throw std::invalid_argument("step_drive: grid size must be even");
  std::vector<double> x(grid.n);
  for (int j = 0; j < grid.n; ++j) x[j] = j < grid.n / 2 ? 0.5 : -0.5;
  return DriveSignal(grid, std::move(x));
}

DriveSignal apply_rf_response(const DriveSignal& drive, const std::function<cplx(double)>& H) {
  const TimeGrid& g = drive.grid();
  const int n = g.n;
  std::vector<cplx> x(drive.samples().begin(), drive.samples().end());
  std::vector<cplx> spec;
  Eigen::FFT<double> fft;
  // Eigen's forward transform uses e^{-2 pi i jk/n}; bin k >= 1 then holds the
  // e^{+i Omega_k t} content, i.e. negative frequency in our convention.
  fft.fwd(spec, x);
  for (int k = 0; k < n; ++k) {
    const int signed_k = k <= n / 2 ? k : k - n;
    const double omega = -2.0 * kPi * signed_k / g.duration();
    cplx h = H(std::fabs(omega));
    if (omega < 0.0) h = std::conj(h);
    if (omega == 0.0) h = 0.0;  // a dc-balanced drive carries nothing here
    if (n % 2 == 0 && k == n / 2) h = cplx{std::real(h), 0.0};
    spec[k] *= h;
  }
  std::vector<cplx> back;
  fft.inv(back, spec);
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = back[j].real();
  const double mean = std::accumulate(out.begin(), out.end(), 0.0) / n;
  for (double& v : out) v -= mean;
  return DriveSignal(g, std::move(out));
}

}  // namespace eoq
