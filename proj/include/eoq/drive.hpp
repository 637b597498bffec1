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

#include <functional>
#include <optional>
#include <vector>

#include "eoq/errors.hpp"

namespace eoq {

/// Uniform sampling grid t_j = t0 + j dt, j = 0 .. n-1.
struct TimeGrid {
  double t0 = 0.0;
  double dt = 1.0;
  int n = 1;

  double time(int j) const { return t0 + j * dt; }
  double duration() const { return n * dt; }
  /// Index of the sample at time t; nullopt when t is not on the grid.
  std::optional<int> index_of(double t) const;
  bool operator==(const TimeGrid&) const = default;
};

/// Throws std::invalid_argument unless dt > 0 and n >= 1.
void validate(const TimeGrid& grid);
bool is_power_of_two(int n);

/// Real, dimensionless modulating signal x(t_j) on a grid. The samples must
/// be dc-balanced: |mean| <= 1e-10, otherwise ContractViolation("dc_balance").
class DriveSignal {
 public:
  DriveSignal(TimeGrid grid, std::vector<double> samples);

  const TimeGrid& grid() const { return grid_; }
  const std::vector<double>& samples() const { return x_; }
  double operator[](int j) const { return x_[j]; }

 private:
  TimeGrid grid_;
  std::vector<double> x_;
};

DriveSignal zero_drive(const TimeGrid& grid);

/// amplitude * cos(omega t + theta). omega must be an integer multiple of
/// 2 pi / (n dt), otherwise ContractViolation("grid_alignment").
DriveSignal tone_drive(const TimeGrid& grid, double omega, double theta, double amplitude = 1.0);

/// +1/2 on the first half of the grid and -1/2 on the second.
DriveSignal step_drive(const TimeGrid& grid);

/// Number of whole drive periods omega spans on the grid, or
/// ContractViolation("grid_alignment") when it is not an integer.
int periods_on_grid(const TimeGrid& grid, double omega);

/// Filters the drive by the RF response H(Omega) in the spectral domain,
/// where X(Omega) is taken with the e^{-i Omega t} convention. Negative
/// frequencies use conj(H(|Omega|)) so the result stays real.
DriveSignal apply_rf_response(const DriveSignal& drive, const std::function<cplx(double)>& H);

}  // namespace eoq
