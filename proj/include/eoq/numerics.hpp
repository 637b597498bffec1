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

#include <vector>

namespace eoq::numerics {

/// Bessel function of the first kind J_n(x) for integer order.
///
/// Small arguments use the ascending series directly; everything else goes
/// through Miller's downward recurrence normalized with the sum rule
/// J_0 + 2 sum_k J_2k = 1. Negative orders and arguments are mapped through
/// the parity relations. Throws std::domain_error for non-finite x or
/// |x| > 50.
double bessel_j(int n, double x);

/// J_0(x) ... J_nmax(x) from a single downward sweep. Orders whose value is
/// below the double-precision underflow threshold are returned as exact 0.
std::vector<double> bessel_j_sequence(int nmax, double x);

/// Modified Bessel function I_0(x) for 0 <= x <= 50.
double bessel_i0(double x);

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
template <class F>
double bisect(F&& f, double lo, double hi, double tol = 1e-15) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol * (1.0 + (lo < 0 ? -lo : lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((fmid < 0) == (flo < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace eoq::numerics
