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

#include "eoq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace eoq::numerics {
namespace {

constexpr double kMaxArgument = 50.0;
constexpr double kUnderflow = 1e-300;
constexpr double kRescaleAbove = 1e250;

void check_argument(double x) {
  if (!std::isfinite(x)) throw std::domain_error("bessel: non-finite argument");
  if (std::fabs(x) > kMaxArgument) {
    throw std::domain_error("bessel: |x| = " + std::to_string(std::fabs(x)) +
                            " exceeds the supported range 50");
  }
}

// Highest order whose magnitude bound (x/2)^n / n! stays above underflow.
int significant_order(int nmax, double x) {
  double bound = 1.0;
  for (int n = 1; n <= nmax; ++n) {
    bound *= 0.5 * x / n;
    if (bound < kUnderflow) return n - 1;
  }
  return nmax;
}

std::vector<double> ascending_series(int nmax, double x) {
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  const double half = 0.5 * x;
  const double q = -half * half;
  double prefactor = 1.0;  // (x/2)^n / n!
  for (int n = 0; n <= nmax; ++n) {
    if (n > 0) prefactor *= half / n;
    if (prefactor < kUnderflow) break;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<double>(k) * (n + k));
      sum += term;
      if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    out[n] = prefactor * sum;
  }
  return out;
}

std::vector<double> miller(int nmax, double x) {
  const int top = significant_order(nmax, x);
  const double reach = std::max(static_cast<double>(top), x);
  int start = static_cast<int>(reach) + 30 + static_cast<int>(std::sqrt(160.0 * reach));
  start += start % 2;

  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[start + 1] = 0.0;
  j[start] = 1e-30;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = (2.0 * k / x) * j[k] - j[k + 1];
    if (std::fabs(j[k - 1]) > kRescaleAbove) {
      for (int i = k - 1; i <= start; ++i) j[i] /= kRescaleAbove;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * j[k];

  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  for (int n = 0; n <= top; ++n) out[n] = j[n] / norm;
  return out;
}

}  // namespace

std::vector<double> bessel_j_sequence(int nmax, double x) {
  check_argument(x);
  if (nmax < 0) throw std::invalid_argument("bessel_j_sequence: negative nmax");
  const double ax = std::fabs(x);
  std::vector<double> out;
  if (ax == 0.0) {
    out.assign(static_cast<std::size_t>(nmax) + 1, 0.0);
    out[0] = 1.0;
  } else if (ax <= 1.0) {
    out = ascending_series(nmax, ax);
  } else {
    out = miller(nmax, ax);
  }
  if (x < 0) {
    for (int n = 1; n <= nmax; n += 2) out[n] = -out[n];
  }
  return out;
}

double bessel_j(int n, double x) {
  const int an = n < 0 ? -n : n;
  const double v = bessel_j_sequence(an, x)[an];
  return (n < 0 && an % 2 == 1) ? -v : v;
}

double bessel_i0(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("bessel_i0: argument must be finite and non-negative");
  }
  if (x > kMaxArgument) throw std::domain_error("bessel_i0: argument exceeds 50");
  const long double q = 0.25L * x * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (term < 1e-20L * sum) break;
  }
  return static_cast<double>(sum);
}

}  // namespace eoq::numerics
