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
#include <string_view>

#include <Eigen/Dense>

#include "eoq/mode_space.hpp"

namespace eoq {

enum class SplitterKind { beamsplitter, directional_coupler, ybranch_split, ybranch_combine };

SplitterKind parse_splitter_kind(std::string_view name);
std::string_view to_string(SplitterKind kind);

/// Field coefficients of a lossless 2x2 splitter. A photon entering port 1
/// leaves as t' (port 1) + r' (port 2); one entering port 2 leaves as
/// r (port 1) + t (port 2).
struct SplitterCoeffs {
  cplx t{1.0};
  cplx tp{1.0};
  cplx r{0.0};
  cplx rp{0.0};

  /// Creator substitution matrix: row = input port, column = output port,
  /// i.e. rows (t', r') and (r, t).
  Eigen::Matrix2cd creator_matrix() const;
  /// Classical envelope transfer, element (out, in); transpose of the above.
  Eigen::Matrix2cd transfer_matrix() const;
  /// Amplitude for a photon entering `in_port` to leave by `out_port`.
  cplx amplitude(int in_port, int out_port) const;

  static SplitterCoeffs from_creator_matrix(const Eigen::Matrix2cd& a);
};

/// Largest violation of |t'|^2+|r'|^2 = |t|^2+|r|^2 = 1 and r*t' + r't* = 0.
double unitarity_defect(const SplitterCoeffs& c);

/// Directional coupler and Y-branch coefficients for power coupling k in
/// [0, 1]. For kind == beamsplitter the caller must supply `custom`, which is
/// validated (tolerance 1e-12) and returned unchanged.
SplitterCoeffs make_splitter(SplitterKind kind, double k,
                             const std::optional<SplitterCoeffs>& custom = std::nullopt);

/// The splitter equivalent to applying `first` and then `second`.
SplitterCoeffs compose(const SplitterCoeffs& first, const SplitterCoeffs& second);

/// Acts on every creation operator of the state; mode indices are unchanged.
TwoPortState split_one_photon(const SplitterCoeffs& coeffs, const TwoPortState& state);

}  // namespace eoq
