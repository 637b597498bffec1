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

#include "eoq/splitters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace eoq {

SplitterKind parse_splitter_kind(std::string_view name) {
  if (name == "bs") return SplitterKind::beamsplitter;
  if (name == "dc") return SplitterKind::directional_coupler;
  if (name == "yb_split") return SplitterKind::ybranch_split;
  if (name == "yb_combine") return SplitterKind::ybranch_combine;
  throw std::invalid_argument("unknown splitter kind '" + std::string(name) + "'");
}

std::string_view to_string(SplitterKind kind) {
  switch (kind) {
    case SplitterKind::beamsplitter: return "bs";
    case SplitterKind::directional_coupler: return "dc";
    case SplitterKind::ybranch_split: return "yb_split";
    case SplitterKind::ybranch_combine: return "yb_combine";
  }
  return "?";
}

Eigen::Matrix2cd SplitterCoeffs::creator_matrix() const {
  Eigen::Matrix2cd a;
  a << tp, rp, r, t;
  return a;
}

Eigen::Matrix2cd SplitterCoeffs::transfer_matrix() const { return creator_matrix().transpose(); }

cplx SplitterCoeffs::amplitude(int in_port, int out_port) const {
  if (in_port == 1) return out_port == 1 ? tp : rp;
  return out_port == 1 ? r : t;
}

SplitterCoeffs SplitterCoeffs::from_creator_matrix(const Eigen::Matrix2cd& a) {
  return SplitterCoeffs{a(1, 1), a(0, 0), a(1, 0), a(0, 1)};
}

double unitarity_defect(const SplitterCoeffs& c) {
  const double e1 = std::fabs(std::norm(c.tp) + std::norm(c.rp) - 1.0);
  const double e2 = std::fabs(std::norm(c.t) + std::norm(c.r) - 1.0);
  const double e3 = std::abs(std::conj(c.r) * c.tp + c.rp * std::conj(c.t));
  return std::max({e1, e2, e3});
}

SplitterCoeffs make_splitter(SplitterKind kind, double k, const std::optional<SplitterCoeffs>& custom) {
  if (kind == SplitterKind::beamsplitter) {
    if (!custom) throw std::invalid_argument("make_splitter: bs requires explicit coefficients");
    const double defect = unitarity_defect(*custom);
    if (defect > 1e-12) {
      throw ContractViolation("splitter_unitarity",
                              "coefficients violate energy conservation/reciprocity by " +
                                  std::to_string(defect));
    }
    return *custom;
  }
  if (!(k >= 0.0 && k <= 1.0)) {
    throw std::invalid_argument("make_splitter: coupling k must lie in [0, 1]");
  }
  const double a = std::sqrt(1.0 - k);
  const double b = std::sqrt(k);
  switch (kind) {
    case SplitterKind::directional_coupler:
      return SplitterCoeffs{a, a, cplx{0.0, b}, cplx{0.0, b}};
    case SplitterKind::ybranch_split:
      return SplitterCoeffs{a, a, -b, b};
    case SplitterKind::ybranch_combine:
      // transpose of the splitting matrix
      return SplitterCoeffs{a, a, b, -b};
    case SplitterKind::beamsplitter:
      break;
  }
  throw std::logic_error("make_splitter: unreachable");
}

SplitterCoeffs compose(const SplitterCoeffs& first, const SplitterCoeffs& second) {
  return SplitterCoeffs::from_creator_matrix(first.creator_matrix() * second.creator_matrix());
}

TwoPortState split_one_photon(const SplitterCoeffs& coeffs, const TwoPortState& state) {
  return transform_creators(state, [&](const Creator& c) -> CreatorImage {
    return {{Creator{1, c.mode}, coeffs.amplitude(c.port, 1)},
            {Creator{2, c.mode}, coeffs.amplitude(c.port, 2)}};
  });
}

}  // namespace eoq
