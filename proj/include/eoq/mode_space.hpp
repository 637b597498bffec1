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

#include <compare>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "eoq/errors.hpp"

namespace eoq {

/// Indexed grid of positive optical frequencies. Mode q sits at
/// omega_q = carrier_freq + (q - carrier_index) * tone, and the labelling is
/// chosen so that q = 1 is the lowest positive-frequency mode of the comb.
struct ModeLattice {
  int carrier_index = 1;
  double carrier_freq = 1.0;  // rad/s
  double tone = 1.0;          // rad/s
  int q_lo = 1;
  int q_hi = 1;

  int size() const { return q_hi - q_lo + 1; }
  bool contains(int q) const { return q >= q_lo && q <= q_hi; }
  int offset(int q) const { return q - carrier_index; }
  double frequency(int q) const { return carrier_freq + (q - carrier_index) * tone; }
};

/// Lattice centred on the carrier, half_window modes either side.
/// Throws std::invalid_argument if the window would reach q <= 0.
ModeLattice make_lattice(double carrier_freq, double tone, int half_window);

/// Lattice with an explicit window; the tone defaults to 1 rad/s so that
/// frequencies read as lattice indices.
ModeLattice lattice_from_window(int carrier_index, int q_lo, int q_hi, double tone = 1.0);

struct ModeOccupation {
  int port = 1;  // 1 or 2
  int mode = 1;
  int n = 1;
  auto operator<=>(const ModeOccupation&) const = default;
};

/// A single creation operator a^+ on (port, mode).
struct Creator {
  int port = 1;
  int mode = 1;
  auto operator<=>(const Creator&) const = default;
};

inline constexpr int kMaxPhotons = 4;
inline constexpr double kPruneThreshold = 1e-15;

/// Sparse multi-photon state over two ports. Terms are keyed by canonical
/// occupation lists (sorted by port then mode, no zero occupations).
class TwoPortState {
 public:
  using Key = std::vector<ModeOccupation>;
  using TermMap = std::map<Key, cplx>;

  TwoPortState() = default;

  static TwoPortState vacuum();
  /// prod a^+_c |vac>, with the sqrt(n!) bookkeeping of repeated modes.
  static TwoPortState from_creators(const std::vector<Creator>& creators, cplx amplitude = 1.0);
  static TwoPortState fock(int port, int mode, int n = 1);

  /// Adds amp to the term for `key`; the key is canonicalized first.
  void add(Key key, cplx amp);

  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  cplx amplitude(const Key& key) const;
  double norm_squared() const;
  /// Largest photon number over all terms; -1 for the zero vector.
  int max_photons() const;
  /// Set of distinct photon numbers carried by the terms.
  std::vector<int> photon_numbers() const;

  TwoPortState scaled(cplx factor) const;
  TwoPortState pruned(double threshold = kPruneThreshold) const;
  TwoPortState operator+(const TwoPortState& other) const;

 private:
  TermMap terms_;
};

int photon_number(const TwoPortState::Key& key);
TwoPortState::Key canonical_key(TwoPortState::Key key);

cplx inner_product(const TwoPortState& a, const TwoPortState& b);

/// Dense one-photon scattering matrix over a window: element (k, q) is the
/// amplitude from input mode q to output mode k. `guard` is the distance an
/// input mode must keep from a truncating window edge for its column to be
/// trusted; the q = 1 edge is physical and never truncates.
struct OnePhotonMatrix {
  int q_lo = 1;
  int q_hi = 1;
  Eigen::MatrixXcd m;
  int guard = 0;

  int size() const { return q_hi - q_lo + 1; }
  bool contains(int q) const { return q >= q_lo && q <= q_hi; }
  cplx operator()(int k, int q) const { return m(k - q_lo, q - q_lo); }
  cplx& operator()(int k, int q) { return m(k - q_lo, q - q_lo); }
  bool is_interior(int q) const;
  /// Interior mode indices, ascending.
  std::vector<int> interior_modes() const;

  static OnePhotonMatrix identity(int q_lo, int q_hi);
  static OnePhotonMatrix zero(int q_lo, int q_hi);
};

OnePhotonMatrix operator*(const OnePhotonMatrix& a, const OnePhotonMatrix& b);
OnePhotonMatrix operator+(const OnePhotonMatrix& a, const OnePhotonMatrix& b);
OnePhotonMatrix operator*(cplx s, const OnePhotonMatrix& a);

using CreatorImage = std::vector<std::pair<Creator, cplx>>;
using CreatorMap = std::function<CreatorImage(const Creator&)>;

/// Replaces every creation operator by its image under `map` and re-expands
/// the resulting monomials in the canonical Fock basis. This is the adjoint
/// action S a^+ S^+ of any number-conserving linear-optics scatterer.
TwoPortState transform_creators(const TwoPortState& state, const CreatorMap& map,
                                double prune = kPruneThreshold);

/// Each a^+_q on `port` becomes sum_k M(k, q) a^+_k; the other port is left
/// alone. Occupied modes on `port` must be interior to M, otherwise a
/// ContractViolation("guard_band") is thrown.
TwoPortState apply_one_photon_matrix(const TwoPortState& state, int port,
                                     const OnePhotonMatrix& M);

}  // namespace eoq
