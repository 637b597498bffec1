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

#include "eoq/mode_space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace eoq {
namespace {

double factorial_sqrt(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return std::sqrt(f);
}

void check_port(int port) {
  if (port != 1 && port != 2) {
    throw std::invalid_argument("port must be 1 or 2, got " + std::to_string(port));
  }
}

// Sorted multiset of creators -> canonical key plus prod sqrt(n!) factor.
std::pair<TwoPortState::Key, double> key_from_creators(const std::vector<Creator>& sorted) {
  TwoPortState::Key key;
  double weight = 1.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const int n = static_cast<int>(j - i);
    key.push_back({sorted[i].port, sorted[i].mode, n});
    weight *= factorial_sqrt(n);
    i = j;
  }
  return {std::move(key), weight};
}

}  // namespace

ModeLattice make_lattice(double carrier_freq, double tone, int half_window) {
  if (!(carrier_freq > 0.0) || !(tone > 0.0)) {
    throw std::invalid_argument("make_lattice: carrier frequency and tone must be positive");
  }
  if (half_window < 0) throw std::invalid_argument("make_lattice: negative half window");
  const double ratio = carrier_freq / tone;
  // Ratios that are integers up to rounding (e.g. 2pi*200e12 / 2pi*25e9)
  // must not be bumped to the next index by floating-point noise.
  const double nearest = std::round(ratio);
  const double q0d = std::fabs(ratio - nearest) <= 1e-9 * ratio ? nearest : std::ceil(ratio);
  if (q0d > 1e9) throw std::invalid_argument("make_lattice: carrier index too large");
  const int q0 = static_cast<int>(q0d);
  if (q0 - half_window < 1) {
    throw std::invalid_argument(
        "make_lattice: window would include non-positive frequency index q = " +
        std::to_string(q0 - half_window) + " (carrier index " + std::to_string(q0) +
        ", half window " + std::to_string(half_window) + ")");
  }
  return ModeLattice{q0, carrier_freq, tone, q0 - half_window, q0 + half_window};
}

ModeLattice lattice_from_window(int carrier_index, int q_lo, int q_hi, double tone) {
  if (!(1 <= q_lo && q_lo <= carrier_index && carrier_index <= q_hi)) {
    throw std::invalid_argument("lattice_from_window: need 1 <= q_lo <= carrier <= q_hi");
  }
  if (!(tone > 0.0)) throw std::invalid_argument("lattice_from_window: tone must be positive");
  return ModeLattice{carrier_index, carrier_index * tone, tone, q_lo, q_hi};
}

// ---------------------------------------------------------------------------

int photon_number(const TwoPortState::Key& key) {
  int n = 0;
  for (const auto& o : key) n += o.n;
  return n;
}

TwoPortState::Key canonical_key(TwoPortState::Key key) {
  std::sort(key.begin(), key.end(), [](const ModeOccupation& a, const ModeOccupation& b) {
    return std::tie(a.port, a.mode) < std::tie(b.port, b.mode);
  });
  TwoPortState::Key out;
  for (const auto& o : key) {
    check_port(o.port);
    if (o.mode < 1) throw std::invalid_argument("mode index must be positive");
    if (o.n < 0) throw std::invalid_argument("negative occupation");
    if (o.n == 0) continue;
    if (!out.empty() && out.back().port == o.port && out.back().mode == o.mode) {
      throw std::invalid_argument("duplicate (port, mode) in occupation key");
    }
    out.push_back(o);
  }
  return out;
}

TwoPortState TwoPortState::vacuum() {
  TwoPortState s;
  s.terms_[{}] = 1.0;
  return s;
}

TwoPortState TwoPortState::from_creators(const std::vector<Creator>& creators, cplx amplitude) {
  std::vector<Creator> sorted = creators;
  for (const auto& c : sorted) check_port(c.port);
  std::sort(sorted.begin(), sorted.end());
  auto [key, weight] = key_from_creators(sorted);
  TwoPortState s;
  s.add(std::move(key), amplitude * weight);
  return s;
}

TwoPortState TwoPortState::fock(int port, int mode, int n) {
  TwoPortState s;
  s.add({{port, mode, n}}, 1.0);
  return s;
}

void TwoPortState::add(Key key, cplx amp) {
  key = canonical_key(std::move(key));
  if (photon_number(key) > kMaxPhotons) {
    throw std::invalid_argument("TwoPortState: photon cap of " + std::to_string(kMaxPhotons) +
                                " exceeded");
  }
  terms_[std::move(key)] += amp;
}

cplx TwoPortState::amplitude(const Key& key) const {
  auto it = terms_.find(canonical_key(key));
  return it == terms_.end() ? cplx{} : it->second;
}

double TwoPortState::norm_squared() const {
  double s = 0.0;
  for (const auto& [k, a] : terms_) s += std::norm(a);
  return s;
}

int TwoPortState::max_photons() const {
  int n = -1;
  for (const auto& [k, a] : terms_) n = std::max(n, photon_number(k));
  return n;
}

std::vector<int> TwoPortState::photon_numbers() const {
  std::set<int> ns;
  for (const auto& [k, a] : terms_) ns.insert(photon_number(k));
  return {ns.begin(), ns.end()};
}

TwoPortState TwoPortState::scaled(cplx factor) const {
  TwoPortState s = *this;
  for (auto& [k, a] : s.terms_) a *= factor;
  return s;
}

TwoPortState TwoPortState::pruned(double threshold) const {
  TwoPortState s;
  for (const auto& [k, a] : terms_) {
    if (std::abs(a) > threshold) s.terms_.emplace(k, a);
  }
  return s;
}

TwoPortState TwoPortState::operator+(const TwoPortState& other) const {
  TwoPortState s = *this;
  for (const auto& [k, a] : other.terms_) s.terms_[k] += a;
  return s;
}

cplx inner_product(const TwoPortState& a, const TwoPortState& b) {
  cplx s{};
  for (const auto& [k, amp] : a.terms()) {
    auto it = b.terms().find(k);
    if (it != b.terms().end()) s += std::conj(amp) * it->second;
  }
  return s;
}

// ---------------------------------------------------------------------------

bool OnePhotonMatrix::is_interior(int q) const {
  if (!contains(q)) return false;
  const bool lower_ok = q_lo == 1 || q - q_lo >= guard;
  return lower_ok && q_hi - q >= guard;
}

std::vector<int> OnePhotonMatrix::interior_modes() const {
  std::vector<int> out;
  for (int q = q_lo; q <= q_hi; ++q) {
    if (is_interior(q)) out.push_back(q);
  }
  return out;
}

OnePhotonMatrix OnePhotonMatrix::identity(int q_lo, int q_hi) {
  return OnePhotonMatrix{q_lo, q_hi, Eigen::MatrixXcd::Identity(q_hi - q_lo + 1, q_hi - q_lo + 1), 0};
}

OnePhotonMatrix OnePhotonMatrix::zero(int q_lo, int q_hi) {
  return OnePhotonMatrix{q_lo, q_hi, Eigen::MatrixXcd::Zero(q_hi - q_lo + 1, q_hi - q_lo + 1), 0};
}

namespace {
void check_same_window(const OnePhotonMatrix& a, const OnePhotonMatrix& b) {
  if (a.q_lo != b.q_lo || a.q_hi != b.q_hi) {
    throw std::invalid_argument("OnePhotonMatrix: window mismatch");
  }
}
}  // namespace

OnePhotonMatrix operator*(const OnePhotonMatrix& a, const OnePhotonMatrix& b) {
  check_same_window(a, b);
  return OnePhotonMatrix{a.q_lo, a.q_hi, a.m * b.m, a.guard + b.guard};
}

OnePhotonMatrix operator+(const OnePhotonMatrix& a, const OnePhotonMatrix& b) {
  check_same_window(a, b);
  return OnePhotonMatrix{a.q_lo, a.q_hi, a.m + b.m, std::max(a.guard, b.guard)};
}

OnePhotonMatrix operator*(cplx s, const OnePhotonMatrix& a) {
  return OnePhotonMatrix{a.q_lo, a.q_hi, s * a.m, a.guard};
}

// ---------------------------------------------------------------------------

TwoPortState transform_creators(const TwoPortState& state, const CreatorMap& map, double prune) {
  using Monomial = std::vector<Creator>;  // kept sorted
  std::map<Monomial, cplx> out_monomials;
  std::map<Creator, CreatorImage> cache;
  auto image = [&](const Creator& c) -> const CreatorImage& {
    auto it = cache.find(c);
    if (it == cache.end()) it = cache.emplace(c, map(c)).first;
    return it->second;
  };

  for (const auto& [key, amp] : state.terms()) {
    // |key> = prod (a^+)^n / sqrt(n!) |vac>
    double norm = 1.0;
    std::vector<Creator> creators;
    for (const auto& o : key) {
      norm *= factorial_sqrt(o.n);
      for (int i = 0; i < o.n; ++i) creators.push_back({o.port, o.mode});
    }
    std::map<Monomial, cplx> partial{{Monomial{}, amp / norm}};
    for (const auto& c : creators) {
      std::map<Monomial, cplx> next;
      for (const auto& [mono, coeff] : partial) {
        for (const auto& [target, w] : image(c)) {
          if (w == cplx{}) continue;
          Monomial m = mono;
          m.insert(std::upper_bound(m.begin(), m.end(), target), target);
          next[std::move(m)] += coeff * w;
        }
      }
      partial = std::move(next);
    }
    for (auto& [mono, coeff] : partial) out_monomials[mono] += coeff;
  }

  TwoPortState out;
  for (const auto& [mono, coeff] : out_monomials) {
    auto [key, weight] = key_from_creators(mono);
    const cplx amp = coeff * weight;
    if (std::abs(amp) > prune) out.add(std::move(key), amp);
  }
  return out;
}

TwoPortState apply_one_photon_matrix(const TwoPortState& state, int port, const OnePhotonMatrix& M) {
  check_port(port);
  for (const auto& [key, amp] : state.terms()) {
    for (const auto& o : key) {
      if (o.port == port && !M.is_interior(o.mode)) {
        throw ContractViolation(
            "guard_band", "mode " + std::to_string(o.mode) + " on port " + std::to_string(port) +
                              " is closer than " + std::to_string(M.guard) +
                              " modes to the edge of window [" + std::to_string(M.q_lo) + ", " +
                              std::to_string(M.q_hi) + "]");
      }
    }
  }
  return transform_creators(state, [&](const Creator& c) -> CreatorImage {
    if (c.port != port) return {{c, 1.0}};
    CreatorImage img;
    for (int k = M.q_lo; k <= M.q_hi; ++k) {
      const cplx w = M(k, c.mode);
      if (w != cplx{}) img.push_back({Creator{port, k}, w});
    }
    return img;
  });
}

}  // namespace eoq
