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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "eoq/mode_space.hpp"
#include "eoq/phase_mod.hpp"

using namespace eoq;
using Catch::Approx;

namespace {

// Dense Fock space over `modes` single-port modes holding at most two
// photons in total; a+ matrices are built from the occupation basis.
struct SmallFock {
  std::vector<std::vector<int>> basis;
  std::map<std::vector<int>, int> index;
  int modes;

  explicit SmallFock(int m) : modes(m) {
    std::vector<int> occ(m, 0);
    add(occ);
    for (int i = 0; i < m; ++i) {
      occ.assign(m, 0);
      occ[i] = 1;
      add(occ);
    }
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        occ.assign(m, 0);
        ++occ[i];
        ++occ[j];
        add(occ);
      }
    }
  }
  void add(const std::vector<int>& o) {
    index[o] = static_cast<int>(basis.size());
    basis.push_back(o);
  }
  Eigen::VectorXcd create(int mode, const Eigen::VectorXcd& v) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (v(b) == cplx{}) continue;
      auto occ = basis[b];
      ++occ[mode];
      auto it = index.find(occ);
      if (it == index.end()) continue;
      out(it->second) += std::sqrt(static_cast<double>(occ[mode])) * v(b);
    }
    return out;
  }
};

}  // namespace

TEST_CASE("make_lattice examples") {
  const auto a = make_lattice(2 * kPi * 200e12, 2 * kPi * 25e9, 10);
  CHECK(a.carrier_index == 8000);
  CHECK(a.q_lo == 7990);
  CHECK(a.q_hi == 8010);

  const auto b = make_lattice(10.0, 1.0, 3);
  CHECK(b.carrier_index == 10);
  CHECK(b.q_lo == 7);
  CHECK(b.q_hi == 13);
  CHECK(b.frequency(b.carrier_index) == Approx(10.0));
  CHECK(b.frequency(12) == Approx(12.0));

  CHECK_THROWS_AS(make_lattice(2.5, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(make_lattice(-1.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_lattice(1.0, 0.0, 0), std::invalid_argument);
}

TEST_CASE("non-integer ratio rounds the carrier index up") {
  const auto l = make_lattice(10.4, 1.0, 2);
  CHECK(l.carrier_index == 11);
  CHECK(l.q_lo >= 1);
}

TEST_CASE("keys are canonical") {
  TwoPortState s;
  s.add({{2, 5, 1}, {1, 7, 1}, {1, 3, 0}}, 1.0);
  REQUIRE(s.size() == 1);
  const auto& key = s.terms().begin()->first;
  REQUIRE(key.size() == 2);
  CHECK(key[0] == ModeOccupation{1, 7, 1});
  CHECK(key[1] == ModeOccupation{2, 5, 1});
  CHECK_THROWS_AS(s.add({{1, 2, 1}, {1, 2, 1}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(s.add({{3, 2, 1}}, 1.0), std::invalid_argument);
}

TEST_CASE("vacuum and Fock constructors") {
  const auto v = TwoPortState::vacuum();
  CHECK(v.amplitude({}) == cplx{1.0});
  CHECK(inner_product(v, v) == cplx{1.0});

  const auto two = TwoPortState::from_creators({{1, 4}, {1, 4}});
  CHECK(std::abs(two.amplitude({{1, 4, 2}}) - std::sqrt(2.0)) < 1e-15);
  CHECK(two.max_photons() == 2);
}

TEST_CASE("photon cap") {
  CHECK_NOTHROW(TwoPortState::fock(1, 3, 4));
  CHECK_THROWS_AS(TwoPortState::fock(1, 3, 5), std::invalid_argument);
}

TEST_CASE("inner product") {
  const auto a = TwoPortState::fock(1, 10);
  const auto b = TwoPortState::fock(1, 11);
  CHECK(inner_product(a, b) == cplx{});
  const auto psi = a.scaled(cplx{0.6, 0.0}) + b.scaled(cplx{0.0, 0.8});
  CHECK(std::abs(inner_product(psi, psi) - 1.0) < 1e-12);
  CHECK(std::abs(inner_product(a, psi) - 0.6) < 1e-15);
  CHECK(std::abs(inner_product(psi, b) - cplx(0.0, -0.8)) < 1e-15);
  CHECK(std::abs(inner_product(b, psi) - std::conj(inner_product(psi, b))) < 1e-15);
}

TEST_CASE("identity matrix leaves a state alone") {
  const auto psi = TwoPortState::fock(1, 20).scaled(0.6) + TwoPortState::fock(2, 20).scaled(0.8);
  const auto M = OnePhotonMatrix::identity(10, 30);
  const auto out = apply_one_photon_matrix(psi, 1, M);
  CHECK(std::abs(inner_product(out, psi) - 1.0) < 1e-14);
  CHECK(out.size() == psi.size());
}

TEST_CASE("unitary matrix returns its column") {
  const auto lat = lattice_from_window(40, 20, 60);
  const auto M = exact_matrix(tone(1.3, 0.4, 0.2), lat);
  const auto out = apply_one_photon_matrix(TwoPortState::fock(1, 40), 1, M);
  CHECK(out.norm_squared() == Approx(1.0).margin(1e-10));
  for (int k = 20; k <= 60; ++k) CHECK(std::abs(out.amplitude({{1, k, 1}}) - M(k, 40)) < 1e-15);
}

TEST_CASE("two photons in one mode agree with a dense Fock computation") {
  const int q0 = 20;
  const auto lat = lattice_from_window(q0, 8, 32);
  const auto M = exact_matrix(tone(0.5, 0.3, 0.1), lat);
  const auto out = apply_one_photon_matrix(TwoPortState::fock(1, q0, 2), 1, M);

  SmallFock fock(lat.size());
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<int>(fock.basis.size()));
  v(0) = 1.0;
  for (int rep = 0; rep < 2; ++rep) {
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(v.size());
    for (int k = lat.q_lo; k <= lat.q_hi; ++k) next += M(k, q0) * fock.create(k - lat.q_lo, v);
    v = next;
  }
  v /= std::sqrt(2.0);

  double worst = 0.0;
  for (std::size_t b = 0; b < fock.basis.size(); ++b) {
    TwoPortState::Key key;
    for (int i = 0; i < lat.size(); ++i)
      if (fock.basis[b][i]) key.push_back({1, lat.q_lo + i, fock.basis[b][i]});
    worst = std::max(worst, std::abs(out.amplitude(key) - v(b)));
  }
  CHECK(worst < 1e-14);
  CHECK(out.norm_squared() == Approx(1.0).margin(1e-10));
  // |2_k> carries S_k^2, |1_k 1_k'> carries sqrt(2) S_k S_k'
  CHECK(std::abs(out.amplitude({{1, 21, 2}}) - M(21, q0) * M(21, q0)) < 1e-15);
  CHECK(std::abs(out.amplitude({{1, 19, 1}, {1, 21, 1}}) -
                 std::sqrt(2.0) * M(19, q0) * M(21, q0)) < 1e-15);
}

TEST_CASE("other port is untouched") {
  const auto lat = lattice_from_window(30, 10, 50);
  const auto M = exact_matrix(tone(0.8, 0.0, 0.0), lat);
  const auto in = TwoPortState::from_creators({{1, 30}, {2, 31}});
  const auto out = apply_one_photon_matrix(in, 1, M);
  for (const auto& [key, amp] : out.terms()) {
    REQUIRE(key.size() == 2);
    CHECK(key[1] == ModeOccupation{2, 31, 1});
  }
}

TEST_CASE("guard band is enforced") {
  const auto lat = lattice_from_window(30, 10, 50);
  const auto M = exact_matrix(tone(1.0, 0.0, 0.0), lat);
  CHECK_THROWS_AS(apply_one_photon_matrix(TwoPortState::fock(1, 48), 1, M), ContractViolation);
  try {
    apply_one_photon_matrix(TwoPortState::fock(1, 48), 1, M);
  } catch (const ContractViolation& e) {
    CHECK(e.invariant() == "guard_band");
  }
  // the q = 1 edge is physical
  const auto low = lattice_from_window(2, 1, 40);
  const auto L = exact_matrix(tone(1.0, 0.0, 0.0), low);
  CHECK_NOTHROW(apply_one_photon_matrix(TwoPortState::fock(1, 1), 1, L));
}

TEST_CASE("photon number is conserved") {
  const auto lat = lattice_from_window(30, 5, 55);
  const auto M = exact_matrix(tone(2.0, 1.0, 0.0), lat);
  const auto in = TwoPortState::from_creators({{1, 28}, {1, 31}, {2, 30}});
  const auto out = apply_one_photon_matrix(in, 1, M);
  CHECK(out.photon_numbers() == std::vector<int>{3});
  CHECK(out.norm_squared() == Approx(1.0).margin(1e-10));
}
