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
#include <random>

#include "eoq/quantum_channel.hpp"
#include "eoq/wavepacket.hpp"
#include "oracles.hpp"

using namespace eoq;
using Catch::Approx;

namespace {

constexpr int kQ0 = 1000;
constexpr int kHalf = 30;

ModeLattice lattice() { return lattice_from_window(kQ0, kQ0 - kHalf, kQ0 + kHalf); }

int idx(int q) { return q - (kQ0 - kHalf); }

Eigen::VectorXcd window_vector(const std::vector<std::pair<int, cplx>>& amps) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * kHalf + 1);
  for (auto [off, a] : amps) v(idx(kQ0 + off)) = a;
  return v;
}

OnePhotonDensity random_density(std::mt19937_64& g, int reach) {
  std::normal_distribution<double> n(0.0, 1.0);
  const int k = 2 * reach + 1;
  Eigen::MatrixXcd A(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) A(i, j) = cplx{n(g), n(g)};
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2 * kHalf + 1, 2 * kHalf + 1);
  rho.block(idx(kQ0 - reach), idx(kQ0 - reach), k, k) = A * A.adjoint();
  rho /= rho.trace().real();
  return {kQ0 - kHalf, kQ0 + kHalf, rho};
}

EomConfig random_config(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  EomConfig cfg;
  cfg.arm1 = tone(2.5 * u(g), 2 * kPi * u(g), 2 * kPi * u(g));
  cfg.arm2 = tone(2.5 * u(g), 2 * kPi * u(g), 2 * kPi * u(g));
  cfg.asymmetric = (g() % 3) == 0;
  return cfg;
}

}  // namespace

TEST_CASE("V and W operators") {
  const auto lat = lattice();
  const auto id = vw_operators(EomConfig{}, lat);
  const int k = lat.size();
  CHECK((id.V.m - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(id.W.m.cwiseAbs().maxCoeff() < 1e-15);

  EomConfig ext;
  ext.arm2.phi_b = kPi;
  const auto ex = vw_operators(ext, lat);
  CHECK(ex.V.m.cwiseAbs().maxCoeff() < 1e-15);
  CHECK((ex.W.m + Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-15);  // -1 global phase

  CHECK(completeness_defect(vw_operators(preset(EomPreset::dsb_quadrature, 1.5), lat)) < 1e-10);

  // Y-branches: V and W are half-sum and half-difference of the arm matrices
  const auto cfg = preset(EomPreset::ssb_lower_suppressed, 0.9);
  const auto vw = vw_operators(cfg, lat);
  const auto M1 = exact_matrix(cfg.arm1, lat);
  const auto M2 = exact_matrix(cfg.arm2, lat);
  CHECK((vw.V.m - 0.5 * (M1.m + M2.m)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((vw.W.m - 0.5 * (M2.m - M1.m)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("completeness for random modulators") {
  std::mt19937_64 g(17);
  const auto lat = lattice();
  for (int c = 0; c < 20; ++c) CHECK(completeness_defect(vw_operators(random_config(g), lat)) < 1e-10);
}

TEST_CASE("density validation") {
  OnePhotonDensity d{0, 1, Eigen::MatrixXcd::Identity(2, 2)};
  CHECK_THROWS_AS(validate(d), ContractViolation);
  d.rho *= 0.5;
  CHECK_NOTHROW(validate(d));
  d.rho(0, 1) = 0.3;
  CHECK_THROWS_AS(validate(d), ContractViolation);
  d.rho(1, 0) = 0.4;
  d.rho(0, 1) = 0.4;
  d.rho(0, 0) = 0.9;
  d.rho(1, 1) = 0.1;
  CHECK_THROWS_AS(validate(d), ContractViolation);  // negative eigenvalue
}

TEST_CASE("channel on simple inputs") {
  const auto lat = lattice();
  const auto carrier = pure_density(lat.q_lo, lat.q_hi, window_vector({{0, 1.0}}));
  const auto r = apply_channel(carrier, EomConfig{}, lat);
  CHECK(r.p1 == Approx(1.0).margin(1e-12));
  CHECK(r.p0 == Approx(0.0).margin(1e-12));
  REQUIRE(r.conditional);
  CHECK((r.conditional->rho - carrier.rho).cwiseAbs().maxCoeff() < 1e-14);

  Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(lat.size(), lat.size());
  mix(idx(kQ0), idx(kQ0)) = 0.5;
  mix(idx(kQ0 + 1), idx(kQ0 + 1)) = 0.5;
  EomConfig half;
  half.arm2.phi_b = kPi / 2;
  const auto h = apply_channel({lat.q_lo, lat.q_hi, mix}, half, lat);
  CHECK(h.p0 == Approx(0.5).margin(1e-12));
  CHECK(h.p1 == Approx(0.5).margin(1e-12));

  EomConfig ext;
  ext.arm2.phi_b = kPi;
  const auto e = apply_channel(carrier, ext, lat);
  CHECK(e.p0 == Approx(1.0).margin(1e-12));
  CHECK_FALSE(e.conditional);
}

TEST_CASE("channel rejects bad windows") {
  const auto lat = lattice();
  const auto edge = pure_density(lat.q_lo, lat.q_hi, window_vector({{kHalf, 1.0}}));
  CHECK_THROWS_AS(apply_channel(edge, preset(EomPreset::dsb_quadrature, 1.0), lat), ContractViolation);
  const auto small = pure_density(kQ0 - 2, kQ0 + 2, Eigen::VectorXcd::Ones(5));
  CHECK_THROWS_AS(apply_channel(small, EomConfig{}, lat), std::invalid_argument);
}

TEST_CASE("random channels conserve probability and stay positive") {
  std::mt19937_64 g(23);
  const auto lat = lattice();
  for (int c = 0; c < 25; ++c) {
    const auto cfg = random_config(g);
    const auto rho = random_density(g, 3);
    const auto r = apply_channel(rho, cfg, lat);
    CHECK(r.p0 + r.p1 == Approx(1.0).margin(1e-10));
    CHECK(r.p0 >= -1e-12);
    CHECK(r.p1 >= -1e-12);
    if (r.conditional) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r.conditional->rho);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
  }
}

TEST_CASE("conditional state of a periodic wavepacket") {
  // One drive period sampled at N points; envelope built from window modes.
  const int N = 128;
  const TimeGrid grid{0.0, 2 * kPi / N, N};
  const std::vector<std::pair<int, cplx>> amps = {{-2, {0.3, 0.1}}, {0, 0.8}, {1, {0.0, -0.4}}, {3, 0.2}};
  const auto lat = lattice();
  const auto psi = window_vector(amps);
  std::vector<cplx> env(N);
  for (int j = 0; j < N; ++j)
    for (auto [off, a] : amps) env[j] += a * std::polar(1.0, -off * grid.time(j));
  const Wavepacket wp(grid, env);
  const auto cfg = preset(EomPreset::dsb_quadrature, 1.2);
  const auto d = arm_tone_drives(cfg, grid, 1.0);
  const auto out = modulate_wavepacket(cfg, wp, d.first, d.second);
  const auto coeffs = oracle::dft(out.first.samples(), grid.dt);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(lat.size());
  for (int n = -20; n <= 20; ++n) v(idx(kQ0 + n)) = coeffs[(n + N) % N] / (2 * kPi);
  v /= v.norm();

  const auto r = apply_channel(pure_density(lat.q_lo, lat.q_hi, psi), cfg, lat);
  REQUIRE(r.conditional);
  const Eigen::MatrixXcd want = v * v.adjoint();
  CHECK((r.conditional->rho - want).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(r.p1 == Approx(out.first.norm_squared() / wp.norm_squared()).margin(1e-10));
}

TEST_CASE("Kraus form reproduces the channel") {
  const auto lat = lattice();
  const auto carrier = pure_density(lat.q_lo, lat.q_hi, window_vector({{0, 1.0}}));
  const auto id = kraus_consistency(carrier, EomConfig{}, lat);
  CHECK(id.passed);
  CHECK(id.kraus_count == 1);

  EomConfig ext;
  ext.arm2.phi_b = kPi;
  const auto ex = kraus_consistency(carrier, ext, lat);
  CHECK(ex.passed);
  CHECK(ex.completeness_error < 1e-10);

  const auto dsb = kraus_consistency(pure_density(lat.q_lo, lat.q_hi, window_vector({{0, 0.6}, {1, {0.0, 0.8}}})),
                                     preset(EomPreset::dsb_quadrature, 1.0), lat);
  CHECK(dsb.reconstruction_error < 1e-10);
  CHECK(dsb.trace == Approx(1.0).margin(1e-10));

  std::mt19937_64 g(31);
  for (int c = 0; c < 5; ++c) {
    const auto rep = kraus_consistency(random_density(g, 2), random_config(g), lat);
    CHECK(rep.passed);
  }
}

TEST_CASE("reduced state of a product") {
  TwoPortState s;
  s.add({{1, 5, 1}}, 0.6);
  s.add({{2, 5, 1}}, cplx{0.0, 0.8});
  const auto red = reduce_to_port(s, 1);
  REQUIRE(red.keys.size() == 2);
  CHECK(red.keys[0].empty());
  CHECK(red.rho(0, 0).real() == Approx(0.64));
  CHECK(red.rho(1, 1).real() == Approx(0.36));
  CHECK(std::abs(red.rho(0, 1)) < 1e-15);
}

TEST_CASE("photon-number blocks") {
  const auto lat = lattice();
  const auto two = TwoPortState::fock(1, kQ0, 2);
  const auto id = block_decompose(eom_apply(EomConfig{}, two, lat));
  REQUIRE(id.weights.size() == 3);
  CHECK(id.weights[2] == Approx(1.0).margin(1e-12));
  CHECK(id.weights[0] == Approx(0.0).margin(1e-12));

  EomConfig half;
  half.arm2.phi_b = kPi / 2;
  const auto b = block_decompose(eom_apply(half, two, lat));
  for (int k = 0; k <= 2; ++k) CHECK(b.weights[k] == Approx(oracle::binomial(2, k, 0.5)).margin(1e-10));
  CHECK(b.commutator_defect < 1e-10);

  std::mt19937_64 g(41);
  for (int c = 0; c < 10; ++c) {
    const auto cfg = random_config(g);
    const auto one = TwoPortState::fock(1, kQ0, 1);
    const auto bd = block_decompose(eom_apply(cfg, one, lat));
    const auto ch = apply_channel(pure_density(lat.q_lo, lat.q_hi, window_vector({{0, 1.0}})), cfg, lat);
    REQUIRE(bd.weights.size() == 2);
    CHECK(bd.weights[0] == Approx(ch.p0).margin(1e-10));
    CHECK(bd.weights[1] == Approx(ch.p1).margin(1e-10));
    const auto bd2 = block_decompose(eom_apply(cfg, two, lat));
    double sum = 0.0;
    for (double w : bd2.weights) sum += w;
    CHECK(sum == Approx(1.0).margin(1e-10));
    for (double e : bd2.min_eigenvalues) CHECK(e >= -1e-10);
  }
}

TEST_CASE("block decomposition rejects superpositions of photon numbers") {
  TwoPortState s;
  s.add({{1, 5, 1}}, 0.6);
  s.add({}, 0.8);
  CHECK_THROWS_AS(block_decompose(s), ContractViolation);
}
