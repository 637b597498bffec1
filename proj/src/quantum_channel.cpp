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

#include "eoq/quantum_channel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace eoq {
namespace {

double min_eigenvalue(const Eigen::MatrixXcd& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void check_support(const OnePhotonDensity& d, const OnePhotonMatrix& M) {
  for (int q = d.q_lo; q <= d.q_hi; ++q) {
    const int i = q - d.q_lo;
    if (M.is_interior(q)) continue;
    if (d.rho.row(i).cwiseAbs().maxCoeff() > 0.0 || d.rho.col(i).cwiseAbs().maxCoeff() > 0.0) {
      throw ContractViolation("guard_band", "density has support on mode " + std::to_string(q) +
                                                " inside the guard band");
    }
  }
}

void check_window(const OnePhotonDensity& d, const ModeLattice& lattice) {
  if (d.q_lo != lattice.q_lo || d.q_hi != lattice.q_hi) {
    throw std::invalid_argument("density window does not match lattice window");
  }
}

TwoPortState::Key port_part(const TwoPortState::Key& key, int port) {
  TwoPortState::Key out;
  for (const auto& o : key)
    if (o.port == port) out.push_back(o);
  return out;
}

}  // namespace

void validate(const OnePhotonDensity& d) {
  if (d.rho.rows() != d.size() || d.rho.cols() != d.size()) {
    throw std::invalid_argument("OnePhotonDensity: matrix does not match window");
  }
  const double herm = (d.rho - d.rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) throw ContractViolation("density", "not Hermitian, defect " + std::to_string(herm));
  const double tr = d.rho.trace().real();
  if (std::fabs(tr - 1.0) > 1e-10) throw ContractViolation("density", "trace " + std::to_string(tr));
  const double ev = min_eigenvalue(d.rho);
  if (ev < -1e-10) throw ContractViolation("density", "negative eigenvalue " + std::to_string(ev));
}

OnePhotonDensity pure_density(int q_lo, int q_hi, const Eigen::VectorXcd& psi) {
  if (psi.size() != q_hi - q_lo + 1) throw std::invalid_argument("pure_density: size mismatch");
  const double n = psi.squaredNorm();
  if (!(n > 0.0)) throw std::invalid_argument("pure_density: zero vector");
  return OnePhotonDensity{q_lo, q_hi, psi * psi.adjoint() / n};
}

VWOperators vw_operators(const EomConfig& cfg, const ModeLattice& lattice) {
  const EomPortMatrices P = eom_port_matrices(cfg, lattice);
  return VWOperators{P.block(1, 1), P.block(2, 1)};
}

double completeness_defect(const VWOperators& vw) {
  const auto interior = vw.V.interior_modes();
  const Eigen::MatrixXcd G = vw.V.m.adjoint() * vw.V.m + vw.W.m.adjoint() * vw.W.m;
  double worst = 0.0;
  for (int a : interior) {
    for (int b : interior) {
      const cplx target = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(G(a - vw.V.q_lo, b - vw.V.q_lo) - target));
    }
  }
  return worst;
}

ChannelResult apply_channel(const OnePhotonDensity& rho_in, const EomConfig& cfg,
                            const ModeLattice& lattice) {
  validate(rho_in);
  check_window(rho_in, lattice);
  const VWOperators vw = vw_operators(cfg, lattice);
  check_support(rho_in, vw.V);
  const Eigen::MatrixXcd kept = vw.V.m * rho_in.rho * vw.V.m.adjoint();
  const Eigen::MatrixXcd lost = vw.W.m * rho_in.rho * vw.W.m.adjoint();
  ChannelResult r;
  r.p1 = kept.trace().real();
  r.p0 = lost.trace().real();
  if (r.p1 >= 1e-12) {
    Eigen::MatrixXcd c = kept / r.p1;
    c = 0.5 * (c + c.adjoint()).eval();
    r.conditional = OnePhotonDensity{rho_in.q_lo, rho_in.q_hi, std::move(c)};
  }
  return r;
}

KrausReport kraus_consistency(const OnePhotonDensity& rho_in, const EomConfig& cfg,
                              const ModeLattice& lattice) {
  validate(rho_in);
  check_window(rho_in, lattice);
  const VWOperators vw = vw_operators(cfg, lattice);
  check_support(rho_in, vw.V);
  const int n = rho_in.size();

  // Direct route: purify through the eigen-decomposition and propagate
  // every component through the two-port modulator.
  Eigen::MatrixXcd direct = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_in.rho);
  for (int e = 0; e < n; ++e) {
    const double w = es.eigenvalues()(e);
    if (w < 1e-15) continue;
    TwoPortState psi;
    for (int q = rho_in.q_lo; q <= rho_in.q_hi; ++q) {
      const cplx a = es.eigenvectors()(q - rho_in.q_lo, e);
      if (std::abs(a) > 0.0) psi.add({{1, q, 1}}, a);
    }
    const ReducedState red = reduce_to_port(eom_apply(cfg, psi, lattice), 1);
    // map kept-port keys onto vacuum (+) window
    std::vector<int> slot(red.keys.size());
    for (std::size_t i = 0; i < red.keys.size(); ++i) {
      const auto& k = red.keys[i];
      if (k.empty()) {
        slot[i] = 0;
      } else if (k.size() == 1 && k[0].n == 1) {
        slot[i] = 1 + k[0].mode - rho_in.q_lo;
      } else {
        throw ContractViolation("number_conservation", "one-photon input produced a multi-photon term");
      }
    }
    for (std::size_t i = 0; i < slot.size(); ++i)
      for (std::size_t j = 0; j < slot.size(); ++j) direct(slot[i], slot[j]) += w * red.rho(i, j);
  }

  // Operator-sum route.
  Eigen::MatrixXcd kraus = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  kraus.bottomRightCorner(n, n) = vw.V.m * rho_in.rho * vw.V.m.adjoint();
  int count = 1;
  Eigen::MatrixXcd completeness = vw.V.m.adjoint() * vw.V.m;
  for (int k = 0; k < n; ++k) {
    const Eigen::RowVectorXcd Kk = vw.W.m.row(k);  // |vac><1_k| W
    if (Kk.cwiseAbs().maxCoeff() == 0.0) continue;
    ++count;
    kraus(0, 0) += (Kk * rho_in.rho * Kk.adjoint())(0, 0);
    completeness += Kk.adjoint() * Kk;
  }

  KrausReport rep;
  rep.reconstruction_error = (kraus - direct).cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (int a : vw.V.interior_modes()) {
    for (int b : vw.V.interior_modes()) {
      const cplx target = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(completeness(a - rho_in.q_lo, b - rho_in.q_lo) - target));
    }
  }
  rep.completeness_error = worst;
  rep.trace = direct.trace().real();
  rep.kraus_count = count;
  rep.passed = rep.reconstruction_error <= 1e-10 && rep.completeness_error <= 1e-10;
  return rep;
}

ReducedState reduce_to_port(const TwoPortState& global, int keep_port) {
  if (keep_port != 1 && keep_port != 2) throw std::invalid_argument("keep_port must be 1 or 2");
  const int other = 3 - keep_port;
  std::map<TwoPortState::Key, int> index;
  // environment key -> list of (kept index, amplitude)
  std::map<TwoPortState::Key, std::vector<std::pair<int, cplx>>> by_env;
  for (const auto& [key, amp] : global.terms()) {
    auto kept = port_part(key, keep_port);
    auto it = index.find(kept);
    if (it == index.end()) it = index.emplace(kept, static_cast<int>(index.size())).first;
    by_env[port_part(key, other)].push_back({it->second, amp});
  }
  ReducedState r;
  r.keys.resize(index.size());
  // keys sorted: photon number first, then canonical order
  std::vector<std::pair<TwoPortState::Key, int>> sorted(index.begin(), index.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return photon_number(a.first) < photon_number(b.first);
  });
  std::vector<int> remap(index.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    r.keys[i] = sorted[i].first;
    remap[sorted[i].second] = static_cast<int>(i);
  }
  const int d = static_cast<int>(r.keys.size());
  r.rho = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [env, list] : by_env) {
    for (const auto& [i, a] : list)
      for (const auto& [j, b] : list) r.rho(remap[i], remap[j]) += a * std::conj(b);
  }
  return r;
}

BlockDecomposition block_decompose(const TwoPortState& global, int port) {
  const int n = global.max_photons();
  if (n < 0) throw std::invalid_argument("block_decompose: zero state");
  if (n > 2) throw std::invalid_argument("block_decompose: supports at most two photons");
  const ReducedState red = reduce_to_port(global, port);
  const int d = static_cast<int>(red.keys.size());

  BlockDecomposition out;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const int dn = photon_number(red.keys[j]) - photon_number(red.keys[i]);
      out.commutator_defect = std::max(out.commutator_defect, std::abs(red.rho(i, j)) * std::abs(dn));
    }
  }
  if (out.commutator_defect > 1e-10) {
    std::ostringstream os;
    os << "reduced state couples different photon numbers, defect " << out.commutator_defect;
    throw ContractViolation("number_commutation", os.str());
  }

  out.weights.assign(n + 1, 0.0);
  out.blocks.resize(n + 1);
  out.bases.resize(n + 1);
  out.min_eigenvalues.assign(n + 1, 0.0);
  double beyond = 0.0;
  for (int k = 0; k <= kMaxPhotons; ++k) {
    std::vector<int> idx;
    for (int i = 0; i < d; ++i)
      if (photon_number(red.keys[i]) == k) idx.push_back(i);
    Eigen::MatrixXcd blk(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) blk(a, b) = red.rho(idx[a], idx[b]);
    const double w = blk.trace().real();
    if (k > n) {
      beyond += std::fabs(w);
      continue;
    }
    const double ev = min_eigenvalue(blk);
    if (ev < -1e-10) {
      throw ContractViolation("block_positivity",
                              "block " + std::to_string(k) + " has eigenvalue " + std::to_string(ev));
    }
    out.weights[k] = w;
    out.min_eigenvalues[k] = ev;
    out.blocks[k] = std::move(blk);
    for (int i : idx) out.bases[k].push_back(red.keys[i]);
  }
  if (beyond > 1e-12) {
    throw ContractViolation("number_conservation", "weight beyond the input photon number");
  }
  return out;
}

}  // namespace eoq
