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

#include "eoq/qkd.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "eoq/mode_space.hpp"
#include "eoq/numerics.hpp"
#include "eoq/phase_mod.hpp"

namespace eoq::qkd {
namespace {

constexpr std::int64_t kBlock = 1 << 16;

struct LabelSetting {
  double m;
  double theta;
};

LabelSetting setting(Label l) {
  switch (l) {
    case Label::plus1: return {solve_basis1_index(), -kPi / 2};
    case Label::minus1: return {solve_basis1_index(), kPi / 2};
    case Label::plus2: return {0.0, 0.0};
    case Label::minus2: return {solve_basis2_index(), kPi / 2};
  }
  throw std::logic_error("unreachable");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

using Counts = std::array<std::array<std::array<std::int64_t, 2>, 2>, 4>;

}  // namespace

Label parse_label(std::string_view s) {
  if (s == "+1") return Label::plus1;
  if (s == "-1") return Label::minus1;
  if (s == "+2") return Label::plus2;
  if (s == "-2") return Label::minus2;
  throw std::invalid_argument("unknown FC label '" + std::string(s) + "'");
}

std::string_view to_string(Label l) {
  switch (l) {
    case Label::plus1: return "+1";
    case Label::minus1: return "-1";
    case Label::plus2: return "+2";
    case Label::minus2: return "-2";
  }
  return "?";
}

int basis_of(Label l) { return (l == Label::plus1 || l == Label::minus1) ? 1 : 2; }
bool is_plus(Label l) { return l == Label::plus1 || l == Label::plus2; }

double FcState::norm_squared() const {
  return std::norm(amp[0]) + std::norm(amp[1]) + std::norm(amp[2]);
}

cplx inner_product(const FcState& a, const FcState& b) {
  cplx s{};
  for (int i = 0; i < 3; ++i) s += std::conj(a.amp[i]) * b.amp[i];
  return s;
}

double solve_basis1_index() {
  static const double m = numerics::bisect(
      [](double x) { return numerics::bessel_j(0, x) - std::sqrt(2.0) * numerics::bessel_j(1, x); },
      0.5, 2.0);
  return m;
}

double solve_basis2_index() {
  static const double m =
      numerics::bisect([](double x) { return numerics::bessel_j(0, x); }, 2.0, 3.0);
  return m;
}

FcState reference_state(Label l) {
  const double h = std::sqrt(0.5);
  FcState s;
  s.label = l;
  switch (l) {
    case Label::plus1: s.amp = {-0.5, h, 0.5}; break;
    case Label::minus1: s.amp = {0.5, h, -0.5}; break;
    case Label::plus2: s.amp = {0.0, 1.0, 0.0}; break;
    case Label::minus2: s.amp = {-h, 0.0, h}; break;
  }
  return s;
}

FcState alice_state(Label l) {
  const LabelSetting set = setting(l);
  const ToneConfig cfg = tone(set.m, set.theta, 0.0);
  FcState s;
  s.label = l;
  for (int n = -1; n <= 1; ++n) s.amp[n + 1] = classical_coeff(cfg, n);
  const double eta = s.norm_squared();
  for (auto& a : s.amp) a /= std::sqrt(eta);

  const FcState ref = reference_state(l);
  const cplx overlap = inner_product(s, ref);
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx{1.0};
  double dev = 0.0;
  for (int i = 0; i < 3; ++i) {
    s.amp[i] *= phase;
    dev = std::max(dev, std::abs(s.amp[i] - ref.amp[i]));
  }
  if (dev > 1e-3) {
    throw ContractViolation("fc_state", "state " + std::string(to_string(l)) +
                                            " deviates from its reference by " +
                                            std::to_string(dev));
  }
  return s;
}

DetectorProbs bob_measure_probs(const FcState& state, int bob_basis) {
  if (bob_basis != 1 && bob_basis != 2) throw std::invalid_argument("bob_basis must be 1 or 2");
  const double n2 = state.norm_squared();
  if (std::fabs(n2 - 1.0) > 1e-9) throw std::invalid_argument("bob_measure_probs: state not normalized");
  if (bob_basis == 2) {
    const double p2 = std::norm(state.amp[1]);
    return {1.0 - p2, p2};
  }
  const ToneConfig cfg = tone(solve_basis1_index(), -kPi / 2, 0.0);
  const int g = guard_band(cfg.m);
  const int q0 = 2 * g + 64;
  const ModeLattice lat = lattice_from_window(q0, q0 - 1 - g, q0 + 1 + g);
  const OnePhotonMatrix M = exact_matrix(cfg, lat);
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(lat.size());
  for (int n = -1; n <= 1; ++n) in(q0 + n - lat.q_lo) = state.amp[n + 1];
  const Eigen::VectorXcd out = M.m * in;
  const double p2 = std::norm(out(q0 - lat.q_lo));
  const double total = out.squaredNorm();
  return {total - p2, p2};
}

bool bob_reads_plus(int bob_basis, bool d1_fired) { return bob_basis == 2 ? !d1_fired : d1_fired; }

SidebandPair b92_sideband_amplitude(double m_a, double theta_a, double m_b, double theta_b,
                                    cplx alpha) {
  const int q0 = 16;
  const ModeLattice lat = lattice_from_window(q0, q0 - 4, q0 + 4);
  FirstOrderResult r = multitone_first_order(
      {DriveTone{m_a, theta_a, 1, 1.0}, DriveTone{m_b, theta_b, 1, 1.0}}, 1.0, lat);
  for (auto& w : r.warnings) w = "low-index regime: " + w;
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(lat.size());
  in(q0 - lat.q_lo) = alpha;
  const Eigen::VectorXcd out = r.matrix.m * in;
  return {out(q0 - 1 - lat.q_lo), out(q0 + 1 - lat.q_lo), std::move(r.warnings)};
}

namespace {

struct Tables {
  std::array<double, 4> cumulative{};
  std::array<std::array<double, 2>, 4> p_d1{};
};

Tables make_tables(const SessionConfig& cfg) {
  double sum = 0.0;
  for (double r : cfg.rates) {
    if (!(r >= 0.0)) throw std::invalid_argument("run_session: rates must be non-negative");
    sum += r;
  }
  if (std::fabs(sum - 1.0) > 1e-12) throw std::invalid_argument("run_session: rates must sum to 1");
  if (cfg.bob_basis && *cfg.bob_basis != 1 && *cfg.bob_basis != 2) {
    throw std::invalid_argument("run_session: bob_basis must be 1 or 2");
  }
  Tables t;
  double acc = 0.0;
  for (int l = 0; l < 4; ++l) {
    acc += cfg.rates[l];
    t.cumulative[l] = acc;
    const FcState s = alice_state(static_cast<Label>(l));
    for (int b = 1; b <= 2; ++b) t.p_d1[l][b - 1] = bob_measure_probs(s, b).p_d1;
  }
  t.cumulative[3] = 1.0;
  return t;
}

void finish(SessionStats& st) {
  st.sifted = 0;
  st.errors = 0;
  for (int l = 0; l < 4; ++l) {
    const Label label = static_cast<Label>(l);
    const int b = basis_of(label);
    for (int d = 1; d <= 2; ++d) {
      const std::int64_t c = st.counts[l][b - 1][d - 1];
      st.sifted += c;
      if (bob_reads_plus(b, d == 1) != is_plus(label)) st.errors += c;
    }
  }
  st.sift_rate = static_cast<double>(st.sifted) / static_cast<double>(st.trials);
  st.qber = st.sifted > 0 ? static_cast<double>(st.errors) / static_cast<double>(st.sifted) : 0.0;
}

}  // namespace

SessionStats run_session(const SessionConfig& cfg) {
  if (cfg.trials <= 0) throw std::invalid_argument("run_session: trials must be positive");
  const Tables tab = make_tables(cfg);
  const std::int64_t blocks = (cfg.trials + kBlock - 1) / kBlock;

  auto run_block = [&](std::int64_t b, Counts& counts) {
    std::mt19937_64 gen(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(b))));
    const std::int64_t n = std::min(kBlock, cfg.trials - b * kBlock);
    for (std::int64_t i = 0; i < n; ++i) {
      const double u = uniform(gen);
      int l = 0;
      while (l < 3 && u >= tab.cumulative[l]) ++l;
      const double ub = uniform(gen);
      const int basis = cfg.bob_basis ? *cfg.bob_basis : (ub < 0.5 ? 1 : 2);
      const bool d1 = uniform(gen) < tab.p_d1[l][basis - 1];
      ++counts[l][basis - 1][d1 ? 0 : 1];
    }
  };

  int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = static_cast<int>(std::clamp<std::int64_t>(threads, 1, blocks));
  std::vector<Counts> partial(threads, Counts{});
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::int64_t b = w; b < blocks; b += threads) run_block(b, partial[w]);
    });
  }
  for (auto& th : pool) th.join();

  SessionStats st;
  st.trials = cfg.trials;
  st.seed = cfg.seed;
  for (const auto& c : partial) {
    for (int l = 0; l < 4; ++l)
      for (int b = 0; b < 2; ++b)
        for (int d = 0; d < 2; ++d) st.counts[l][b][d] += c[l][b][d];
  }
  finish(st);
  return st;
}

double expected_qber(const SessionConfig& cfg) {
  const Tables tab = make_tables(cfg);
  double sifted = 0.0;
  double errors = 0.0;
  for (int l = 0; l < 4; ++l) {
    const Label label = static_cast<Label>(l);
    const int b = basis_of(label);
    const double pb = cfg.bob_basis ? (*cfg.bob_basis == b ? 1.0 : 0.0) : 0.5;
    const double w = cfg.rates[l] * pb;
    sifted += w;
    const double p1 = tab.p_d1[l][b - 1];
    errors += w * (bob_reads_plus(b, true) != is_plus(label) ? p1 : 1.0 - p1);
  }
  return sifted > 0.0 ? errors / sifted : 0.0;
}

}  // namespace eoq::qkd
