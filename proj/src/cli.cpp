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

#include "eoq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eoq/amp_mod.hpp"
#include "eoq/phase_mod.hpp"
#include "eoq/qkd.hpp"
#include "eoq/quantum_channel.hpp"
#include "eoq/serialization.hpp"
#include "eoq/wavepacket.hpp"

namespace eoq::cli {
namespace {

using nlohmann::json;

class BadConfig : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- logging

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

Level log_level() {
  const char* env = std::getenv("EOQ_LOG_LEVEL");
  if (!env) return Level::warn;
  const std::string v = env;
  if (v == "error") return Level::error;
  if (v == "info") return Level::info;
  if (v == "debug") return Level::debug;
  return Level::warn;
}

void log(std::ostream& err, Level lvl, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (lvl <= log_level()) err << "eoq [" << names[static_cast<int>(lvl)] << "] " << msg << '\n';
}

// ---------------------------------------------------------------- params

enum class Kind { number, integer, text, boolean, numbers };

struct Param {
  std::string name;
  Kind kind;
  json fallback;  // null: optional without default
  std::string help;
};

using Schema = std::vector<Param>;

json parse_flag(const Param& p, const std::string& s) {
  try {
    std::size_t used = 0;
    switch (p.kind) {
      case Kind::number: {
        const double v = std::stod(s, &used);
        if (used != s.size()) break;
        return v;
      }
      case Kind::integer: {
        const long long v = std::stoll(s, &used);
        if (used != s.size()) break;
        return v;
      }
      case Kind::text:
        return s;
      case Kind::boolean:
        if (s == "true" || s == "1") return true;
        if (s == "false" || s == "0") return false;
        break;
      case Kind::numbers: {
        json arr = json::array();
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
          const double v = std::stod(item, &used);
          if (used != item.size()) throw std::invalid_argument(item);
          arr.push_back(v);
        }
        return arr;
      }
    }
  } catch (const std::logic_error&) {
  }
  throw BadConfig("--" + p.name + ": cannot parse '" + s + "'");
}

void check_type(const Param& p, const json& v) {
  bool ok = false;
  switch (p.kind) {
    case Kind::number: ok = v.is_number(); break;
    case Kind::integer: ok = v.is_number_integer(); break;
    case Kind::text: ok = v.is_string(); break;
    case Kind::boolean: ok = v.is_boolean(); break;
    case Kind::numbers:
      ok = v.is_array();
      if (ok)
        for (const auto& e : v) ok = ok && e.is_number();
      break;
  }
  if (!ok) throw BadConfig("config key '" + p.name + "' has the wrong type");
}

struct Args {
  json values = json::object();

  bool has(const std::string& k) const { return values.contains(k) && !values[k].is_null(); }
  double num(const std::string& k) const { return values.at(k).get<double>(); }
  long long integer(const std::string& k) const { return values.at(k).get<long long>(); }
  std::string text(const std::string& k) const { return values.at(k).get<std::string>(); }
  bool flag(const std::string& k) const { return values.at(k).get<bool>(); }
  double num_or(const std::string& k, double d) const { return has(k) ? num(k) : d; }
};

// ---------------------------------------------------------------- output

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

void write_table_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      const json& v = row[i];
      if (v.is_number_float()) {
        os << format_double(v.get<double>());
      } else if (v.is_string()) {
        os << v.get<std::string>();
      } else if (v.is_null()) {
        os << "nan";
      } else {
        os << v.dump();
      }
    }
    os << '\n';
  }
}

json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = row[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

struct Result {
  Table table;
  json summary = json::object();
};

// ---------------------------------------------------------------- shared groups

Schema eom_schema() {
  return {
      {"preset", Kind::text, nullptr, "dsb_quadrature | ssb_lower_suppressed | ssb_upper_suppressed"},
      {"m", Kind::number, 0.0, "modulation index used by the preset"},
      {"m1", Kind::number, nullptr, "arm 1 modulation index"},
      {"theta1", Kind::number, nullptr, "arm 1 RF phase [rad]"},
      {"phi_b1", Kind::number, nullptr, "arm 1 bias phase [rad]"},
      {"m2", Kind::number, nullptr, "arm 2 modulation index"},
      {"theta2", Kind::number, nullptr, "arm 2 RF phase [rad]"},
      {"phi_b2", Kind::number, nullptr, "arm 2 bias phase [rad]"},
      {"input_splitter", Kind::text, nullptr, "dc | yb_split | yb_combine (default yb_split)"},
      {"output_splitter", Kind::text, nullptr, "dc | yb_split | yb_combine (default yb_combine)"},
      {"k_in", Kind::number, nullptr, "input splitter power coupling (default 0.5)"},
      {"k_out", Kind::number, nullptr, "output splitter power coupling (default 0.5)"},
      {"asymmetric", Kind::boolean, false, "arm 1 carries no modulator"},
  };
}

Schema packet_schema() {
  return {
      {"n", Kind::integer, 256, "grid samples (power of two)"},
      {"t_span", Kind::number, 16.0, "grid duration [s]"},
      {"width", Kind::number, 1.0, "Gaussian intensity standard deviation [s]"},
      {"t_center", Kind::number, 0.0, "packet centre [s]"},
      {"tone_bins", Kind::integer, 4, "RF tone as a multiple of 2 pi / t_span"},
      {"input", Kind::text, nullptr, "wavepacket file (.csv or .json) replacing the Gaussian"},
  };
}

Schema join(Schema a, const Schema& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

SplitterCoeffs splitter_from(const std::string& kind, double k) {
  const SplitterKind s = parse_splitter_kind(kind);
  if (s == SplitterKind::beamsplitter) throw BadConfig("bs splitters need explicit coefficients");
  return make_splitter(s, k);
}

EomConfig eom_from(const Args& a) {
  EomConfig cfg;
  if (a.has("preset")) cfg = preset(parse_preset(a.text("preset")), a.num("m"));
  if (a.has("input_splitter") || a.has("k_in")) {
    cfg.input = splitter_from(a.has("input_splitter") ? a.text("input_splitter") : "yb_split",
                              a.num_or("k_in", 0.5));
  }
  if (a.has("output_splitter") || a.has("k_out")) {
    cfg.output = splitter_from(a.has("output_splitter") ? a.text("output_splitter") : "yb_combine",
                               a.num_or("k_out", 0.5));
  }
  cfg.arm1.m = a.num_or("m1", cfg.arm1.m);
  cfg.arm1.theta = a.num_or("theta1", cfg.arm1.theta);
  cfg.arm1.phi_b = a.num_or("phi_b1", cfg.arm1.phi_b);
  cfg.arm2.m = a.num_or("m2", cfg.arm2.m);
  cfg.arm2.theta = a.num_or("theta2", cfg.arm2.theta);
  cfg.arm2.phi_b = a.num_or("phi_b2", cfg.arm2.phi_b);
  cfg.asymmetric = a.flag("asymmetric");
  validate(cfg);
  return cfg;
}

double max_index(const EomConfig& cfg) {
  return std::max(cfg.effective_arm1().effective_m(), cfg.arm2.effective_m());
}

// Deep optical-limit lattice with `reach` printable offsets around q0.
ModeLattice optical_lattice(double m, int reach) {
  const int g = guard_band(m);
  const int q0 = 10000;
  return lattice_from_window(q0, q0 - reach - g, q0 + reach + g);
}

int printable_reach(double m) {
  return static_cast<int>(sideband_spectrum(tone(m, 0.0, 0.0)).offsets.back());
}

TimeGrid packet_grid(const Args& a) {
  const long long n = a.integer("n");
  if (n < 2 || n > (1 << 20)) throw BadConfig("n must lie in [2, 2^20]");
  const double span = a.num("t_span");
  if (!(span > 0.0)) throw BadConfig("t_span must be positive");
  return TimeGrid{-0.5 * span, span / static_cast<double>(n), static_cast<int>(n)};
}

Wavepacket packet_from(const Args& a) {
  if (a.has("input")) {
    const std::string path = a.text("input");
    std::ifstream in(path);
    if (!in) throw BadConfig("cannot open input '" + path + "'");
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
      return wavepacket_from_json(json::parse(in)).normalized();
    }
    return read_wavepacket_csv(in).normalized();
  }
  return gaussian_packet(packet_grid(a), a.num("t_center"), a.num("width"));
}

double tone_omega(const Args& a, const TimeGrid& g) {
  return 2.0 * kPi * static_cast<double>(a.integer("tone_bins")) / g.duration();
}

// ---------------------------------------------------------------- subcommands

Result cmd_sidebands(const Args& a, std::ostream&) {
  ToneConfig cfg = tone(a.num("m"), a.num("theta"), a.num("phi_b"));
  const SidebandSpectrum s = sideband_spectrum(cfg, a.num("tail"));
  Result r;
  r.table.columns = {"offset_tone_steps", "re_amplitude", "im_amplitude", "power_fraction"};
  for (std::size_t i = 0; i < s.offsets.size(); ++i) {
    const cplx c = s.coefficients[i];
    r.table.rows.push_back({s.offsets[i], c.real(), c.imag(), std::norm(c)});
  }
  r.summary = {{"m", cfg.m}, {"theta", cfg.theta}, {"phi_b", cfg.phi_b},
               {"carson_band", carson_band(cfg.m)}, {"total_power", s.total_power()}};
  return r;
}

Result cmd_eom(const Args& a, std::ostream&) {
  const EomConfig cfg = eom_from(a);
  const std::string what = a.text("table");
  Result r;
  if (what == "classical") {
    const long long n = a.integer("samples");
    if (n < 2) throw BadConfig("samples must be >= 2");
    const TimeGrid g{0.0, 1.0 / static_cast<double>(n), static_cast<int>(n)};
    const auto drives = arm_tone_drives(cfg, g, 2.0 * kPi);
    const EomClassicalMatrix M = classical_matrix(cfg, drives.first, drives.second);
    r.table.columns = {"t_rf_periods", "re_m11", "im_m11", "re_m21", "im_m21",
                       "re_m12", "im_m12", "re_m22", "im_m22"};
    for (int j = 0; j < g.n; ++j) {
      r.table.rows.push_back({g.time(j), M.m11[j].real(), M.m11[j].imag(), M.m21[j].real(),
                              M.m21[j].imag(), M.m12[j].real(), M.m12[j].imag(),
                              M.m22[j].real(), M.m22[j].imag()});
    }
    r.summary = {{"unitarity_defect", classical_unitarity_defect(M)}};
    return r;
  }
  if (what != "sidebands") throw BadConfig("table must be 'sidebands' or 'classical'");
  const long long port = a.integer("input_port");
  if (port != 1 && port != 2) throw BadConfig("input_port must be 1 or 2");
  const double m = max_index(cfg);
  const int reach = printable_reach(m);
  const ModeLattice lat = optical_lattice(m, reach);
  const TwoPortState out = eom_one_photon(cfg, static_cast<int>(port), lat.carrier_index, lat);
  r.table.columns = {"port", "offset_tone_steps", "re_amplitude", "im_amplitude",
                     "power_fraction"};
  double p[2] = {0.0, 0.0};
  for (int o = 1; o <= 2; ++o) {
    for (int n = -reach; n <= reach; ++n) {
      const cplx c = out.amplitude({{o, lat.carrier_index + n, 1}});
      r.table.rows.push_back({o, n, c.real(), c.imag(), std::norm(c)});
      p[o - 1] += std::norm(c);
    }
  }
  r.summary = {{"port1_power", p[0]}, {"port2_power", p[1]}, {"norm", out.norm_squared()}};
  return r;
}

Result cmd_hom(const Args& a, std::ostream&) {
  const Wavepacket wp = gaussian_packet(packet_grid(a), a.num("t_center"), a.num("width"));
  const TimeGrid& g = wp.grid();
  const std::string kind = a.text("drive");
  const ToneConfig cfg = tone(a.num("m"), a.num("theta"), a.num("phi_b"));
  DriveSignal drive = zero_drive(g);
  if (kind == "step") {
    drive = step_drive(g);
  } else if (kind == "tone") {
    drive = tone_drive(g, tone_omega(a, g), cfg.theta);
  } else if (kind != "none") {
    throw BadConfig("drive must be none, step or tone");
  }
  const auto alpha = phase_function(cfg, drive);
  Result r;
  r.table.columns = {"t1_s", "t2_s", "p_same1_per_s2", "p_same2_per_s2", "p_cross_per_s2"};
  double tot[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      const HomCoincidence h = hom_coincidences(wp, alpha, g.time(i), g.time(j));
      r.table.rows.push_back({g.time(i), g.time(j), h.p_same1, h.p_same2, h.p_cross});
      tot[0] += h.p_same1 * g.dt * g.dt;
      tot[1] += h.p_same2 * g.dt * g.dt;
      tot[2] += h.p_cross * g.dt * g.dt;
    }
  }
  r.summary = {{"p_same1", tot[0]}, {"p_same2", tot[1]}, {"p_cross", tot[2]}};
  return r;
}

Result cmd_qkd(const Args& a, std::ostream& err) {
  if (!a.has("trials")) throw BadConfig("qkd requires --trials");
  if (!a.has("seed")) throw BadConfig("qkd requires --seed (no implicit seeding)");
  qkd::SessionConfig sc;
  sc.trials = a.integer("trials");
  if (a.integer("seed") < 0) throw BadConfig("seed must be non-negative");
  sc.seed = static_cast<std::uint64_t>(a.integer("seed"));
  const json rates = a.values.at("rates");
  if (rates.size() != 4) throw BadConfig("rates needs four entries (+1, -1, +2, -2)");
  for (int i = 0; i < 4; ++i) sc.rates[i] = rates[i].get<double>();
  const long long bb = a.integer("bob_basis");
  if (bb == 1 || bb == 2) {
    sc.bob_basis = static_cast<int>(bb);
  } else if (bb != 0) {
    throw BadConfig("bob_basis must be 0 (random), 1 or 2");
  }
  sc.threads = static_cast<int>(a.integer("threads"));
  log(err, Level::info, "running " + std::to_string(sc.trials) + " trials");
  const qkd::SessionStats st = qkd::run_session(sc);

  Result r;
  r.table.columns = {"label", "bob_basis", "detector", "count"};
  json counts = json::array();
  for (int l = 0; l < 4; ++l) {
    for (int b = 1; b <= 2; ++b) {
      for (int d = 1; d <= 2; ++d) {
        const auto c = st.counts[l][b - 1][d - 1];
        const std::string label(qkd::to_string(static_cast<qkd::Label>(l)));
        r.table.rows.push_back({label, b, "D" + std::to_string(d), c});
      }
    }
  }
  json probs = json::object();
  for (int l = 0; l < 4; ++l) {
    const auto label = static_cast<qkd::Label>(l);
    const auto s = qkd::alice_state(label);
    json pl = json::object();
    for (int b = 1; b <= 2; ++b) {
      const auto p = qkd::bob_measure_probs(s, b);
      pl["basis" + std::to_string(b)] = {{"p_d1", p.p_d1}, {"p_d2", p.p_d2}};
    }
    probs[std::string(qkd::to_string(label))] = pl;
  }
  r.summary = {{"trials", st.trials},
               {"seed", st.seed},
               {"sifted", st.sifted},
               {"errors", st.errors},
               {"sift_rate", st.sift_rate},
               {"qber", st.qber},
               {"expected_qber", qkd::expected_qber(sc)},
               {"m_basis1", qkd::solve_basis1_index()},
               {"m_basis2", qkd::solve_basis2_index()},
               {"detector_probabilities", probs}};
  return r;
}

Result cmd_kraus(const Args& a, std::ostream&) {
  const EomConfig cfg = eom_from(a);
  const double m = max_index(cfg);
  const int g = guard_band(m);
  const int half = static_cast<int>(a.integer("half_window"));
  if (half < 0 || half > 64) throw BadConfig("half_window must lie in [0, 64]");
  const int q0 = 1000;
  const ModeLattice lat = lattice_from_window(q0, q0 - half - g, q0 + half + g);
  const std::string input = a.text("input_state");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(lat.size(), lat.size());
  if (input == "carrier") {
    rho(q0 - lat.q_lo, q0 - lat.q_lo) = 1.0;
  } else if (input == "mixed") {
    for (int q = q0 - half; q <= q0 + half; ++q) rho(q - lat.q_lo, q - lat.q_lo) = 1.0 / (2 * half + 1);
  } else {
    throw BadConfig("input_state must be carrier or mixed");
  }
  const OnePhotonDensity d{lat.q_lo, lat.q_hi, rho};
  const ChannelResult ch = apply_channel(d, cfg, lat);
  const KrausReport rep = kraus_consistency(d, cfg, lat);
  const long long photons = a.integer("photons");
  if (photons != 1 && photons != 2) throw BadConfig("photons must be 1 or 2");
  const TwoPortState global = eom_apply(cfg, TwoPortState::fock(1, q0, static_cast<int>(photons)), lat);
  const BlockDecomposition bd = block_decompose(global, 1);

  Result r;
  r.table.columns = {"k_photons", "weight", "min_eigenvalue", "dimension"};
  json blocks = json::array();
  for (std::size_t k = 0; k < bd.weights.size(); ++k) {
    r.table.rows.push_back({static_cast<int>(k), bd.weights[k], bd.min_eigenvalues[k],
                            static_cast<int>(bd.bases[k].size())});
  }
  r.summary = {{"p0", ch.p0},
               {"p1", ch.p1},
               {"kraus_reconstruction_error", rep.reconstruction_error},
               {"kraus_completeness_error", rep.completeness_error},
               {"kraus_count", rep.kraus_count},
               {"kraus_passed", rep.passed},
               {"commutator_defect", bd.commutator_defect},
               {"photons", photons}};
  return r;
}

Result cmd_correlate(const Args& a, std::ostream&) {
  const EomConfig cfg = eom_from(a);
  const Wavepacket wp = packet_from(a);
  const TimeGrid& g = wp.grid();
  const auto drives = arm_tone_drives(cfg, g, tone_omega(a, g));
  const long long pa = a.integer("port_a"), pb = a.integer("port_b");
  if ((pa != 1 && pa != 2) || (pb != 1 && pb != 2)) throw BadConfig("ports must be 1 or 2");
  Result r;
  r.table.columns = {"t1_s", "t2_s", "re_g1", "im_g1", "defined"};
  std::vector<int> firsts;
  if (a.has("t1")) {
    const auto j = g.index_of(a.num("t1"));
    if (!j) throw BadConfig("t1 is not a grid time");
    firsts.push_back(*j);
  } else {
    for (int j = 0; j < g.n; ++j) firsts.push_back(j);
  }
  int undefined = 0;
  for (int i : firsts) {
    for (int j = 0; j < g.n; ++j) {
      const auto v = g1_correlation(cfg, wp, drives.first, drives.second, static_cast<int>(pa),
                                    static_cast<int>(pb), g.time(i), g.time(j));
      if (v) {
        r.table.rows.push_back({g.time(i), g.time(j), v->real(), v->imag(), true});
      } else {
        ++undefined;
        r.table.rows.push_back({g.time(i), g.time(j), nullptr, nullptr, false});
      }
    }
  }
  r.summary = {{"undefined_points", undefined}};
  return r;
}

Result cmd_wavepacket(const Args& a, std::ostream&) {
  const EomConfig cfg = eom_from(a);
  const Wavepacket wp = packet_from(a);
  const TimeGrid& g = wp.grid();
  const double omega = tone_omega(a, g);
  const auto drives = arm_tone_drives(cfg, g, omega);
  const auto [o, rad] = modulate_wavepacket(cfg, wp, drives.first, drives.second);
  const auto conv = modulated_spectra(cfg, wp, omega);
  const auto so = spectrum(o);
  const auto sr = spectrum(rad);
  double dev = 0.0;
  for (int j = 0; j < g.n; ++j) {
    dev = std::max({dev, std::abs(so[j] - conv.first[j]), std::abs(sr[j] - conv.second[j])});
  }
  Result r;
  r.table.columns = {"t_s", "re_phi_o_sqrt_hz", "im_phi_o_sqrt_hz", "re_phi_r_sqrt_hz",
                     "im_phi_r_sqrt_hz"};
  for (int j = 0; j < g.n; ++j) {
    r.table.rows.push_back({g.time(j), o[j].real(), o[j].imag(), rad[j].real(), rad[j].imag()});
  }
  r.summary = {{"p_output", o.norm_squared()},
               {"p_radiated", rad.norm_squared()},
               {"spectral_route_deviation", dev}};
  return r;
}

// ---------------------------------------------------------------- dispatch

struct Command {
  std::string name;
  std::string help;
  Schema schema;
  std::function<Result(const Args&, std::ostream&)> fn;
};

std::vector<Command> commands() {
  return {
      {"sidebands", "classical sideband amplitudes of one phase modulator",
       {{"m", Kind::number, 0.0, "modulation index"},
        {"theta", Kind::number, 0.0, "RF phase [rad]"},
        {"phi_b", Kind::number, 0.0, "bias phase [rad]"},
        {"tail", Kind::number, 1e-15, "largest omitted sideband power"}},
       cmd_sidebands},
      {"eom", "port-resolved single-photon spectrum or classical matrix of an amplitude modulator",
       join(eom_schema(), {{"input_port", Kind::integer, 1, "port the photon enters"},
                           {"table", Kind::text, "sidebands", "sidebands | classical"},
                           {"samples", Kind::integer, 64, "samples per RF period (classical)"}}),
       cmd_eom},
      {"hom", "two-photon coincidence densities behind a balanced coupler",
       join(packet_schema(), {{"drive", Kind::text, "none", "none | step | tone"},
                              {"m", Kind::number, 0.0, "modulation index"},
                              {"theta", Kind::number, 0.0, "RF phase [rad]"},
                              {"phi_b", Kind::number, 0.0, "bias phase [rad]"}}),
       cmd_hom},
      {"qkd", "frequency-coded BB84 Monte Carlo session",
       {{"trials", Kind::integer, nullptr, "number of sent photons"},
        {"seed", Kind::integer, nullptr, "generator seed (required)"},
        {"rates", Kind::numbers, json::array({0.25, 0.25, 0.25, 0.25}),
         "send rates for +1,-1,+2,-2"},
        {"bob_basis", Kind::integer, 0, "0 random, 1 or 2 forced"},
        {"threads", Kind::integer, 0, "worker threads (0 = all cores)"}},
       cmd_qkd},
      {"kraus", "channel probabilities, Kraus check and photon-number blocks",
       join(eom_schema(), {{"input_state", Kind::text, "carrier", "carrier | mixed"},
                           {"half_window", Kind::integer, 2, "modes either side for mixed input"},
                           {"photons", Kind::integer, 2, "photons for the block decomposition"}}),
       cmd_kraus},
      {"correlate", "first-order coherence of the modulated photon",
       join(join(eom_schema(), packet_schema()),
            {{"port_a", Kind::integer, 1, "port at t1"},
             {"port_b", Kind::integer, 1, "port at t2"},
             {"t1", Kind::number, nullptr, "fix t1 to one grid time"}}),
       cmd_correlate},
      {"wavepacket", "envelopes leaving both ports of an amplitude modulator",
       join(eom_schema(), packet_schema()), cmd_wavepacket},
  };
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadConfig("cannot open config '" + path + "'");
  try {
    json j = json::parse(in);
    if (!j.is_object()) throw BadConfig("config must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw BadConfig(std::string("config is not valid JSON: ") + e.what());
  }
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& msg,
                const std::string& invariant = "") {
  json rec = {{"error", kind}, {"message", msg}};
  if (!invariant.empty()) rec["invariant"] = invariant;
  err << rec.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Electro-optic modulator quantum scattering toolkit", "eoq"};
  app.require_subcommand(1);
  const auto cmds = commands();

  struct Slot {
    const Command* cmd;
    CLI::App* sub;
    std::map<std::string, std::string> raw;
    std::string config, output, format = "csv";
  };
  std::vector<std::unique_ptr<Slot>> slots;
  for (const auto& c : cmds) {
    auto slot = std::make_unique<Slot>();
    slot->cmd = &c;
    slot->sub = app.add_subcommand(c.name, c.help);
    slot->sub->add_option("--config", slot->config, "JSON config; flags override its keys");
    slot->sub->add_option("--output,-o", slot->output, "output path (default stdout)");
    slot->sub->add_option("--format", slot->format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    for (const auto& p : c.schema) {
      slot->sub->add_option("--" + p.name, slot->raw[p.name], p.help);
    }
    slots.push_back(std::move(slot));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << app.help();
    emit_error(err, "bad_config", e.what());
    return kExitBadConfig;
  }

  for (auto& slot : slots) {
    if (!slot->sub->parsed()) continue;
    const Command& cmd = *slot->cmd;
    try {
      Args args;
      for (const auto& p : cmd.schema) args.values[p.name] = p.fallback;
      std::string output = slot->output;
      std::string format = slot->format;
      if (!slot->config.empty()) {
        const json cfg = load_config(slot->config);
        for (const auto& [k, v] : cfg.items()) {
          if (k == "output") {
            if (slot->sub->count("--output") == 0) output = v.get<std::string>();
            continue;
          }
          if (k == "format") {
            if (slot->sub->count("--format") == 0) format = v.get<std::string>();
            continue;
          }
          const auto it = std::find_if(cmd.schema.begin(), cmd.schema.end(),
                                       [&](const Param& p) { return p.name == k; });
          if (it == cmd.schema.end()) throw BadConfig("unknown config key '" + k + "'");
          check_type(*it, v);
          args.values[k] = v;
        }
        if (format != "csv" && format != "json") throw BadConfig("format must be csv or json");
      }
      for (const auto& p : cmd.schema) {
        if (slot->sub->count("--" + p.name) > 0) args.values[p.name] = parse_flag(p, slot->raw[p.name]);
      }
      log(err, Level::debug, "parameters " + args.values.dump());

      const Result res = cmd.fn(args, err);

      std::ofstream file;
      std::ostream* dst = &out;
      if (!output.empty()) {
        file.open(output);
        if (!file) throw BadConfig("cannot write '" + output + "'");
        dst = &file;
      }
      if (format == "json") {
        json doc = {{"command", cmd.name}, {"parameters", args.values},
                    {"summary", res.summary}, {"rows", table_json(res.table)}};
        *dst << doc.dump(2) << '\n';
      } else {
        write_table_csv(*dst, res.table);
      }
      log(err, Level::info, cmd.name + " summary " + res.summary.dump());
      return kExitOk;
    } catch (const ContractViolation& e) {
      emit_error(err, "contract_violation", e.what(), e.invariant());
      return kExitContract;
    } catch (const BadConfig& e) {
      err << slot->sub->help();
      emit_error(err, "bad_config", e.what());
      return kExitBadConfig;
    } catch (const std::invalid_argument& e) {
      err << slot->sub->help();
      emit_error(err, "bad_config", e.what());
      return kExitBadConfig;
    } catch (const std::domain_error& e) {
      emit_error(err, "bad_config", e.what());
      return kExitBadConfig;
    } catch (const json::exception& e) {
      emit_error(err, "bad_config", e.what());
      return kExitBadConfig;
    }
  }
  return kExitBadConfig;
}

}  // namespace eoq::cli
