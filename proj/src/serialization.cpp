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

#include "eoq/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace eoq {

using nlohmann::json;

json to_json(const TwoPortState& s) {
  json terms = json::array();
  for (const auto& [key, amp] : s.terms()) {
    json k = json::array();
    for (const auto& o : key) k.push_back({{"port", o.port}, {"mode", o.mode}, {"n", o.n}});
    terms.push_back({{"key", k}, {"re", amp.real()}, {"im", amp.imag()}});
  }
  return {{"terms", terms}};
}

TwoPortState state_from_json(const json& j) {
  TwoPortState s;
  for (const auto& t : j.at("terms")) {
    TwoPortState::Key key;
    for (const auto& o : t.at("key")) {
      key.push_back({o.at("port").get<int>(), o.at("mode").get<int>(), o.at("n").get<int>()});
    }
    s.add(std::move(key), cplx{t.at("re").get<double>(), t.at("im").get<double>()});
  }
  return s;
}

json to_json(const Wavepacket& wp) {
  json re = json::array(), im = json::array();
  for (const auto& v : wp.samples()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return {{"t0", wp.grid().t0}, {"dt", wp.grid().dt}, {"n", wp.grid().n},
          {"carrier", wp.carrier()}, {"re", re}, {"im", im}};
}

Wavepacket wavepacket_from_json(const json& j) {
  TimeGrid g{j.at("t0").get<double>(), j.at("dt").get<double>(), j.at("n").get<int>()};
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != im.size()) throw std::invalid_argument("wavepacket json: re/im length mismatch");
  std::vector<cplx> phi(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) phi[i] = {re[i].get<double>(), im[i].get<double>()};
  return Wavepacket(g, std::move(phi), j.value("carrier", 0.0));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Wavepacket& wp) {
  os << "t_s,re_phi_sqrt_hz,im_phi_sqrt_hz\n";
  for (int j = 0; j < wp.grid().n; ++j) {
    os << format_double(wp.grid().time(j)) << ',' << format_double(wp[j].real()) << ','
       << format_double(wp[j].imag()) << '\n';
  }
}

Wavepacket read_wavepacket_csv(std::istream& is, double carrier) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("wavepacket csv: empty input");
  std::vector<double> t;
  std::vector<cplx> phi;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double a, b, c;
    char c1, c2;
    if (!(ls >> a >> c1 >> b >> c2 >> c) || c1 != ',' || c2 != ',') {
      throw std::invalid_argument("wavepacket csv: malformed row '" + line + "'");
    }
    t.push_back(a);
    phi.push_back({b, c});
  }
  if (t.size() < 2) throw std::invalid_argument("wavepacket csv: need at least two samples");
  const double dt = t[1] - t[0];
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::fabs(t[i] - t[0] - i * dt) > 1e-9 * dt) {
      throw std::invalid_argument("wavepacket csv: samples are not uniformly spaced");
    }
  }
  return Wavepacket(TimeGrid{t[0], dt, static_cast<int>(t.size())}, std::move(phi), carrier);
}

}  // namespace eoq
