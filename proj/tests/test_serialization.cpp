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

#include <sstream>

#include "eoq/serialization.hpp"

using namespace eoq;

TEST_CASE("state JSON round trip") {
  TwoPortState s;
  s.add({{1, 7, 2}}, cplx{0.1, -0.3});
  s.add({{1, 6, 1}, {2, 9, 1}}, cplx{-1.0 / 3.0, 0.25});
  s.add({}, 0.5);
  const auto j = to_json(s);
  const auto back = state_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.size() == s.size());
  for (const auto& [k, a] : s.terms()) CHECK(back.amplitude(k) == a);
  CHECK_THROWS(state_from_json(nlohmann::json::parse(R"({"terms":[{"key":[{"port":3,"mode":1,"n":1}],"re":1,"im":0}]})")));
}

TEST_CASE("wavepacket JSON round trip") {
  const auto wp = gaussian_packet(TimeGrid{-4.0, 0.0625, 128}, 0.3, 0.9, 1.7, 12.5);
  const auto back = wavepacket_from_json(nlohmann::json::parse(to_json(wp).dump()));
  CHECK(back.grid() == wp.grid());
  CHECK(back.carrier() == wp.carrier());
  CHECK(back.samples() == wp.samples());
}

TEST_CASE("wavepacket CSV round trip") {
  const auto wp = gaussian_packet(TimeGrid{0.0, 0.1, 64}, 3.2, 0.7, -0.4);
  std::stringstream ss;
  write_csv(ss, wp);
  const std::string text = ss.str();
  CHECK(text.rfind("t_s,re_phi_sqrt_hz,im_phi_sqrt_hz\n", 0) == 0);
  const auto back = read_wavepacket_csv(ss);
  CHECK(back.grid().n == 64);
  CHECK(back.grid().dt == Catch::Approx(0.1).epsilon(1e-14));
  CHECK(back.samples() == wp.samples());
  std::stringstream again;
  write_csv(again, back);
  CHECK(again.str() == text);
}

TEST_CASE("CSV reader rejects malformed input") {
  std::stringstream bad("t_s,re_phi_sqrt_hz,im_phi_sqrt_hz\n0,1,0\n0.1,1\n");
  CHECK_THROWS_AS(read_wavepacket_csv(bad), std::invalid_argument);
  std::stringstream uneven("t_s,re_phi_sqrt_hz,im_phi_sqrt_hz\n0,1,0\n0.1,1,0\n0.3,1,0\n0.4,1,0\n");
  CHECK_THROWS_AS(read_wavepacket_csv(uneven), std::invalid_argument);
}

TEST_CASE("doubles round trip through text") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
