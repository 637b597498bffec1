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

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "eoq/mode_space.hpp"
#include "eoq/wavepacket.hpp"

namespace eoq {

/// {"terms": [{"key": [{"port", "mode", "n"}...], "re", "im"}...]}
nlohmann::json to_json(const TwoPortState& s);
TwoPortState state_from_json(const nlohmann::json& j);

/// {"t0", "dt", "n", "carrier", "re": [...], "im": [...]}
nlohmann::json to_json(const Wavepacket& wp);
Wavepacket wavepacket_from_json(const nlohmann::json& j);

/// Header "t_s,re_phi_sqrt_hz,im_phi_sqrt_hz", one row per sample.
void write_csv(std::ostream& os, const Wavepacket& wp);
/// Reads the CSV written above; the grid must be uniform.
Wavepacket read_wavepacket_csv(std::istream& is, double carrier = 0.0);

/// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_double(double v);

}  // namespace eoq
