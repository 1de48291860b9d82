// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/presets.hpp"

#include "core/errors.hpp"

#include <array>
#include <utility>

namespace lamprate {

namespace {

constexpr std::string_view kF2WalkSwitch = R"json({
  "name": "f2-walk-switch",
  "backend": {"kind": "free-group", "lengths": ["1", "1"]},
  "measure": {"type": "walk-switch", "mu0": "simple"},
  "lamp_modulus": 2,
  "lamp_cost": "0",
  "horizon": 2000,
  "trials": 400,
  "seed": 20260101,
  "checkpoints": "geometric",
  "tsp": {"mode": "auto", "cap": 18},
  "projection_trials": 20000
})json";

// mu(0, s) = mu(1_0, s) = p/6 for s > 0 and (1 - p)/6 for s < 0, p = 3/4.
constexpr std::string_view kZCounterexample = R"json({
  "name": "z-counterexample-p075",
  "backend": {
    "kind": "lattice", "rank": 1,
    "generators": [
      {"action": "1", "length": "1"},
      {"action": "2", "length": "3"},
      {"action": "3", "length": "5"}
    ]
  },
  "measure": {
    "type": "custom",
    "atoms": [
      {"lamps": [], "position": "1", "p": "1/8"},
      {"lamps": [["0", 1]], "position": "1", "p": "1/8"},
      {"lamps": [], "position": "2", "p": "1/8"},
      {"lamps": [["0", 1]], "position": "2", "p": "1/8"},
      {"lamps": [], "position": "3", "p": "1/8"},
      {"lamps": [["0", 1]], "position": "3", "p": "1/8"},
      {"lamps": [], "position": "-1", "p": "1/24"},
      {"lamps": [["0", 1]], "position": "-1", "p": "1/24"},
      {"lamps": [], "position": "-2", "p": "1/24"},
      {"lamps": [["0", 1]], "position": "-2", "p": "1/24"},
      {"lamps": [], "position": "-3", "p": "1/24"},
      {"lamps": [["0", 1]], "position": "-3", "p": "1/24"}
    ]
  },
  "lamp_modulus": 2,
  "lamp_cost": "0",
  "horizon": 10000,
  "trials": 200,
  "seed": 20260102,
  "checkpoints": "geometric",
  "tsp": {"mode": "auto", "cap": 18}
})json";

constexpr std::string_view kZSrw = R"json({
  "name": "z-srw-walk-switch",
  "backend": {"kind": "lattice", "rank": 1, "generators": [{"action": "1", "length": "1"}]},
  "measure": {"type": "walk-switch", "mu0": "simple"},
  "lamp_modulus": 2,
  "lamp_cost": "0",
  "horizon": 10000,
  "trials": 100,
  "seed": 20260103,
  "checkpoints": "geometric",
  "tsp": {"mode": "auto", "cap": 18},
  "projection_trials": 2000
})json";

constexpr std::string_view kZ3 = R"json({
  "name": "z3-walk-switch",
  "backend": {
    "kind": "lattice", "rank": 3,
    "generators": [
      {"action": "(1,0,0)", "length": "1"},
      {"action": "(0,1,0)", "length": "1"},
      {"action": "(0,0,1)", "length": "1"}
    ]
  },
  "measure": {"type": "walk-switch", "mu0": "simple"},
  "lamp_modulus": 2,
  "lamp_cost": "0",
  "horizon": 2000,
  "trials": 100,
  "seed": 20260104,
  "checkpoints": "geometric",
  "tsp": {"mode": "none"},
  "projection_trials": 4000
})json";

constexpr std::string_view kZ2Z2 = R"json({
  "name": "z2z2-walk-switch",
  "backend": {"kind": "free-product-c2", "lengths": ["1", "1"]},
  "measure": {"type": "walk-switch", "mu0": "simple"},
  "lamp_modulus": 2,
  "lamp_cost": "0",
  "horizon": 4000,
  "trials": 100,
  "seed": 20260105,
  "checkpoints": "geometric",
  "tsp": {"mode": "auto", "cap": 18},
  "projection_trials": 2000
})json";

constexpr std::string_view kZWeighted = R"json({
  "name": "z-weighted-walk-switch",
  "backend": {
    "kind": "lattice", "rank": 1,
    "generators": [
      {"action": "1", "length": "1"},
      {"action": "2", "length": "3/2"}
    ]
  },
  "measure": {
    "type": "walk-switch",
    "mu0": [
      {"element": "1", "p": "1/2"},
      {"element": "-1", "p": "1/6"},
      {"element": "2", "p": "1/4"},
      {"element": "-2", "p": "1/12"}
    ]
  },
  "lamp_modulus": 2,
  "lamp_cost": "1/2",
  "horizon": 1000,
  "trials": 100,
  "seed": 20260106,
  "checkpoints": "geometric",
  "tsp": {"mode": "auto", "cap": 14}
})json";

constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kPresets{{
    {"f2-walk-switch", kF2WalkSwitch},
    {"z-counterexample-p075", kZCounterexample},
    {"z-srw-walk-switch", kZSrw},
    {"z3-walk-switch", kZ3},
    {"z2z2-walk-switch", kZ2Z2},
    {"z-weighted-walk-switch", kZWeighted},
}};

} // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto &[name, _] : kPresets)
    out.emplace_back(name);
  return out;
}

std::string_view preset_text(std::string_view name) {
  for (const auto &[n, text] : kPresets)
    if (n == name)
      return text;
  std::string known;
  for (const auto &[n, _] : kPresets)
    known += (known.empty() ? "" : ", ") + std::string(n);
  throw ConfigError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

RunConfig preset_config(std::string_view name) { return parse_run_config(parse_json_text(preset_text(name))); }

} // namespace lamprate
