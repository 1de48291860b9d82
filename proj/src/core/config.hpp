// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/group.hpp"
#include "core/tsp.hpp"
#include "core/walk.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lamprate {

struct BackendSpec {
  BackendKind kind = BackendKind::kFreeGroup;
  std::size_t rank = 0;                  ///< lattice free rank
  std::vector<Coord> torsion;            ///< lattice torsion moduli
  std::vector<GeneratorInput> generators; ///< lattice generators
  std::vector<Rational> lengths;          ///< word backends: one length per letter
};

struct MuAtomSpec {
  std::string element;
  Rational probability;
};

struct LampSpec {
  std::string element;
  LampState state = 1;
};

struct CustomAtomSpec {
  std::vector<LampSpec> lamps;
  std::string position;
  Rational probability;
};

struct MeasureSpec {
  MeasureKind type = MeasureKind::kWalkSwitch;
  std::vector<MuAtomSpec> mu0; ///< empty: uniform on S
  Rational p_switch{1, 2};
  std::vector<CustomAtomSpec> atoms;
};

struct OutputSpec {
  std::string results;     ///< results document (JSON)
  std::string checkpoints; ///< line-delimited checkpoint records
  std::string csv;         ///< one summary row with header
};

/// One simulate experiment. Rationals are written as "p/q" strings.
struct RunConfig {
  std::string name = "experiment";
  BackendSpec backend;
  MeasureSpec measure;
  LampState modulus = 2;
  Rational lamp_cost{0};
  std::uint64_t horizon = 1000;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> checkpoints; ///< empty: geometric default
  TspStrategy tsp = TspStrategy::kAuto;
  std::size_t dp_cap = kDefaultDpCap;
  std::size_t jobs = 1;
  std::size_t projection_trials = 0; ///< Walk-Switch identity check; 0 = max(trials, 2000)
  OutputSpec output;
};

/// Strict parsing: unknown keys and malformed values raise ConfigError naming
/// the offending field.
BackendSpec parse_backend_spec(const nlohmann::json &doc, const std::string &where = "backend");
RunConfig parse_run_config(const nlohmann::json &doc);
/// Parses JSON text; syntax errors carry line and column.
nlohmann::json parse_json_text(std::string_view text);

nlohmann::json to_json(const BackendSpec &spec);
nlohmann::json to_json(const RunConfig &config);

BackendPtr build_backend(const BackendSpec &spec);
StepMeasure build_measure(const RunConfig &config, const BackendPtr &backend);

} // namespace lamprate
