// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/config.hpp"
#include "core/estimators.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lamprate {

/// level: 0 = info, 1 = debug.
using LogFn = std::function<void(int level, const std::string &message)>;

struct SimulationRun {
  RateEstimates rates;
  std::optional<IdentityReport> identity;
  RangeLaw range;
  nlohmann::json results;
  std::vector<std::string> checkpoint_lines;
  std::string csv; ///< header line and one row
};

SimulationRun run_simulation(const RunConfig &config, const LogFn &log = {});

struct VerifyOptions {
  std::size_t assignments = 100;
  std::uint64_t seed = 1;
  bool fault_injection = false; ///< scales l(sigma_3) by 3 inside the printed bounds
};

struct VerifyRun {
  bool passed = true;
  nlohmann::json report;
  std::string text;
};

VerifyRun run_verify_lemmas(const VerifyOptions &options, const LogFn &log = {});

struct TspRun {
  TspResult result;
  nlohmann::json report;
  std::string text;
  std::optional<bool> oracle_agrees; ///< set when the brute-force check ran
};

/// Instance document: {"backend": {...}, "support": [...], "target": "..."}.
TspRun run_tsp_instance(const nlohmann::json &instance, TspStrategy strategy, std::size_t cap, bool check);

} // namespace lamprate
