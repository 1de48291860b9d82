// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/estimators.hpp"

#include <json.hpp>

#include <string>

namespace lamprate {

nlohmann::json to_json(const Interval &ci);
nlohmann::json to_json(const MeanEstimate &m);
nlohmann::json to_json(const ProportionEstimate &p);
nlohmann::json to_json(const RateEstimates &r);
nlohmann::json to_json(const IdentityReport &r);
nlohmann::json to_json(const RangeLaw &r);

MeanEstimate mean_from_json(const nlohmann::json &doc);
ProportionEstimate proportion_from_json(const nlohmann::json &doc);
/// Inverse of to_json(RateEstimates); the round trip is exact.
RateEstimates rate_estimates_from_json(const nlohmann::json &doc);

/// One line of the checkpoint stream.
nlohmann::json checkpoint_record(const GroupBackend &backend, const TrajectoryRecord &record,
                                 const CheckpointRow &row);

std::string csv_header();
std::string csv_row(const std::string &name, const RateEstimates &r, const IdentityReport *identity);

} // namespace lamprate
