// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/config.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lamprate {

std::vector<std::string> preset_names();

/// The embedded configuration text. Throws ConfigError for unknown names.
std::string_view preset_text(std::string_view name);

RunConfig preset_config(std::string_view name);

} // namespace lamprate
