// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace lamprate {

/// Base of every error raised by the core. The C API maps each subclass to a
/// distinct status code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Caller misused an operation (mismatched backend, wrong backend kind, ...).
class UsageError : public Error {
public:
  using Error::Error;
};

/// A bounded search or exact solver hit its configured cap. Never silently
/// truncated.
class CapExceededError : public Error {
public:
  using Error::Error;
};

/// Malformed configuration or instance document.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A case-analysis hypothesis does not hold on the given configuration.
class HypothesisError : public Error {
public:
  using Error::Error;
};

} // namespace lamprate
