// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace lamprate {

/// Counter-based generator: draw k of stream (seed, trial) is
/// mix64(key + (k + 1) * golden) with key = mix64(seed ^ mix64(trial)), where
/// mix64 is the SplitMix64 finalizer. Streams for different trials are
/// independent of execution order, so parallel runs are bit-reproducible.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t trial) : key_(mix64(seed ^ mix64(trial + kGolden))) {}

  static constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, n) by rejection, exactly unbiased. n > 0.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do
      v = next();
    while (v >= limit);
    return v % n;
  }

  std::uint64_t counter() const noexcept { return counter_; }

private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

} // namespace lamprate
