// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace boost {

// Boost 1.74 implements integer == rational by swapping the operands, which
// recurses forever once C++20 adds reversed candidates. These exact overloads
// take precedence over the templates.
constexpr bool operator==(const rational<std::int64_t> &a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
constexpr bool operator==(const rational<std::int64_t> &a, int b) {
  return a == static_cast<std::int64_t>(b);
}

} // namespace boost

namespace lamprate {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q", an integer, or a finite decimal such as "1.25" into an exact
/// rational. Throws ConfigError on anything else or on q <= 0.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when q == 1.
std::string format_rational(const Rational &r);

inline double to_double(const Rational &r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

} // namespace lamprate
