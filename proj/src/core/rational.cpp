// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/rational.hpp"

#include "core/errors.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace lamprate {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  if (!text.empty() && text.front() == '+')
    text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("invalid rational '" + std::string(whole) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

} // namespace

Rational parse_rational(std::string_view raw) {
  const std::string_view text = trim(raw);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(trim(text.substr(0, slash)), raw);
    const auto den = parse_int(trim(text.substr(slash + 1)), raw);
    if (den <= 0)
      throw ConfigError("rational '" + std::string(raw) + "' needs a positive denominator");
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.empty() || frac_part.size() > 15)
      throw ConfigError("invalid decimal '" + std::string(raw) + "'");
    for (char c : frac_part)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ConfigError("invalid decimal '" + std::string(raw) + "'");
    const bool negative = !int_part.empty() && int_part.front() == '-';
    const std::int64_t whole =
        (int_part.empty() || int_part == "-" || int_part == "+") ? 0 : parse_int(int_part, raw);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i)
      scale *= 10;
    const std::int64_t frac = parse_int(frac_part, raw);
    const std::int64_t magnitude = (whole < 0 ? -whole : whole) * scale + frac;
    return Rational(negative ? -magnitude : magnitude, scale);
  }
  return Rational(parse_int(text, raw));
}

std::string format_rational(const Rational &r) {
  if (r.denominator() == 1)
    return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace lamprate
