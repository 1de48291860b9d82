// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/errors.hpp"
#include "core/rational.hpp"

#include <gtest/gtest.h>

namespace lamprate {
namespace {

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
  EXPECT_EQ(parse_rational(" 1/3 "), Rational(1, 3));
}

TEST(Rational, RejectsMalformedText) {
  for (const char *bad : {"", "1/0", "1/-2", "abc", "1/2/3", "1e3", "0x10"})
    EXPECT_THROW(parse_rational(bad), ConfigError) << bad;
}

TEST(Rational, FormatsCanonically) {
  EXPECT_EQ(format_rational(Rational(2, 4)), "1/2");
  EXPECT_EQ(format_rational(Rational(3)), "3");
  EXPECT_EQ(format_rational(Rational(-3, 9)), "-1/3");
  EXPECT_EQ(parse_rational(format_rational(Rational(-7, 12))), Rational(-7, 12));
}

TEST(Rational, MixedComparisonsTerminate) {
  const Rational half(1, 2), one(1);
  EXPECT_FALSE(half == 1);
  EXPECT_TRUE(one == 1);
  EXPECT_TRUE(1 == one);
  EXPECT_TRUE(half != 1);
  EXPECT_TRUE(0 != half);
  EXPECT_TRUE(half < 1);
  EXPECT_TRUE(half > 0);
  EXPECT_DOUBLE_EQ(to_double(Rational(3, 8)), 0.375);
}

} // namespace
} // namespace lamprate
