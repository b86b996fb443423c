#include <gtest/gtest.h>

#include "rspdc/format.hpp"
#include "rspdc/grid.hpp"

using namespace rspdc;

TEST(Format, FixedTwelveSignificantDigits) {
  EXPECT_EQ(format_fixed12(1.0), "1.00000000000E+00");
  EXPECT_EQ(format_fixed12(-0.000123456789012345), "-1.23456789012E-04");
  EXPECT_EQ(round12(1.23456789012345), 1.23456789012);
  EXPECT_EQ(round12(0.0), 0.0);
}

TEST(Format, Fnv1a) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(digest_hex("a"), "af63dc4c8601ec8c");
}

TEST(Grid, LinspaceAndTrapezoid) {
  const auto a = UniformAxis::linspace(1.0, 2.0, 11);
  EXPECT_DOUBLE_EQ(a.step, 0.1);
  EXPECT_DOUBLE_EQ(a.back(), 2.0);
  const auto w = trapezoid_weights(a);
  double s = 0.0;
  for (double x : w) s += x;
  EXPECT_NEAR(s, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(w.front(), 0.05);
}
