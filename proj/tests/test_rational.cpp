#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "permorb/rational.hpp"

using permorb::Error;
using permorb::ErrorCode;
using permorb::Rational;
using permorb::RationalMod1;

TEST(Rational, ReducesAndNormalizesSign) {
  Rational r(6, -8);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(Rational(0, 5), Rational(0));
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(3, 4), Rational(-1, 4));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(1, 16) / Rational(2), Rational(1, 32));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
}

TEST(Rational, FloorAndFrac) {
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).frac(), Rational(1, 2));
  EXPECT_EQ(Rational(3).frac(), Rational(0));
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("1/16"), Rational(1, 16));
  EXPECT_EQ(Rational::parse("-14/5"), Rational(-14, 5));
  EXPECT_EQ(Rational::parse("24"), Rational(24));
  for (const char* bad : {"", "1/", "/2", "1/-2", "a", "1.5", "+1", "1/2/3"}) {
    try {
      Rational::parse(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::parse) << bad;
    }
  }
  try {
    Rational::parse("1/0");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::domain);
  }
}

TEST(Rational, OverflowIsAnError) {
  Rational big(std::numeric_limits<std::int64_t>::max());
  try {
    (void)(big + Rational(1));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::overflow);
  }
}

TEST(RationalMod1, ReducesIntoUnitInterval) {
  EXPECT_EQ(RationalMod1(Rational(17, 16)), RationalMod1(1, 16));
  EXPECT_EQ(RationalMod1(Rational(-1, 16)), RationalMod1(15, 16));
  EXPECT_EQ(-RationalMod1(1, 2), RationalMod1(1, 2));
  EXPECT_TRUE(RationalMod1(Rational(3)).is_zero());
  EXPECT_EQ(RationalMod1(3, 4) + RationalMod1(1, 2), RationalMod1(1, 4));
}

TEST(RationalMod1, GroupLawsOnRandomValues) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-200, 200), den(1, 96);
  for (int trial = 0; trial < 500; ++trial) {
    RationalMod1 a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a + (-a)).is_zero());
    EXPECT_GE(a.value(), Rational(0));
    EXPECT_LT(a.value(), Rational(1));
  }
}

TEST(RationalMod1, Phase) {
  auto z = RationalMod1(1, 4).phase();
  EXPECT_NEAR(z.real(), 0.0, 1e-15);
  EXPECT_NEAR(z.imag(), 1.0, 1e-15);
}
