#include <gtest/gtest.h>

#include <cmath>

#include "bcrate/rational.hpp"

using namespace bcrate;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("5/2"), make_rational(5, 2));
  EXPECT_EQ(parse_rational("10/4"), make_rational(5, 2));
  EXPECT_EQ(parse_rational("-3"), make_rational(-3));
  EXPECT_EQ(to_string(make_rational(5, 2)), "5/2");
  EXPECT_EQ(to_string(make_rational(4)), "4/1");
  EXPECT_EQ(to_string(make_rational(-6, 4)), "-3/2");
}

TEST(Rational, ParseRejectsGarbage) {
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("0.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
  EXPECT_THROW(parse_rational("a/b"), std::invalid_argument);
}

TEST(Rational, Decimal) {
  EXPECT_EQ(to_decimal(make_rational(7, 3)), "2.3333");
  EXPECT_EQ(to_decimal(make_rational(2, 3)), "0.6667");
  EXPECT_EQ(to_decimal(make_rational(-5, 2), 2), "-2.50");
  EXPECT_EQ(to_decimal(make_rational(3), 0), "3");
}

TEST(Rational, CommonDenominator) {
  EXPECT_EQ(common_denominator({make_rational(1, 2), make_rational(1, 3), make_rational(5, 4)}), BigInt(12));
  EXPECT_EQ(common_denominator({}), BigInt(1));
  EXPECT_EQ(inverse_power_of_two(3), make_rational(1, 8));
}

TEST(Rational, PowerEnclosure) {
  for (long n = 1; n <= 40; ++n) {
    for (long k = 1; k <= 5; ++k) {
      const Enclosure e = enclose_power(n, k - 1, k);
      const double v = std::pow(static_cast<double>(n), static_cast<double>(k - 1) / static_cast<double>(k));
      EXPECT_LE(e.lower.get_d(), v + 1e-9);
      EXPECT_GE(e.upper.get_d(), v - 1e-9);
      EXPECT_LE(e.upper - e.lower, make_rational(1, 1000000));
    }
  }
  const Enclosure exact = enclose_power(9, 1, 2);
  EXPECT_EQ(exact.lower, Rational(3));
  EXPECT_EQ(exact.upper, Rational(3));
}

TEST(Rational, LogEnclosure) {
  const Enclosure e8 = enclose_log2(Rational(8));
  EXPECT_EQ(e8.lower, Rational(3));
  EXPECT_EQ(e8.upper, Rational(3));
  const Enclosure e10 = enclose_log2(Rational(10));
  EXPECT_LT(e10.lower.get_d(), std::log2(10.0));
  EXPECT_GT(e10.upper.get_d(), std::log2(10.0));
  EXPECT_EQ(e10.upper - e10.lower, make_rational(1, 1000));
  EXPECT_THROW(enclose_log2(make_rational(1, 2)), std::invalid_argument);
}
