#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gft/notation.hpp"
#include "support.hpp"

using namespace gft;

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(-2.0), "-2");
  EXPECT_EQ(format_number(0.1), "0.1");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = dist(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    ASSERT_EQ(parse_number(format_number(v)), v);
  }
}

TEST(ParseNumber, RejectsJunk) {
  EXPECT_EQ(parse_number("+3.5"), 3.5);
  EXPECT_EQ(parse_number("1e-3"), 1e-3);
  EXPECT_THROW(parse_number(""), ParseError);
  EXPECT_THROW(parse_number("1.0x"), ParseError);
  EXPECT_THROW(parse_number("abc"), ParseError);
}

TEST(BladeLabel, DigitAndListForms) {
  EXPECT_EQ(blade_label(BladeIndex{0}, Signature(2, 0)), "1");
  EXPECT_EQ(blade_label(BladeIndex{0b101}, Signature(3, 0)), "e13");
  EXPECT_EQ(blade_label(BladeIndex{0b1000000001}, Signature(10, 0)), "e(1,10)");
}

TEST(FormatMultivector, Layout) {
  const Signature sig(3, 0);
  Multivector a(sig);
  EXPECT_EQ(format_multivector(a), "0");
  a[0] = 0.5;
  a[0b011] = -2.0;
  a[0b100] = 1.0;
  EXPECT_EQ(format_multivector(a), "0.5 - 2*e12 + e3");
  Multivector b(sig);
  b[0b001] = -1.0;
  EXPECT_EQ(format_multivector(b), "-e1");
}

TEST(ParseMultivector, AcceptsTermForms) {
  const Signature sig(3, 1);
  const Multivector a = parse_multivector("0.5 - 2*e12 + e3 -e4+1e-3*e1234", sig);
  EXPECT_EQ(a[0], 0.5);
  EXPECT_EQ(a[0b0011], -2.0);
  EXPECT_EQ(a[0b0100], 1.0);
  EXPECT_EQ(a[0b1000], -1.0);
  EXPECT_EQ(a[0b1111], 1e-3);
  EXPECT_EQ(parse_multivector("6.2832*e12", sig)[0b0011], 6.2832);
  EXPECT_EQ(parse_multivector("e1 + e1", sig)[0b0001], 2.0);
}

TEST(ParseMultivector, RejectsBadLabels) {
  const Signature sig(2, 0);
  EXPECT_THROW(parse_multivector("e3", sig), ParseError);
  EXPECT_THROW(parse_multivector("e21", sig), ParseError);
  EXPECT_THROW(parse_multivector("e11", sig), ParseError);
  EXPECT_THROW(parse_multivector("", sig), ParseError);
  EXPECT_THROW(parse_multivector("2 e1", sig), ParseError);
  EXPECT_THROW(parse_multivector("2*", sig), ParseError);
  EXPECT_THROW(parse_multivector("e", sig), ParseError);
  EXPECT_THROW(parse_multivector("e12", Signature(10, 0)), ParseError);
  EXPECT_EQ(parse_multivector("e(1,10)", Signature(10, 0))[0b1000000001], 1.0);
}

TEST(ParseMultivector, RoundTripsRandomValues) {
  std::mt19937_64 rng(5);
  for (Signature sig : {Signature(2, 0), Signature(3, 1), Signature(0, 4), Signature(5, 5)}) {
    for (int trial = 0; trial < 100; ++trial) {
      Multivector a = gft::testing::random_multivector(sig, rng, 100.0);
      for (double& c : a.coefficients()) {
        if (rng() % 3 == 0) c = 0.0;
      }
      ASSERT_EQ(parse_multivector(format_multivector(a), sig), a) << format_multivector(a);
    }
  }
}
