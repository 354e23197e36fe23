#include <gtest/gtest.h>

#include <unordered_set>

#include "ordlab/error.hpp"
#include "ordlab/rational.hpp"

namespace ordlab {
namespace {

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(Rational::parse("2/4"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-3/6").str(), "-1/2");
  EXPECT_EQ(Rational::parse("7").str(), "7");
  EXPECT_EQ(Rational::parse(" 4/2 ").str(), "2");
  EXPECT_EQ(Rational(3, -9), Rational(-1, 3));
}

TEST(Rational, RejectsDecimalsAndJunk) {
  for (const char* bad : {"0.5", "1e-6", "x", "1/0", "", "1/2/3", "/2"}) {
    EXPECT_THROW(Rational::parse(bad), Error) << bad;
  }
}

TEST(Rational, ExactArithmetic) {
  Rational third(1, 3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_EQ(Rational(1, 10) * 3 - Rational(3, 10), Rational(0));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_EQ(-Rational(1, 2), Rational(-1, 2));
  EXPECT_EQ(pow(Rational(2, 3), 3), Rational(8, 27));
  EXPECT_EQ(inverse_power_of_ten(6), Rational(1, 1000000));
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, OrderingAndPredicates) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(Rational(-2, 5).sign(), -1);
  EXPECT_TRUE(Rational(0).is_zero());
  EXPECT_TRUE(Rational(6, 3).is_integer());
  EXPECT_EQ(Rational(-2, 5).abs(), Rational(2, 5));
  EXPECT_TRUE(Rational(6, 4).numerator() == 3);
  EXPECT_TRUE(Rational(6, 4).denominator() == 2);
}

TEST(Rational, HashAgreesWithEquality) {
  std::unordered_set<Rational, RationalHash> set{Rational(1, 2), Rational(2, 4), Rational(3, 4)};
  EXPECT_EQ(set.size(), 2u);
}

}  // namespace
}  // namespace ordlab
