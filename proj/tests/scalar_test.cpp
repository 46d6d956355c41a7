#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "meanmap/meanmap.hpp"
#include "property.hpp"

using namespace meanmap;

TEST(Rational, ParsesAndNormalises) {
  EXPECT_EQ(Rational::parse("6/8"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("-3"), Rational(-3));
  EXPECT_EQ(Rational::parse("3/8").to_string(), "3/8");
  EXPECT_EQ(Rational(4, 2).to_string(), "2");
  EXPECT_THROW(Rational::parse("1/0"), Error);
  EXPECT_THROW(Rational::parse("abc"), Error);
  EXPECT_THROW(Rational::parse("1/-2"), Error);
}

TEST(Rational, FromDoubleIsExact) {
  EXPECT_EQ(Rational::from_double(0.25), Rational(1, 4));
  EXPECT_EQ(Rational::from_double(0.1).to_double(), 0.1);
  EXPECT_EQ(Rational::dyadic(3, 5), Rational(3, 32));
  EXPECT_THROW(Rational::from_double(std::numeric_limits<double>::infinity()), Error);
}

TEST(Rational, FieldAxiomsHoldExactly) {
  prop::for_all(300, [](prop::Gen& g) {
    const Rational a = g.rational(), b = g.rational(), c = g.rational();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
  });
}

TEST(Hamel, SquareFreeCheck) {
  EXPECT_TRUE(is_square_free(2));
  EXPECT_TRUE(is_square_free(6));
  EXPECT_FALSE(is_square_free(8));
  EXPECT_FALSE(is_square_free(1));
  EXPECT_THROW(ExactHamel(Rational(1), Rational(1), 4), Error);
}

TEST(Hamel, TextRoundTrip) {
  const auto x = parse_hamel("1/2+3/4*sqrt(2)");
  EXPECT_EQ(x.q0(), Rational(1, 2));
  EXPECT_EQ(x.q1(), Rational(3, 4));
  EXPECT_EQ(x.to_string(), "1/2 + 3/4*sqrt(2)");
  EXPECT_EQ(parse_hamel(x.to_string()), x);
  const auto y = parse_hamel("1-sqrt(2)");
  EXPECT_EQ(y.q1(), Rational(-1));
  EXPECT_EQ(parse_hamel(y.to_string()), y);
  EXPECT_EQ(parse_hamel("sqrt(3)").d(), 3);
  EXPECT_THROW(parse_hamel("1+sqrt(4)"), Error);
}

TEST(Hamel, ExactSignAgreesWithHighPrecisionImage) {
  // Near-cancelling pairs: 99/70 and 140/99 bracket sqrt 2 tightly.
  EXPECT_EQ(hamel_sign(ExactHamel(Rational(-99, 70), Rational(1))), -1);
  EXPECT_EQ(hamel_sign(ExactHamel(Rational(-140, 99), Rational(1))), 1);
  EXPECT_EQ(hamel_sign(ExactHamel(Rational(-665857, 470832), Rational(1))), -1);
  EXPECT_EQ(hamel_sign(ExactHamel()), 0);
  prop::for_all(500, [](prop::Gen& g) {
    const auto x = g.hamel();
    const double image = x.q0().to_double() + x.q1().to_double() * std::sqrt(2.0);
    if (std::fabs(image) > 1e-9) EXPECT_EQ(hamel_sign(x), image > 0 ? 1 : -1) << x.to_string();
  });
}

TEST(Hamel, OrderIsTotalAndCompatibleWithAddition) {
  prop::for_all(300, [](prop::Gen& g) {
    const auto a = g.hamel(), b = g.hamel(), c = g.hamel();
    EXPECT_EQ(a < b, !(b < a) && !(a == b));
    EXPECT_EQ(a < b, a + c < b + c);
  });
}

TEST(Hamel, ValueIsAccurate) {
  const ExactHamel x(Rational(-665857, 470832), Rational(1));
  const double truth = -1.59486e-12;  // sqrt 2 - 665857/470832
  EXPECT_NEAR(x.value(), truth, 1e-16);
  EXPECT_NEAR(ExactHamel::surd().value(), std::sqrt(2.0), 0.0);
}

TEST(AdditiveFunctional, IsAdditiveButNotLinear) {
  const AdditiveFunctional alpha;
  prop::for_all(300, [&](prop::Gen& g) {
    const auto x = g.hamel(), y = g.hamel();
    const Rational q = g.rational();
    EXPECT_EQ(alpha(x + y), alpha(x) + alpha(y));
    EXPECT_EQ(alpha(x.scaled(q)), q * alpha(x));
  });
  // alpha(1) = 0 but alpha(sqrt 2) = 1: no real c has alpha(x) = c x on both.
  EXPECT_EQ(alpha(ExactHamel::rational(Rational(1))), Rational(0));
  EXPECT_EQ(alpha(ExactHamel::surd()), Rational(1));
}

TEST(AdditiveFunctional, RejectsRealLinearCoefficients) {
  EXPECT_NO_THROW(AdditiveFunctional(Rational(1), Rational(1), 2));
  EXPECT_THROW(AdditiveFunctional(Rational(0), Rational(0), 2), Error);
}

TEST(Scalar, Helpers) {
  const std::vector<double> v = {3.0, -1.0, 2.0};
  EXPECT_EQ(min_of(std::span<const double>(v)), -1.0);
  EXPECT_EQ(max_of(std::span<const double>(v)), 3.0);
  EXPECT_EQ(spread_of(std::span<const double>(v)), 4.0);
  EXPECT_EQ(format_scalar(0.1), "0.10000000000000001");
  EXPECT_EQ(format_scalar(Rational(3, 8)), "3/8");
}

TEST(Scalar, IntervalValidation) {
  EXPECT_THROW(Interval::closed(1.0, 0.0), Error);
  EXPECT_TRUE(Interval::closed(0.0, 1.0).contains(1.0));
  EXPECT_FALSE(Interval::closed(0.0, 1.0).contains(1.5));
  EXPECT_TRUE(Interval::real_line().contains(Rational(-7)));
}

TEST(Scalar, InternalityBandClampsRoundingOnly) {
  const double above = std::nextafter(1.0, 2.0);
  EXPECT_EQ(enforce_internal(above, 1.0, 1.0), 1.0);
  try {
    enforce_internal(1.5, 1.0, 1.0);
    FAIL() << "expected InternalityBreach";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InternalityBreach);
  }
  EXPECT_THROW(enforce_internal(Rational(2), Rational(0), Rational(1)), Error);
}
