#include <gtest/gtest.h>

#include "meanmap/meanmap.hpp"
#include "oracles.hpp"
#include "property.hpp"

using namespace meanmap;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::SchemaError;
}

std::string failed_constraint(long b, Rational c, long d, Rational kappa) {
  const auto bad = check_lambda_params(Rational(b), c, Rational(d), kappa);
  return bad ? std::string(to_string(*bad)) : "ok";
}

}  // namespace

TEST(Lambda, ValidationTable) {
  EXPECT_EQ(failed_constraint(1, Rational(4, 3), 4, Rational(1, 2)), "ok");
  EXPECT_EQ(failed_constraint(1, Rational(1), 4, Rational(1, 2)), "c>1");
  EXPECT_EQ(failed_constraint(2, Rational(3, 2), 1, Rational(1, 2)), "b<=d");
  EXPECT_EQ(failed_constraint(1, Rational(5), 4, Rational(1, 2)), "c<=2/(1-kappa)");
  EXPECT_EQ(failed_constraint(1, Rational(4, 3), 4, Rational(1)), "0<kappa<1");
  EXPECT_EQ(code_of([] { validate_lambda_params(Rational(1), Rational(1), Rational(4), Rational(1, 2)); }),
            ErrorCode::InvalidParams);
}

TEST(Lambda, ExactValuesOfDefaultFamily) {
  const auto p = LambdaParams::example2();
  EXPECT_EQ(lambda_of_alpha(p, Rational(0)), Rational(1, 4));
  EXPECT_EQ(lambda_of_alpha(p, Rational(1)), Rational(3, 8));
  EXPECT_EQ(lambda_of_alpha(p, Rational(-10)), Rational(33, 52));
  EXPECT_EQ(lambda_of_alpha(p, Rational(1000000)), Rational(3000003, 4000012));
}

TEST(LambdaProperty, StaysInProvenRange) {
  prop::for_all(300, [](prop::Gen& g) {
    const Rational kappa(g.integer(1, 9), 10);
    const Rational b = g.positive_rational(10, 5);
    const Rational one(1), two(2);
    const Rational c = two / (one + kappa);
    const Rational d = two * b / (one + kappa);
    const auto params = validate_lambda_params(b, c, d, kappa);
    for (int k = 0; k < 10; ++k) {
      const Rational lambda = lambda_of_alpha(params, g.rational(1000, 7));
      EXPECT_LE(params.lower_bound(), lambda);
      EXPECT_LE(lambda, params.upper_bound());
    }
  });
}

TEST(HamelOrbit, MatchesExactReplay) {
  const auto orbit = mn_orbit(LambdaParams::example2(), AdditiveFunctional{}, ExactHamel::surd(), ExactHamel(), 5);
  for (std::size_t k = 1; k <= 5; ++k) {
    EXPECT_EQ(orbit[k].m, ExactHamel(Rational(0), Rational::parse(oracles::kHamelOrbitSurd[k - 1][0])));
    EXPECT_EQ(orbit[k].n, ExactHamel(Rational(0), Rational::parse(oracles::kHamelOrbitSurd[k - 1][1])));
  }
}

TEST(HamelOrbitProperty, SumMirrorAndGapDecay) {
  const auto params = LambdaParams::example2();
  const AdditiveFunctional alpha;
  prop::for_all(60, [&](prop::Gen& g) {
    const auto u = g.hamel(), v = g.hamel();
    const auto check = check_hamel_exact_orbit(params, alpha, u, v, 7);
    EXPECT_TRUE(check.sum_conserved);
    EXPECT_TRUE(check.mirror);
    EXPECT_TRUE(check.gap_bound);
  });
}

TEST(HamelOrbit, BitBudgetStopsEarly) {
  const auto orbit = mn_orbit_within(LambdaParams::example2(), AdditiveFunctional{}, ExactHamel::surd(), ExactHamel(),
                                     40, 1000);
  EXPECT_FALSE(orbit.complete);
  EXPECT_LT(orbit.pairs.size(), 41u);
}

TEST(HamelImage, CompoundIsArithmeticMean) {
  prop::for_all(100, [](prop::Gen& g) {
    const auto u = to_image(g.hamel()), v = to_image(g.hamel());
    const auto r = compound_mean(hamel_mn<HamelImage>(), {u, v});
    ASSERT_TRUE(r.converged());
    EXPECT_NEAR(r.value.value(), (u.value() + v.value()) / 2, 1e-11);
  });
}
