#include <gtest/gtest.h>

#include <cmath>

#include "meanmap/meanmap.hpp"
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

MeanExpr random_expr(prop::Gen& g, std::size_t p, int depth) {
  switch (g.integer(0, depth > 0 ? 6 : 3)) {
    case 0: return MeanExpr::power(static_cast<double>(g.integer(-3, 3)), g.weights(p));
    case 1: return MeanExpr::quasi(Generator::log(), g.weights(p));
    case 2: return MeanExpr::minimum(p);
    case 3: return MeanExpr::maximum(p);
    case 4:
      return MeanExpr::blend(BlendCoefficient::constant(Rational(g.integer(0, 8), 8)), random_expr(g, p, depth - 1),
                             random_expr(g, p, depth - 1));
    case 5: return MeanExpr::projection(p, static_cast<std::size_t>(g.integer(0, static_cast<long>(p) - 1)));
    default:
      return MeanExpr::blend(BlendCoefficient::relative_first(), random_expr(g, p, depth - 1),
                             random_expr(g, p, depth - 1));
  }
}

}  // namespace

TEST(MeanExpr, ClassicalMeansOfTwoAndEight) {
  const std::vector<double> v = {2.0, 8.0};
  EXPECT_DOUBLE_EQ(eval_mean(MeanExpr::arithmetic(2), v), 5.0);
  EXPECT_DOUBLE_EQ(eval_mean(MeanExpr::geometric(2), v), 4.0);
  EXPECT_DOUBLE_EQ(eval_mean(MeanExpr::harmonic(2), v), 3.2);
  EXPECT_EQ(eval_mean(MeanExpr::minimum(2), v), 2.0);
  EXPECT_EQ(eval_mean(MeanExpr::maximum(2), v), 8.0);
  EXPECT_EQ(eval_mean(MeanExpr::power(static_cast<double>(INFINITY), MeanExpr::equal_weights(2)), v), 8.0);
  EXPECT_DOUBLE_EQ(eval_mean(MeanExpr::power(2.0, MeanExpr::equal_weights(2)), v), std::sqrt(34.0));
  EXPECT_DOUBLE_EQ(eval_mean(MeanExpr::quasi(Generator::exp(), MeanExpr::equal_weights(2)), v),
                   std::log((std::exp(2.0) + std::exp(8.0)) / 2));
}

TEST(MeanExpr, ExactArithmeticOverRationalsAndHamel) {
  const std::vector<Rational> q = {Rational(1, 3), Rational(1, 2)};
  EXPECT_EQ(eval_mean(MeanExpr::arithmetic({Rational(1, 4), Rational(3, 4)}), q), Rational(11, 24));
  const std::vector<ExactHamel> h = {ExactHamel::surd(), ExactHamel()};
  EXPECT_EQ(eval_mean(MeanExpr::arithmetic(2), h), ExactHamel(Rational(0), Rational(1, 2)));
  EXPECT_EQ(code_of([&] { eval_mean(MeanExpr::geometric(2), q); }), ErrorCode::DomainViolation);
}

TEST(MeanExpr, ValidationErrors) {
  EXPECT_EQ(code_of([] { MeanExpr::arithmetic({Rational(1, 2), Rational(1, 3)}); }), ErrorCode::WeightSumError);
  EXPECT_EQ(code_of([] { MeanExpr::arithmetic({Rational(3, 2), Rational(-1, 2)}); }), ErrorCode::WeightSumError);
  EXPECT_EQ(code_of([] { MeanExpr::projection(2, 2); }), ErrorCode::ArityMismatch);
  EXPECT_EQ(code_of([] {
              MeanExpr::blend(BlendCoefficient::constant(Rational(1, 2)), MeanExpr::minimum(2), MeanExpr::minimum(3));
            }),
            ErrorCode::ArityMismatch);
  const std::vector<double> three = {1.0, 2.0, 3.0};
  EXPECT_EQ(code_of([&] { eval_mean(MeanExpr::arithmetic(2), three); }), ErrorCode::ArityMismatch);
  const std::vector<double> negative = {-1.0, 2.0};
  EXPECT_EQ(code_of([&] { eval_mean(MeanExpr::geometric(2), negative); }), ErrorCode::DomainViolation);
}

TEST(MeanExprProperty, InternalityAndReflexivity) {
  prop::for_all(400, [](prop::Gen& g) {
    const std::size_t p = static_cast<std::size_t>(g.integer(2, 5));
    const MeanExpr expr = random_expr(g, p, 2);
    const auto v = g.vector(p, 0.01, 100.0);
    const double m = eval_mean(expr, v);
    EXPECT_LE(min_of(std::span<const double>(v)), m);
    EXPECT_LE(m, max_of(std::span<const double>(v)));
    const double t = g.uniform(0.01, 100.0);
    const std::vector<double> diagonal(p, t);
    EXPECT_NEAR(eval_mean(expr, diagonal), t, 1e-13 * t);
  });
}

TEST(MeanExprProperty, InternalityReportFindsNoViolations) {
  prop::Gen g(prop::kSeed);
  std::vector<std::vector<double>> samples;
  for (int k = 0; k < 500; ++k) samples.push_back(g.vector(3, 1e-3, 1e3));
  const ScalarDomain domain{ScalarKind::Binary64, positive_half_line()};
  for (const double r : {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0}) {
    const auto report = internality_report(MeanExpr::power(r, MeanExpr::equal_weights(3)), domain, samples);
    EXPECT_EQ(report.samples, samples.size());
    EXPECT_EQ(report.violations, 0u) << "r=" << r;
  }
}

TEST(MeanExprProperty, PowerMeansIncreaseWithExponent) {
  prop::for_all(300, [](prop::Gen& g) {
    const auto w = g.weights(3);
    const auto v = g.vector(3, 0.1, 10.0);
    double previous = eval_mean(MeanExpr::power(-static_cast<double>(INFINITY), w), v);
    for (const double r : {-3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0, static_cast<double>(INFINITY)}) {
      const double m = eval_mean(MeanExpr::power(r, w), v);
      EXPECT_LE(previous, m * (1 + 1e-14)) << "r=" << r;
      previous = m;
    }
  });
}

TEST(MeanExprProperty, QuasiWithPowerGeneratorIsPowerMean) {
  prop::for_all(300, [](prop::Gen& g) {
    const auto w = g.weights(2);
    const auto v = g.vector(2, 0.1, 10.0);
    for (const double r : {-2.0, 0.5, 3.0}) {
      EXPECT_NEAR(eval_mean(MeanExpr::quasi(Generator::power(r), w), v), eval_mean(MeanExpr::power(r, w), v), 1e-12);
    }
    EXPECT_NEAR(eval_mean(MeanExpr::quasi(Generator::log(), w), v), eval_mean(MeanExpr::power(0.0, w), v), 1e-12);
  });
}

TEST(MeanExprProperty, StateWeightedMatchesPairStep) {
  const auto params = LambdaParams::example2();
  const AdditiveFunctional alpha;
  const auto m = MeanExpr::state_weighted(LambdaSide::M, params, alpha);
  const auto n = MeanExpr::state_weighted(LambdaSide::N, params, alpha);
  prop::for_all(200, [&](prop::Gen& g) {
    const std::vector<ExactHamel> v = {g.hamel(), g.hamel()};
    const auto step = mn_step(params, alpha, v[0], v[1]);
    EXPECT_EQ(eval_mean(m, v), step.m);
    EXPECT_EQ(eval_mean(n, v), step.n);
  });
}

TEST(Generator, InverseAndPreimage) {
  for (const auto& g : {Generator::log(), Generator::exp(), Generator::negation(), Generator::power(3.0)}) {
    for (const double x : {0.5, 1.0, 7.0}) EXPECT_NEAR(g.inverse(g.apply(x)), x, 1e-14 * x) << g.name();
  }
  const Interval pre = Generator::log().preimage(Interval::real_line());
  EXPECT_EQ(pre.lower, 0.0);
  EXPECT_TRUE(std::isinf(pre.upper));
  EXPECT_THROW(Generator::power(0.0), Error);
}
