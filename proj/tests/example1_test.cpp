#include <gtest/gtest.h>

#include "meanmap/meanmap.hpp"
#include "oracles.hpp"
#include "property.hpp"

using namespace meanmap;

namespace {

std::vector<Rational> parse3(const std::array<const char*, 3>& text) {
  return {Rational::parse(text[0]), Rational::parse(text[1]), Rational::parse(text[2])};
}

}  // namespace

TEST(Example1, RegionsOfSamplePoints) {
  const auto region = [](double a, double b, double c) {
    const std::vector<double> v = {a, b, c};
    return example1_region(std::span<const double>(v));
  };
  EXPECT_EQ(region(0, 0.5, 0.25), Example1Region::Lambda);      // 1/4 >= 1/4
  EXPECT_EQ(region(0, 0.5, 0.2), Example1Region::Strip);        // 1/8 < 1/5 < 1/4
  EXPECT_EQ(region(0, 0.5, 0.125), Example1Region::Collapse);   // on the surface
  EXPECT_EQ(region(0, 0.5, -0.0), Example1Region::Collapse);
}

TEST(Example1, MatchesExactReplays) {
  const auto mapping = example1_mapping<Rational>();
  for (const auto& replay : oracles::kExample1Replays) {
    auto v = parse3(replay.start);
    for (const auto& expected : replay.iterates) {
      v = mapping(v);
      EXPECT_EQ(v, parse3(expected));
    }
  }
}

TEST(Example1, ClosedFormOrbitForEveryDepth) {
  for (unsigned i = 1; i <= 20; ++i) {
    for (const Rational& x : {Rational(0), Rational(1, 2)}) {
      const auto mapping = example1_mapping<Rational>();
      auto v = example1_orbit_formula<Rational>(x, i, 0);
      for (unsigned n = 1; n <= i + 3; ++n) {
        v = mapping(v);
        ASSERT_EQ(v, example1_orbit_formula<Rational>(x, i, n)) << "i=" << i << " n=" << n;
      }
      const auto probe = weak_contractivity_probe(mapping, example1_orbit_formula<Rational>(x, i, 0), 100);
      ASSERT_TRUE(probe.found());
      EXPECT_EQ(*probe.n0, i + 2);
    }
  }
}

TEST(Example1, Binary64AgreesWithRationalOnDyadics) {
  for (unsigned i = 1; i <= 20; ++i) {
    auto q = example1_orbit_formula<Rational>(Rational(1, 2), i, 0);
    auto d = example1_orbit_formula<double>(0.5, i, 0);
    for (unsigned n = 1; n <= i + 3; ++n) {
      q = example1_mapping<Rational>()(q);
      d = example1_mapping<double>()(d);
      for (int k = 0; k < 3; ++k) ASSERT_EQ(d[k], q[k].to_double()) << "i=" << i << " n=" << n;
    }
  }
}

TEST(Example1Property, ProbeBoundAndConvergence) {
  prop::for_all(300, [](prop::Gen& g) {
    auto v = g.vector(3, 0.0, 1.0);
    if (v[0] == v[1] && v[1] == v[2]) return;
    const auto mapping = example1_mapping<double>();
    const auto r = compound_mean(mapping, v);
    EXPECT_TRUE(r.converged());
    EXPECT_EQ(r.value, v[0]) << "the first coordinate never moves";
  });
}

TEST(Example1, RejectsUnboundedDomain) {
  EXPECT_THROW(example1_mapping<double>(Interval::real_line()), Error);
  EXPECT_THROW(example1_orbit_formula<Rational>(Rational(1), 1, 0), Error);
}
