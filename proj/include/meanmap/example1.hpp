#pragma once

// Continuous, weakly contractive mapping on I^3 whose first contraction time
// n0(v) is unbounded: on Lambda = {|v3-v1| >= (v2-v1)^2} the third coordinate
// halves towards v1; on 2|v3-v1| = (v2-v1)^2 and below it the point collapses
// to (v1,v1,v1); the strip in between blends the two linearly.

#include <cmath>
#include <span>
#include <type_traits>
#include <vector>

#include "meanmap/error.hpp"
#include "meanmap/mapping.hpp"
#include "meanmap/rational.hpp"
#include "meanmap/scalar.hpp"

namespace meanmap {

enum class Example1Region { Lambda, Strip, Collapse };

template <Scalar S>
Example1Region example1_region(std::span<const S> v) {
  const S d2 = v[1] - v[0];
  const S d3 = v[2] - v[0];
  const S gap = d3 < S(0) ? S(-d3) : d3;
  const S sq = d2 * d2;
  if (!(gap < sq)) return Example1Region::Lambda;
  if (sq < gap + gap) return Example1Region::Strip;
  return Example1Region::Collapse;
}

/// Raw (unwrapped) Example-1 rule; S must be a field (double or Rational).
template <Scalar S>
std::vector<S> example1_rule(std::span<const S> v) {
  static_assert(scalar_traits<S>::field, "Example 1 needs multiplication and division");
  const S& v1 = v[0];
  S half_step = v1 + (v[2] - v1) / S(2);
  if constexpr (!scalar_traits<S>::exact) {
    // No binary64 value lies strictly between v3 and a neighbour one ulp away;
    // round towards v1 so the halving cannot stall off the diagonal.
    if (half_step == v[2] && v[2] != v1) half_step = v1;
  }
  switch (example1_region(v)) {
    case Example1Region::Lambda:
      return {v1, v[1], half_step};
    case Example1Region::Strip: {
      const S d2 = v[1] - v1;
      const S d3 = v[2] - v1;
      const S gap = d3 < S(0) ? S(-d3) : d3;
      const S sq = d2 * d2;
      const S s = (gap + gap - sq) / sq;
      const S rest = S(1) - s;
      return {v1, s * v[1] + rest * v1, s * half_step + rest * v1};
    }
    case Example1Region::Collapse:
      break;
  }
  return {v1, v1, v1};
}

template <Scalar S>
MeanTypeMapping<S> example1_mapping(Interval domain = Interval::closed(0.0, 1.0)) {
  if (!domain.bounded()) {
    throw Error(ErrorCode::DomainViolation, "Example 1 needs a bounded interval (the region test is scale-sensitive)",
                "interval");
  }
  return MeanTypeMapping<S>(MappingKind::Example1, "example1", 3, domain,
                            [](std::span<const S> v) { return example1_rule<S>(v); });
}

/// Closed-form orbit of w = (x, x + 2^-i, x + 2^-i):
/// M^n(w) = (x, x + 2^-i, x + 2^-(i+n)) for n <= i+1, (x, x, x) afterwards.
template <Scalar S>
std::vector<S> example1_orbit_formula(const S& x, unsigned i, unsigned n,
                                      const Interval& domain = Interval::closed(0.0, 1.0)) {
  const auto power_of_half = [](unsigned k) -> S {
    if constexpr (std::is_same_v<S, Rational>) {
      return Rational::dyadic(1, k);
    } else {
      return std::ldexp(1.0, -static_cast<int>(k));
    }
  };
  const S top = x + power_of_half(i);
  if (!domain.contains(x) || !domain.contains(top)) {
    throw Error(ErrorCode::DomainViolation, "x and x + 2^-i must lie in I", "x");
  }
  if (n > i + 1) return {x, x, x};
  return {x, top, x + power_of_half(i + n)};
}

}  // namespace meanmap
