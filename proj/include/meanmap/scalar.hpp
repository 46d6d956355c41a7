#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "meanmap/error.hpp"
#include "meanmap/rational.hpp"

namespace meanmap {

enum class ScalarKind { Binary64, HamelExact };

/// Customisation point describing a scalar type that means can be evaluated
/// over. Each scalar type is a vector space over `coeff_type`; weights,
/// blend coefficients and lambda values live in `coeff_type`.
///
/// Required members:
///   coeff_type, kind, exact, field
///   coeff(Rational) -> coeff_type
///   scale(S, coeff_type) -> S
///   to_double(S), from_double(double), to_string(S)
///   compare_bound(S, double) -> -1/0/+1
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  using coeff_type = double;
  static constexpr ScalarKind kind = ScalarKind::Binary64;
  static constexpr bool exact = false;
  static constexpr bool field = true;

  static double coeff(const Rational& q) { return q.to_double(); }
  static double scale(double x, double c) { return x * c; }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
  static std::string to_string(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
  static int compare_bound(double x, double bound) { return x < bound ? -1 : (x > bound ? 1 : 0); }
};

template <>
struct scalar_traits<Rational> {
  using coeff_type = Rational;
  static constexpr ScalarKind kind = ScalarKind::HamelExact;
  static constexpr bool exact = true;
  static constexpr bool field = true;

  static Rational coeff(const Rational& q) { return q; }
  static Rational scale(const Rational& x, const Rational& c) { return x * c; }
  static double to_double(const Rational& x) { return x.to_double(); }
  static Rational from_double(double x) { return Rational::from_double(x); }
  static std::string to_string(const Rational& x) { return x.to_string(); }
  static int compare_bound(const Rational& x, double bound) {
    if (std::isinf(bound)) return bound > 0 ? -1 : 1;
    const auto c = x <=> Rational::from_double(bound);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
};

template <class S>
concept Scalar = requires(const S& a, const S& b) {
  typename scalar_traits<S>::coeff_type;
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a < b } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
  { scalar_traits<S>::to_double(a) } -> std::convertible_to<double>;
};

template <Scalar S>
std::string format_scalar(const S& x) {
  return scalar_traits<S>::to_string(x);
}

template <Scalar S>
double to_double(const S& x) {
  return scalar_traits<S>::to_double(x);
}

/// Midpoint lo + (hi - lo)/2.
template <Scalar S>
S midpoint(const S& lo, const S& hi) {
  using T = scalar_traits<S>;
  return lo + T::scale(hi - lo, T::coeff(Rational(1, 2)));
}

template <Scalar S>
S min_of(std::span<const S> v) {
  return *std::min_element(v.begin(), v.end());
}

template <Scalar S>
S max_of(std::span<const S> v) {
  return *std::max_element(v.begin(), v.end());
}

template <Scalar S>
S spread_of(std::span<const S> v) {
  return max_of(v) - min_of(v);
}

/// Half-open extended-real interval description of I. Finite endpoints are
/// closed; infinite ones are open.
struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  static Interval real_line() { return {}; }
  static Interval closed(double lo, double hi) {
    const Interval i{lo, hi};
    i.validate();
    return i;
  }

  bool bounded() const { return std::isfinite(lower) && std::isfinite(upper); }

  void validate() const {
    if (std::isnan(lower) || std::isnan(upper) || !(lower < upper)) {
      throw Error(ErrorCode::DomainViolation, "interval must satisfy lower < upper", "interval");
    }
  }

  template <Scalar S>
  bool contains(const S& x) const {
    using T = scalar_traits<S>;
    return T::compare_bound(x, lower) >= 0 && T::compare_bound(x, upper) <= 0;
  }

  std::string to_string() const {
    return "[" + scalar_traits<double>::to_string(lower) + ", " + scalar_traits<double>::to_string(upper) + "]";
  }
};

struct ScalarDomain {
  ScalarKind kind = ScalarKind::Binary64;
  Interval interval{};
};

template <Scalar S>
void require_in_domain(std::span<const S> v, const Interval& interval) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!interval.contains(v[i])) {
      throw Error(ErrorCode::DomainViolation,
                  "component " + std::to_string(i) + " = " + format_scalar(v[i]) + " lies outside I = " +
                      interval.to_string(),
                  "v[" + std::to_string(i) + "]");
    }
  }
}

/// Allowed rounding slack for a raw mean value: 8 units in the last place of
/// the larger-magnitude bracket endpoint.
inline double internality_band(double lo, double hi) {
  const double scale = std::max(std::fabs(lo), std::fabs(hi));
  if (scale == 0.0) return 8.0 * std::numeric_limits<double>::denorm_min();
  return 8.0 * (std::nextafter(scale, std::numeric_limits<double>::infinity()) - scale);
}

/// How far `raw` lies outside [lo, hi], as a binary64 magnitude (0 inside).
template <Scalar S>
double internality_deviation(const S& raw, const S& lo, const S& hi) {
  if (raw < lo) return to_double(S(lo - raw));
  if (hi < raw) return to_double(S(raw - hi));
  return 0.0;
}

/// Clamp-after-assert: values inside [lo, hi] pass through; inexact values
/// within the 8-ulp band are clamped to the nearer endpoint; anything else is
/// an InternalityBreach. Exact scalars get no band at all.
template <Scalar S>
S enforce_internal(const S& raw, const S& lo, const S& hi) {
  const bool below = raw < lo;
  const bool above = hi < raw;
  if (!below && !above) return raw;
  const double dev = internality_deviation(raw, lo, hi);
  if (scalar_traits<S>::exact || !(dev <= internality_band(to_double(lo), to_double(hi)))) {
    throw Error(ErrorCode::InternalityBreach,
                "raw mean value " + format_scalar(raw) + " outside [" + format_scalar(lo) + ", " +
                    format_scalar(hi) + "]");
  }
  return below ? lo : hi;
}

}  // namespace meanmap
