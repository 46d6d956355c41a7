#pragma once

// Exact arithmetic on the Q-span of {1, sqrt(d)} and the lambda_alpha mean
// family built from a Q-linear (but not R-linear) additive functional on it.

#include <cctype>
#include <cmath>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "meanmap/error.hpp"
#include "meanmap/rational.hpp"
#include "meanmap/scalar.hpp"

namespace meanmap {

inline constexpr long kDefaultSurd = 2;

inline bool is_square_free(long d) {
  if (d < 2) return false;
  for (long f = 2; f * f <= d; ++f) {
    if (d % (f * f) == 0) return false;
  }
  return true;
}

inline void require_square_free(long d) {
  if (!is_square_free(d)) {
    throw Error(ErrorCode::DomainViolation, "surd radicand " + std::to_string(d) + " must be square-free and >= 2",
                "d");
  }
}

/// q0 + q1*sqrt(d) with coefficients in C. C = Rational gives the exact
/// representation; C = double gives its binary64 "float image", ordered by
/// the value q0 + q1*sqrt(d).
template <class C>
class HamelNumber {
 public:
  HamelNumber() = default;
  HamelNumber(C q0, C q1, long d = kDefaultSurd) : q0_(std::move(q0)), q1_(std::move(q1)), d_(d) {
    require_square_free(d);
  }

  static HamelNumber rational(C q0, long d = kDefaultSurd) { return HamelNumber(std::move(q0), C(0), d); }
  static HamelNumber surd(long d = kDefaultSurd) { return HamelNumber(C(0), C(1), d); }

  const C& q0() const { return q0_; }
  const C& q1() const { return q1_; }
  long d() const { return d_; }

  double value() const {
    if constexpr (std::is_same_v<C, Rational>) {
      // Evaluate near cancellation through the conjugate so the image keeps
      // relative accuracy: q0 + q1 r = (q0^2 - d q1^2) / (q0 - q1 r).
      const double r = std::sqrt(static_cast<double>(d_));
      const double a = q0_.to_double();
      const double b = q1_.to_double() * r;
      if (a != 0.0 && b != 0.0 && (a > 0) != (b > 0)) {
        const Rational norm = q0_ * q0_ - Rational(d_) * q1_ * q1_;
        return norm.to_double() / (a - b);
      }
      return a + b;
    } else {
      return std::fma(q1_, std::sqrt(static_cast<double>(d_)), q0_);
    }
  }

  /// Exact for C = Rational: compares q0^2 with d*q1^2 when the signs of the
  /// two coefficients disagree.
  int sign() const {
    if constexpr (std::is_same_v<C, Rational>) {
      const int s0 = q0_.sign();
      const int s1 = q1_.sign();
      if (s1 == 0) return s0;
      if (s0 == 0 || s0 == s1) return s1;
      const auto c = q0_ * q0_ <=> Rational(d_) * q1_ * q1_;
      if (c > 0) return s0;
      if (c < 0) return s1;
      return 0;  // unreachable for square-free d
    } else {
      const double x = value();
      return x > 0 ? 1 : (x < 0 ? -1 : 0);
    }
  }

  HamelNumber scaled(const C& c) const { return make(q0_ * c, q1_ * c, d_); }

  HamelNumber operator-() const { return make(-q0_, -q1_, d_); }
  friend HamelNumber operator+(const HamelNumber& a, const HamelNumber& b) {
    return make(a.q0_ + b.q0_, a.q1_ + b.q1_, common_surd(a, b));
  }
  friend HamelNumber operator-(const HamelNumber& a, const HamelNumber& b) {
    return make(a.q0_ - b.q0_, a.q1_ - b.q1_, common_surd(a, b));
  }

  /// Representation equality; unique for C = Rational because 1 and sqrt(d)
  /// are linearly independent over Q.
  friend bool operator==(const HamelNumber& a, const HamelNumber& b) {
    return a.q0_ == b.q0_ && a.q1_ == b.q1_ && (a.d_ == b.d_ || a.q1_ == C(0));
  }
  friend bool operator<(const HamelNumber& a, const HamelNumber& b) { return (a - b).sign() < 0; }
  friend bool operator>(const HamelNumber& a, const HamelNumber& b) { return b < a; }
  friend bool operator<=(const HamelNumber& a, const HamelNumber& b) { return !(b < a); }
  friend bool operator>=(const HamelNumber& a, const HamelNumber& b) { return !(a < b); }

  std::string to_string() const {
    const auto text = [](const C& c) {
      if constexpr (std::is_same_v<C, Rational>) {
        return c.to_string();
      } else {
        return scalar_traits<double>::to_string(c);
      }
    };
    const bool negative = q1_ < C(0);
    return text(q0_) + (negative ? " - " : " + ") + text(negative ? C(-q1_) : q1_) + "*sqrt(" + std::to_string(d_) +
           ")";
  }

 private:
  static HamelNumber make(C q0, C q1, long d) {
    HamelNumber h;
    h.q0_ = std::move(q0);
    h.q1_ = std::move(q1);
    h.d_ = d;
    return h;
  }
  static long common_surd(const HamelNumber& a, const HamelNumber& b) {
    if (a.d_ == b.d_) return a.d_;
    if (a.q1_ == C(0)) return b.d_;
    if (b.q1_ == C(0)) return a.d_;
    throw Error(ErrorCode::DomainViolation,
                "mixing sqrt(" + std::to_string(a.d_) + ") and sqrt(" + std::to_string(b.d_) + ") spans");
  }

  C q0_{0};
  C q1_{0};
  long d_ = kDefaultSurd;
};

using ExactHamel = HamelNumber<Rational>;
using HamelImage = HamelNumber<double>;

inline int hamel_sign(const ExactHamel& x) { return x.sign(); }

template <class C>
HamelNumber<C> abs(const HamelNumber<C>& x) {
  return x.sign() < 0 ? -x : x;
}

template <class C>
struct scalar_traits<HamelNumber<C>> {
  using coeff_type = C;
  static constexpr bool exact = std::is_same_v<C, Rational>;
  static constexpr ScalarKind kind = exact ? ScalarKind::HamelExact : ScalarKind::Binary64;
  static constexpr bool field = false;

  static C coeff(const Rational& q) { return scalar_traits<C>::coeff(q); }
  static HamelNumber<C> scale(const HamelNumber<C>& x, const C& c) { return x.scaled(c); }
  static double to_double(const HamelNumber<C>& x) { return x.value(); }
  static HamelNumber<C> from_double(double x) {
    return HamelNumber<C>::rational(scalar_traits<C>::from_double(x));
  }
  static std::string to_string(const HamelNumber<C>& x) { return x.to_string(); }
  static int compare_bound(const HamelNumber<C>& x, double bound) {
    if (std::isinf(bound)) return bound > 0 ? -1 : 1;
    return (x - from_double(bound)).sign();
  }
};

/// Converts the exact representation to its float image.
inline HamelImage to_image(const ExactHamel& x) {
  return HamelImage(x.q0().to_double(), x.q1().to_double(), x.d());
}

/// Parses "q0 + q1*sqrt(d)". Terms may appear in any order and either may be
/// omitted: "sqrt(2)", "-3/4*sqrt(2)", "1/2", "1/2 - sqrt(2)".
inline ExactHamel parse_hamel(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw Error(ErrorCode::DomainViolation, "empty Hamel literal");
  Rational q0;
  Rational q1;
  std::optional<long> surd;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> void {
    throw Error(ErrorCode::DomainViolation, "malformed Hamel literal '" + std::string(text) + "': " + why);
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected '+' or '-'");
    }
    const std::size_t end = s.find_first_of("+-", pos);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? s.size() : end;
    if (term.empty()) fail("empty term");
    const auto root = term.find("sqrt(");
    if (root == std::string::npos) {
      q0 += Rational(sign) * Rational::parse(term);
      continue;
    }
    if (term.back() != ')') fail("unterminated sqrt(");
    const std::string radicand = term.substr(root + 5, term.size() - root - 6);
    long d = 0;
    try {
      std::size_t used = 0;
      d = std::stol(radicand, &used);
      if (used != radicand.size()) fail("bad radicand");
    } catch (const std::logic_error&) {
      fail("bad radicand");
    }
    require_square_free(d);
    if (surd && *surd != d) fail("more than one radicand");
    surd = d;
    Rational coefficient(1);
    if (root > 0) {
      if (term[root - 1] != '*') fail("expected '*' before sqrt(");
      coefficient = Rational::parse(term.substr(0, root - 1));
    }
    q1 += Rational(sign) * coefficient;
  }
  return ExactHamel(q0, q1, surd.value_or(kDefaultSurd));
}

/// alpha(q0 + q1*sqrt(d)) := a0*q0 + a1*q1. Additive (Q-linear) by
/// construction; not R-linear unless a1^2 = d*a0^2, which is rejected.
class AdditiveFunctional {
 public:
  AdditiveFunctional() = default;
  AdditiveFunctional(Rational a0, Rational a1, long d = kDefaultSurd)
      : a0_(std::move(a0)), a1_(std::move(a1)), d_(d) {
    require_square_free(d_);
    if (a1_ * a1_ == Rational(d_) * a0_ * a0_) {
      throw Error(ErrorCode::InvalidParams, "functional is proportional to the identity on the span",
                  "a1^2!=d*a0^2");
    }
  }

  const Rational& a0() const { return a0_; }
  const Rational& a1() const { return a1_; }
  long d() const { return d_; }

  template <class C>
  C operator()(const HamelNumber<C>& x) const {
    if (x.d() != d_ && x.q1() != C(0)) {
      throw Error(ErrorCode::DomainViolation, "functional defined on sqrt(" + std::to_string(d_) + ") span");
    }
    using T = scalar_traits<C>;
    return T::coeff(a0_) * x.q0() + T::coeff(a1_) * x.q1();
  }
  // Plain binary64 and rational values sit in the rational part of the span.
  double operator()(double x) const { return a0_.to_double() * x; }
  Rational operator()(const Rational& x) const { return a0_ * x; }

 private:
  Rational a0_{0};
  Rational a1_{1};
  long d_ = kDefaultSurd;
};

inline Rational alpha_eval(const AdditiveFunctional& f, const ExactHamel& x) { return f(x); }

enum class LambdaConstraint {
  KappaRange,      // 0 < kappa < 1
  CGreaterThanOne, // c > 1
  BPositive,       // 0 < b
  BAtMostD,        // b <= d
  CLower,          // 2/(1+kappa) <= c
  CUpper,          // c <= 2/(1-kappa)
  DLower,          // 2b/(1+kappa) <= d
  DUpper,          // d <= 2b/(1-kappa)
};

inline std::string_view to_string(LambdaConstraint c) {
  switch (c) {
    case LambdaConstraint::KappaRange: return "0<kappa<1";
    case LambdaConstraint::CGreaterThanOne: return "c>1";
    case LambdaConstraint::BPositive: return "0<b";
    case LambdaConstraint::BAtMostD: return "b<=d";
    case LambdaConstraint::CLower: return "2/(1+kappa)<=c";
    case LambdaConstraint::CUpper: return "c<=2/(1-kappa)";
    case LambdaConstraint::DLower: return "2b/(1+kappa)<=d";
    case LambdaConstraint::DUpper: return "d<=2b/(1-kappa)";
  }
  return "?";
}

/// First violated constraint, in the order listed in LambdaConstraint.
inline std::optional<LambdaConstraint> check_lambda_params(const Rational& b, const Rational& c, const Rational& d,
                                                           const Rational& kappa) {
  const Rational one(1);
  const Rational two(2);
  if (!(kappa > Rational(0) && kappa < one)) return LambdaConstraint::KappaRange;
  if (!(c > one)) return LambdaConstraint::CGreaterThanOne;
  if (!(b > Rational(0))) return LambdaConstraint::BPositive;
  if (!(b <= d)) return LambdaConstraint::BAtMostD;
  if (!(two / (one + kappa) <= c)) return LambdaConstraint::CLower;
  if (!(c <= two / (one - kappa))) return LambdaConstraint::CUpper;
  if (!(two * b / (one + kappa) <= d)) return LambdaConstraint::DLower;
  if (!(d <= two * b / (one - kappa))) return LambdaConstraint::DUpper;
  return std::nullopt;
}

/// Validated parameters of lambda(t) = (t + b)/(c t + d), t = |alpha(u)|.
/// Only obtainable through validate_lambda_params.
class LambdaParams {
 public:
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }
  const Rational& kappa() const { return kappa_; }

  /// (3t+3)/(4t+12) = (t+1)/((4/3)t+4), kappa = 1/2.
  static LambdaParams example2() { return LambdaParams(Rational(1), Rational(4, 3), Rational(4), Rational(1, 2)); }

  Rational lower_bound() const { return (Rational(1) - kappa_) / Rational(2); }
  Rational upper_bound() const { return (Rational(1) + kappa_) / Rational(2); }

 private:
  LambdaParams(Rational b, Rational c, Rational d, Rational kappa)
      : b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), kappa_(std::move(kappa)) {}
  friend LambdaParams validate_lambda_params(const Rational&, const Rational&, const Rational&, const Rational&);

  Rational b_, c_, d_, kappa_;
};

inline LambdaParams validate_lambda_params(const Rational& b, const Rational& c, const Rational& d,
                                           const Rational& kappa) {
  if (const auto bad = check_lambda_params(b, c, d, kappa)) {
    throw Error(ErrorCode::InvalidParams,
                "lambda parameters (b,c,d,kappa)=(" + b.to_string() + "," + c.to_string() + "," + d.to_string() + "," +
                    kappa.to_string() + ") violate " + std::string(to_string(*bad)),
                std::string(to_string(*bad)));
  }
  return LambdaParams(b, c, d, kappa);
}

/// lambda as a function of t = |alpha(u)|, in the coefficient type C.
template <class C>
C lambda_of_alpha(const LambdaParams& params, const C& alpha) {
  using T = scalar_traits<C>;
  const C t = alpha < C(0) ? C(-alpha) : alpha;
  C lambda = (t + T::coeff(params.b())) / (T::coeff(params.c()) * t + T::coeff(params.d()));
  if constexpr (std::is_same_v<C, Rational>) {
    if (lambda < params.lower_bound() || params.upper_bound() < lambda) {
      throw Error(ErrorCode::InternalityBreach, "lambda " + lambda.to_string() + " left its proven range");
    }
  }
  return lambda;
}

template <class S>
auto lambda_eval(const LambdaParams& params, const AdditiveFunctional& f, const S& u) {
  return lambda_of_alpha(params, f(u));
}

template <class S>
struct MnPair {
  S m;
  S n;
};

/// One step of (M, N): M = lambda(u) u + (1-lambda(u)) v,
/// N = (1-lambda(u)) u + lambda(u) v.
template <class S>
MnPair<S> mn_step(const LambdaParams& params, const AdditiveFunctional& f, const S& u, const S& v) {
  using T = scalar_traits<S>;
  using C = typename T::coeff_type;
  const C lambda = lambda_eval(params, f, u);
  const C rest = T::coeff(Rational(1)) - lambda;
  return {T::scale(u, lambda) + T::scale(v, rest), T::scale(u, rest) + T::scale(v, lambda)};
}

template <class S>
struct MnOrbit {
  std::vector<MnPair<S>> pairs;  // pairs[k] = (M_k, N_k), pairs[0] = (u, v)
  bool complete = true;          // false when the bit budget stopped the run early
};

namespace detail {
inline std::size_t coefficient_bits(const ExactHamel& x) {
  return std::max(x.q0().bits(), x.q1().bits());
}
}  // namespace detail

/// Orbit (M_k, N_k), k = 0..steps. For exact coefficients the representation
/// size roughly doubles every step; `max_bits` (0 = unlimited) stops the run
/// once any coefficient exceeds that many bits.
template <class S>
MnOrbit<S> mn_orbit_within(const LambdaParams& params, const AdditiveFunctional& f, const S& u, const S& v,
                           std::size_t steps, std::size_t max_bits = 0) {
  MnOrbit<S> orbit;
  orbit.pairs.reserve(steps + 1);
  orbit.pairs.push_back({u, v});
  for (std::size_t k = 0; k < steps; ++k) {
    const auto& last = orbit.pairs.back();
    orbit.pairs.push_back(mn_step(params, f, last.m, last.n));
    if constexpr (std::is_same_v<S, ExactHamel>) {
      const auto& p = orbit.pairs.back();
      if (max_bits != 0 && std::max(detail::coefficient_bits(p.m), detail::coefficient_bits(p.n)) > max_bits) {
        orbit.complete = k + 1 == steps;
        return orbit;
      }
    }
  }
  return orbit;
}

template <class S>
std::vector<MnPair<S>> mn_orbit(const LambdaParams& params, const AdditiveFunctional& f, const S& u, const S& v,
                                std::size_t steps) {
  return mn_orbit_within(params, f, u, v, steps).pairs;
}

}  // namespace meanmap
