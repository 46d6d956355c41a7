#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "meanmap/error.hpp"
#include "meanmap/scalar.hpp"

namespace meanmap {

enum class GeneratorKind { Identity, Log, Exp, Power, Negation };

/// Closed catalog of quasi-arithmetic generators. Each is continuous and
/// strictly monotone on its domain with a closed-form inverse.
class Generator {
 public:
  static Generator identity() { return Generator(GeneratorKind::Identity, 0.0); }
  static Generator log() { return Generator(GeneratorKind::Log, 0.0); }
  static Generator exp() { return Generator(GeneratorKind::Exp, 0.0); }
  static Generator negation() { return Generator(GeneratorKind::Negation, 0.0); }
  static Generator power(double r) {
    if (!(r != 0.0) || !std::isfinite(r)) {
      throw Error(ErrorCode::DomainViolation, "power generator needs a finite nonzero exponent", "generator.r");
    }
    return Generator(GeneratorKind::Power, r);
  }

  GeneratorKind kind() const { return kind_; }
  double exponent() const { return exponent_; }

  /// Domain of g: (0, inf) for Log and Power, the whole line otherwise.
  bool positive_domain() const { return kind_ == GeneratorKind::Log || kind_ == GeneratorKind::Power; }
  bool in_domain(double x) const { return positive_domain() ? x > 0.0 : !std::isnan(x); }

  /// Identity and Negation are affine, so they keep exact scalars exact.
  bool affine() const { return kind_ == GeneratorKind::Identity || kind_ == GeneratorKind::Negation; }

  double apply(double x) const {
    if (!in_domain(x)) {
      throw Error(ErrorCode::DomainViolation, name() + " generator undefined at " + scalar_traits<double>::to_string(x));
    }
    switch (kind_) {
      case GeneratorKind::Identity: return x;
      case GeneratorKind::Log: return std::log(x);
      case GeneratorKind::Exp: return std::exp(x);
      case GeneratorKind::Power: return std::pow(x, exponent_);
      case GeneratorKind::Negation: return -x;
    }
    return x;
  }

  double inverse(double y) const {
    switch (kind_) {
      case GeneratorKind::Identity: return y;
      case GeneratorKind::Log: return std::exp(y);
      case GeneratorKind::Exp:
        if (!(y > 0.0)) throw Error(ErrorCode::DomainViolation, "exp generator inverse undefined at non-positive value");
        return std::log(y);
      case GeneratorKind::Power:
        if (!(y > 0.0)) throw Error(ErrorCode::DomainViolation, "power generator inverse undefined at non-positive value");
        return std::pow(y, 1.0 / exponent_);
      case GeneratorKind::Negation: return -y;
    }
    return y;
  }

  /// g^-1 of an interval of generator values, intersected with the domain.
  Interval preimage(const Interval& image) const {
    const double inf = std::numeric_limits<double>::infinity();
    switch (kind_) {
      case GeneratorKind::Identity: return image;
      case GeneratorKind::Negation: return {-image.upper, -image.lower};
      case GeneratorKind::Log: return {std::exp(image.lower), std::exp(image.upper)};
      case GeneratorKind::Exp: return {std::log(std::max(image.lower, 0.0)), std::log(image.upper)};
      case GeneratorKind::Power: {
        const double lo = std::max(image.lower, 0.0);
        const double a = std::pow(lo, 1.0 / exponent_);
        const double b = std::pow(image.upper, 1.0 / exponent_);
        if (exponent_ > 0) return {a, b};
        return {b, lo == 0.0 ? inf : a};
      }
    }
    return image;
  }

  std::string name() const {
    switch (kind_) {
      case GeneratorKind::Identity: return "identity";
      case GeneratorKind::Log: return "log";
      case GeneratorKind::Exp: return "exp";
      case GeneratorKind::Power: return "power";
      case GeneratorKind::Negation: return "negation";
    }
    return "?";
  }

  friend bool operator==(const Generator&, const Generator&) = default;

 private:
  Generator(GeneratorKind kind, double r) : kind_(kind), exponent_(r) {}

  GeneratorKind kind_;
  double exponent_;
};

}  // namespace meanmap
