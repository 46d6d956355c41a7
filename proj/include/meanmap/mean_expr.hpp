#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "meanmap/error.hpp"
#include "meanmap/generator.hpp"
#include "meanmap/hamel.hpp"
#include "meanmap/rational.hpp"
#include "meanmap/scalar.hpp"

namespace meanmap {

enum class BlendKind {
  Constant,       // s = fixed rational in [0, 1]
  Example1Strip,  // s = clamp((2|v3-v1| - (v2-v1)^2) / (v2-v1)^2, 0, 1), p = 3
  RelativeFirst,  // s = (v1 - min v) / (max v - min v), 0 on the diagonal
};

struct BlendCoefficient {
  BlendKind kind = BlendKind::Constant;
  Rational value{1, 2};

  static BlendCoefficient constant(Rational s) {
    if (s < Rational(0) || s > Rational(1)) {
      throw Error(ErrorCode::DomainViolation, "blend coefficient " + s.to_string() + " outside [0,1]", "s");
    }
    return {BlendKind::Constant, std::move(s)};
  }
  static BlendCoefficient example1_strip() { return {BlendKind::Example1Strip, Rational(0)}; }
  static BlendCoefficient relative_first() { return {BlendKind::RelativeFirst, Rational(0)}; }
};

enum class RegionPredicate {
  Example1Lambda,  // |v3 - v1| >= (v2 - v1)^2, p = 3
  FirstLeSecond,   // v1 <= v2
};

enum class LambdaSide { M, N };

class MeanExpr;
using MeanExprPtr = std::shared_ptr<const MeanExpr>;

struct Projection {
  std::size_t index = 0;
};
/// Weighted power mean; exponent 0 is geometric, +-inf are max/min over the
/// positively weighted coordinates.
struct PowerMean {
  double exponent = 1.0;
  std::vector<Rational> weights;
};
struct QuasiArithmetic {
  Generator generator = Generator::identity();
  std::vector<Rational> weights;
};
struct MinMean {};
struct MaxMean {};
struct ConvexBlend {
  BlendCoefficient coefficient;
  MeanExprPtr left;
  MeanExprPtr right;
};
struct Piecewise {
  RegionPredicate predicate = RegionPredicate::FirstLeSecond;
  MeanExprPtr then_branch;
  MeanExprPtr else_branch;
};
/// One coordinate of the lambda_alpha pair (M, N); p = 2.
struct StateWeighted {
  LambdaSide side = LambdaSide::M;
  LambdaParams params = LambdaParams::example2();
  AdditiveFunctional functional{};
};

/// Immutable expression tree denoting a p-ary mean. Arity is fixed at
/// construction and checked against every subexpression.
class MeanExpr {
 public:
  using Node = std::variant<Projection, PowerMean, QuasiArithmetic, MinMean, MaxMean, ConvexBlend, Piecewise,
                            StateWeighted>;

  std::size_t arity() const { return arity_; }
  const Node& node() const { return node_; }

  static MeanExpr projection(std::size_t arity, std::size_t index) {
    require_arity(arity);
    if (index >= arity) {
      throw Error(ErrorCode::ArityMismatch,
                  "projection index " + std::to_string(index) + " out of range for p = " + std::to_string(arity),
                  "index");
    }
    return MeanExpr(arity, Projection{index});
  }

  static std::vector<Rational> equal_weights(std::size_t arity) {
    require_arity(arity);
    return std::vector<Rational>(arity, Rational(1, static_cast<long>(arity)));
  }

  static MeanExpr power(double exponent, std::vector<Rational> weights) {
    if (std::isnan(exponent)) throw Error(ErrorCode::DomainViolation, "power exponent is NaN", "r");
    check_weights(weights);
    const auto p = weights.size();
    return MeanExpr(p, PowerMean{exponent, std::move(weights)});
  }
  static MeanExpr arithmetic(std::vector<Rational> weights) { return power(1.0, std::move(weights)); }
  static MeanExpr arithmetic(std::size_t arity) { return power(1.0, equal_weights(arity)); }
  static MeanExpr geometric(std::size_t arity) { return power(0.0, equal_weights(arity)); }
  static MeanExpr harmonic(std::size_t arity) { return power(-1.0, equal_weights(arity)); }

  static MeanExpr quasi(Generator g, std::vector<Rational> weights) {
    check_weights(weights);
    const auto p = weights.size();
    return MeanExpr(p, QuasiArithmetic{g, std::move(weights)});
  }

  static MeanExpr minimum(std::size_t arity) {
    require_arity(arity);
    return MeanExpr(arity, MinMean{});
  }
  static MeanExpr maximum(std::size_t arity) {
    require_arity(arity);
    return MeanExpr(arity, MaxMean{});
  }

  static MeanExpr blend(BlendCoefficient s, MeanExpr left, MeanExpr right) {
    require_same_arity(left, right);
    if (s.kind == BlendKind::Example1Strip && left.arity() != 3) {
      throw Error(ErrorCode::ArityMismatch, "example1_strip coefficient needs p = 3", "s");
    }
    const auto p = left.arity();
    return MeanExpr(p, ConvexBlend{std::move(s), std::make_shared<const MeanExpr>(std::move(left)),
                                   std::make_shared<const MeanExpr>(std::move(right))});
  }

  static MeanExpr piecewise(RegionPredicate predicate, MeanExpr then_branch, MeanExpr else_branch) {
    require_same_arity(then_branch, else_branch);
    if (predicate == RegionPredicate::Example1Lambda && then_branch.arity() != 3) {
      throw Error(ErrorCode::ArityMismatch, "example1_lambda region needs p = 3", "region");
    }
    const auto p = then_branch.arity();
    return MeanExpr(p, Piecewise{predicate, std::make_shared<const MeanExpr>(std::move(then_branch)),
                                 std::make_shared<const MeanExpr>(std::move(else_branch))});
  }

  static MeanExpr state_weighted(LambdaSide side, LambdaParams params, AdditiveFunctional functional) {
    return MeanExpr(2, StateWeighted{side, std::move(params), std::move(functional)});
  }

 private:
  MeanExpr(std::size_t arity, Node node) : arity_(arity), node_(std::move(node)) {}

  static void require_arity(std::size_t arity) {
    if (arity < 2) throw Error(ErrorCode::ArityMismatch, "mean arity must be at least 2", "p");
  }
  static void require_same_arity(const MeanExpr& a, const MeanExpr& b) {
    if (a.arity() != b.arity()) {
      throw Error(ErrorCode::ArityMismatch,
                  "subexpression arities differ: " + std::to_string(a.arity()) + " vs " + std::to_string(b.arity()));
    }
  }
  static void check_weights(const std::vector<Rational>& weights) {
    require_arity(weights.size());
    Rational sum;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] < Rational(0)) {
        throw Error(ErrorCode::WeightSumError, "weight " + weights[i].to_string() + " is negative",
                    "weights/" + std::to_string(i));
      }
      sum += weights[i];
    }
    if (sum != Rational(1)) {
      throw Error(ErrorCode::WeightSumError, "weights sum to " + sum.to_string() + ", not 1", "weights");
    }
  }

  std::size_t arity_;
  Node node_;
};

namespace detail {

template <class S>
[[noreturn]] void needs_binary64(const std::string& what) {
  throw Error(ErrorCode::DomainViolation, what + " is not closed over exact scalars; evaluate in Binary64");
}

template <class S>
S weighted_sum(std::span<const S> v, const std::vector<Rational>& weights) {
  using T = scalar_traits<S>;
  S total = T::scale(v[0], T::coeff(weights[0]));
  for (std::size_t i = 1; i < v.size(); ++i) total = total + T::scale(v[i], T::coeff(weights[i]));
  return total;
}

inline void require_positive(std::span<const double> v, const std::string& what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      throw Error(ErrorCode::DomainViolation, what + " needs strictly positive inputs",
                  "v[" + std::to_string(i) + "]");
    }
  }
}

template <class S>
S eval_node(const MeanExpr& expr, std::span<const S> v);

template <class S>
S eval_checked(const MeanExpr& expr, std::span<const S> v) {
  return enforce_internal(eval_node(expr, v), min_of(v), max_of(v));
}

// Both helpers pivot on c = max(v) so that near-constant inputs only feed
// small arguments to exp/log; the naive g^-1(sum w g(x)) loses accuracy in
// proportion to |g(x)|.

/// (sum w x^r)^(1/r) for r != 0, exp(sum w log x) for r = 0; x >= 0.
inline double power_mean_binary64(std::span<const double> v, const std::vector<Rational>& weights, double r) {
  const double c = *std::max_element(v.begin(), v.end());
  if (c == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double w = weights[i].to_double();
    if (w == 0.0) continue;
    const double rel = std::log(v[i] / c);  // <= 0
    acc += w * (r == 0.0 ? rel : std::expm1(r * rel));
  }
  const double exponent = r == 0.0 ? acc : std::log1p(acc) / r;
  return c * std::exp(exponent);
}

/// log(sum w exp(x)).
inline double log_mean_exp_binary64(std::span<const double> v, const std::vector<Rational>& weights) {
  const double c = *std::max_element(v.begin(), v.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += weights[i].to_double() * std::expm1(v[i] - c);
  return c + std::log1p(acc);
}

template <class S>
S eval_power(const PowerMean& node, std::span<const S> v) {
  const double r = node.exponent;
  if (r == 1.0) return weighted_sum(v, node.weights);
  if (std::isinf(r)) {
    std::optional<S> best;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (node.weights[i].is_zero()) continue;
      if (!best || (r > 0 ? *best < v[i] : v[i] < *best)) best = v[i];
    }
    return *best;
  }
  if constexpr (std::is_same_v<S, double>) {
    require_positive(v, "power mean");
    return power_mean_binary64(v, node.weights, r);
  } else {
    needs_binary64<S>("power mean with exponent " + scalar_traits<double>::to_string(r));
  }
}

template <class S>
S eval_quasi(const QuasiArithmetic& node, std::span<const S> v) {
  const Generator& g = node.generator;
  if (g.kind() == GeneratorKind::Identity) return weighted_sum(v, node.weights);
  if (g.kind() == GeneratorKind::Negation) {
    std::vector<S> negated(v.begin(), v.end());
    for (auto& x : negated) x = -x;
    return -weighted_sum(std::span<const S>(negated), node.weights);
  }
  if constexpr (std::is_same_v<S, double>) {
    for (const double x : v) {
      if (!g.in_domain(x)) {
        throw Error(ErrorCode::DomainViolation, g.name() + " generator undefined at " + format_scalar(x), "v");
      }
    }
    if (g.kind() == GeneratorKind::Log) return power_mean_binary64(v, node.weights, 0.0);
    if (g.kind() == GeneratorKind::Power) return power_mean_binary64(v, node.weights, g.exponent());
    if (g.kind() == GeneratorKind::Exp) return log_mean_exp_binary64(v, node.weights);
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += node.weights[i].to_double() * g.apply(v[i]);
    return g.inverse(acc);
  } else {
    needs_binary64<S>("quasi-arithmetic mean with " + g.name() + " generator");
  }
}

template <class S>
auto blend_weight(const BlendCoefficient& s, std::span<const S> v) {
  using T = scalar_traits<S>;
  using C = typename T::coeff_type;
  if (s.kind == BlendKind::Constant) return T::coeff(s.value);
  if constexpr (T::field) {
    if (s.kind == BlendKind::Example1Strip) {
      const S d2 = v[1] - v[0];
      const S d3 = v[2] - v[0];
      const S sq = d2 * d2;
      if (sq == S(0)) return C(1);
      const S a = d3 < S(0) ? S(-d3) : d3;
      const S raw = (a + a - sq) / sq;
      return raw < S(0) ? C(0) : (S(1) < raw ? C(1) : raw);
    }
    const S lo = min_of(v);
    const S width = max_of(v) - lo;
    if (width == S(0)) return C(0);
    return C((v[0] - lo) / width);
  } else {
    needs_binary64<S>("state-dependent blend coefficient");
  }
}

template <class S>
bool region_holds(RegionPredicate predicate, std::span<const S> v) {
  if (predicate == RegionPredicate::FirstLeSecond) return !(v[1] < v[0]);
  if constexpr (scalar_traits<S>::field) {
    const S d2 = v[1] - v[0];
    const S d3 = v[2] - v[0];
    const S a = d3 < S(0) ? S(-d3) : d3;
    return !(a < d2 * d2);
  } else {
    needs_binary64<S>("example1_lambda region test");
  }
}

template <class S>
S eval_node(const MeanExpr& expr, std::span<const S> v) {
  using T = scalar_traits<S>;
  return std::visit(
      [&](const auto& node) -> S {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, Projection>) {
          return v[node.index];
        } else if constexpr (std::is_same_v<N, PowerMean>) {
          return eval_power(node, v);
        } else if constexpr (std::is_same_v<N, QuasiArithmetic>) {
          return eval_quasi(node, v);
        } else if constexpr (std::is_same_v<N, MinMean>) {
          return min_of(v);
        } else if constexpr (std::is_same_v<N, MaxMean>) {
          return max_of(v);
        } else if constexpr (std::is_same_v<N, ConvexBlend>) {
          const auto s = blend_weight(node.coefficient, v);
          const S left = eval_checked(*node.left, v);
          const S right = eval_checked(*node.right, v);
          return T::scale(left, s) + T::scale(right, T::coeff(Rational(1)) - s);
        } else if constexpr (std::is_same_v<N, Piecewise>) {
          return eval_checked(region_holds(node.predicate, v) ? *node.then_branch : *node.else_branch, v);
        } else {
          const auto mn = mn_step(node.params, node.functional, v[0], v[1]);
          return node.side == LambdaSide::M ? mn.m : mn.n;
        }
      },
      expr.node());
}

// Deviation of the unclamped top-level value; -1 when a subexpression already
// breached its band.
template <class S>
double raw_deviation(const MeanExpr& expr, std::span<const S> v, const S& lo, const S& hi) {
  try {
    return internality_deviation(eval_node(expr, v), lo, hi);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InternalityBreach) throw;
    return -1.0;
  }
}

template <class S>
void check_call(const MeanExpr& expr, std::span<const S> v, const ScalarDomain& domain) {
  if (v.size() != expr.arity()) {
    throw Error(ErrorCode::ArityMismatch,
                "expression has arity " + std::to_string(expr.arity()) + ", got " + std::to_string(v.size()) +
                    " inputs",
                "v");
  }
  if (domain.kind != scalar_traits<S>::kind) {
    throw Error(ErrorCode::DomainViolation, "scalar type does not match the domain kind", "domain.kind");
  }
  require_in_domain(v, domain.interval);
}

}  // namespace detail

template <Scalar S>
ScalarDomain default_domain() {
  return {scalar_traits<S>::kind, Interval::real_line()};
}

/// Evaluates `expr` at `v`; the result always lies in [min v, max v].
template <Scalar S>
S eval_mean(const MeanExpr& expr, std::span<const S> v, const ScalarDomain& domain) {
  detail::check_call(expr, v, domain);
  return detail::eval_checked(expr, v);
}

template <Scalar S>
S eval_mean(const MeanExpr& expr, std::span<const S> v) {
  return eval_mean(expr, v, default_domain<S>());
}

template <Scalar S>
S eval_mean(const MeanExpr& expr, const std::vector<S>& v) {
  return eval_mean(expr, std::span<const S>(v));
}

struct InternalityReport {
  std::size_t samples = 0;
  std::size_t violations = 0;         // raw value outside the 8-ulp band (would throw)
  std::size_t rounding_breaches = 0;  // raw value outside [min, max] but inside the band
  double worst_deviation = 0.0;       // absolute, measured before clamping
};

template <Scalar S>
InternalityReport internality_report(const MeanExpr& expr, const ScalarDomain& domain,
                                     const std::vector<std::vector<S>>& samples) {
  InternalityReport report;
  for (const auto& sample : samples) {
    const std::span<const S> v(sample);
    detail::check_call(expr, v, domain);
    const S lo = min_of(v);
    const S hi = max_of(v);
    const double dev = detail::raw_deviation(expr, v, lo, hi);
    ++report.samples;
    if (dev < 0.0) {
      ++report.violations;
      report.worst_deviation = std::numeric_limits<double>::infinity();
      continue;
    }
    if (dev > 0.0) {
      const bool within = !scalar_traits<S>::exact && dev <= internality_band(to_double(lo), to_double(hi));
      ++(within ? report.rounding_breaches : report.violations);
    }
    report.worst_deviation = std::max(report.worst_deviation, dev);
  }
  return report;
}

}  // namespace meanmap
