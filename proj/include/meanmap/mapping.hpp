#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "meanmap/error.hpp"
#include "meanmap/generator.hpp"
#include "meanmap/hamel.hpp"
#include "meanmap/mean_expr.hpp"
#include "meanmap/scalar.hpp"

namespace meanmap {

enum class MappingKind { ExprVector, Example1, HamelMN, Swap, Conjugated };

inline std::string_view to_string(MappingKind kind) {
  switch (kind) {
    case MappingKind::ExprVector: return "expr_vector";
    case MappingKind::Example1: return "example1";
    case MappingKind::HamelMN: return "hamel_mn";
    case MappingKind::Swap: return "swap";
    case MappingKind::Conjugated: return "conjugated";
  }
  return "?";
}

/// A self-map of I^p whose coordinates are means. Immutable; the raw
/// coordinate function is wrapped so every output is checked and clamped
/// into [min v, max v].
template <Scalar S>
class MeanTypeMapping {
 public:
  using Vector = std::vector<S>;
  using Function = std::function<Vector(std::span<const S>)>;

  MeanTypeMapping(MappingKind kind, std::string name, std::size_t arity, Interval domain, Function raw)
      : kind_(kind), name_(std::move(name)), arity_(arity), domain_(domain), raw_(std::move(raw)) {
    if (arity_ < 2) throw Error(ErrorCode::ArityMismatch, "mean-type mappings need p >= 2", "p");
    domain_.validate();
  }

  MappingKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::size_t arity() const { return arity_; }
  const Interval& domain() const { return domain_; }

  Vector operator()(std::span<const S> v) const {
    if (v.size() != arity_) {
      throw Error(ErrorCode::ArityMismatch,
                  name_ + " acts on p = " + std::to_string(arity_) + " vectors, got " + std::to_string(v.size()), "v");
    }
    require_in_domain(v, domain_);
    Vector out = raw_(v);
    if (out.size() != arity_) throw Error(ErrorCode::ArityMismatch, name_ + " produced a vector of the wrong size");
    const S lo = min_of(v);
    const S hi = max_of(v);
    for (auto& x : out) x = enforce_internal(x, lo, hi);
    return out;
  }
  Vector operator()(const Vector& v) const { return (*this)(std::span<const S>(v)); }

 private:
  MappingKind kind_;
  std::string name_;
  std::size_t arity_;
  Interval domain_;
  Function raw_;
};

template <Scalar S>
std::vector<S> apply_mapping(const MeanTypeMapping<S>& mapping, std::span<const S> v) {
  return mapping(v);
}

template <Scalar S>
std::vector<S> apply_mapping(const MeanTypeMapping<S>& mapping, const std::vector<S>& v) {
  return mapping(std::span<const S>(v));
}

/// (M_1, ..., M_p) built from p mean expressions of arity p.
template <Scalar S>
MeanTypeMapping<S> expr_vector(std::vector<MeanExpr> coordinates, Interval domain = Interval::real_line(),
                               std::string name = "expr_vector") {
  const std::size_t p = coordinates.size();
  for (std::size_t i = 0; i < p; ++i) {
    if (coordinates[i].arity() != p) {
      throw Error(ErrorCode::ArityMismatch,
                  "coordinate " + std::to_string(i) + " has arity " + std::to_string(coordinates[i].arity()) +
                      " in a p = " + std::to_string(p) + " mapping",
                  "coordinates/" + std::to_string(i));
    }
  }
  auto shared = std::make_shared<const std::vector<MeanExpr>>(std::move(coordinates));
  const ScalarDomain scalar_domain{scalar_traits<S>::kind, domain};
  return MeanTypeMapping<S>(MappingKind::ExprVector, std::move(name), p, domain,
                            [shared, scalar_domain](std::span<const S> v) {
                              std::vector<S> out;
                              out.reserve(v.size());
                              for (const auto& expr : *shared) out.push_back(eval_mean(expr, v, scalar_domain));
                              return out;
                            });
}

/// (v1, v2) -> (v2, v1). Every point off the diagonal has period 2.
template <Scalar S>
MeanTypeMapping<S> swap_mapping(Interval domain = Interval::real_line()) {
  return MeanTypeMapping<S>(MappingKind::Swap, "swap", 2, domain,
                            [](std::span<const S> v) { return std::vector<S>{v[1], v[0]}; });
}

/// The lambda_alpha pair (M, N) acting on (u, v). S is ExactHamel, HamelImage,
/// or any scalar that sits in the rational part of the span.
template <Scalar S>
MeanTypeMapping<S> hamel_mn(LambdaParams params = LambdaParams::example2(), AdditiveFunctional functional = {}) {
  return MeanTypeMapping<S>(MappingKind::HamelMN, "hamel-mn", 2, Interval::real_line(),
                            [params = std::move(params), functional = std::move(functional)](std::span<const S> v) {
                              const auto mn = mn_step(params, functional, v[0], v[1]);
                              return std::vector<S>{mn.m, mn.n};
                            });
}

/// v -> g^-1(M(g(v))), coordinatewise. Conjugating by the identity returns
/// the mapping unchanged.
inline MeanTypeMapping<double> conjugate_mapping(const Generator& g, const MeanTypeMapping<double>& inner) {
  if (g.kind() == GeneratorKind::Identity) return inner;
  const Interval domain = g.preimage(inner.domain());
  return MeanTypeMapping<double>(MappingKind::Conjugated, g.name() + "-conjugate(" + inner.name() + ")",
                                 inner.arity(), domain, [g, inner](std::span<const double> v) {
                                   std::vector<double> image(v.size());
                                   for (std::size_t i = 0; i < v.size(); ++i) image[i] = g.apply(v[i]);
                                   std::vector<double> out = inner(image);
                                   for (auto& y : out) y = g.inverse(y);
                                   return out;
                                 });
}

}  // namespace meanmap
