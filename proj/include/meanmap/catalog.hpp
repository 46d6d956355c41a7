#pragma once

#include <random>
#include <string>
#include <vector>

#include "meanmap/example1.hpp"
#include "meanmap/hamel.hpp"
#include "meanmap/mapping.hpp"
#include "meanmap/mean_expr.hpp"

namespace meanmap {

inline Interval positive_half_line() { return {0.0, std::numeric_limits<double>::infinity()}; }

/// (A, G): Gauss' arithmetic-geometric mean iteration.
inline MeanTypeMapping<double> agm_mapping() {
  return expr_vector<double>({MeanExpr::arithmetic(2), MeanExpr::geometric(2)}, positive_half_line(), "agm");
}

/// (A, H); its invariant mean is G since G(A, H) = G.
inline MeanTypeMapping<double> ahm_mapping() {
  return expr_vector<double>({MeanExpr::arithmetic(2), MeanExpr::harmonic(2)}, positive_half_line(), "ahm");
}

struct BuiltinMapping {
  std::string name;
  std::size_t arity;
  std::string scalars;
  std::string description;
};

inline const std::vector<BuiltinMapping>& builtin_mappings() {
  static const std::vector<BuiltinMapping> table = {
      {"agm", 2, "binary64", "(A, G) arithmetic/geometric pair on (0, inf)"},
      {"ahm", 2, "binary64", "(A, H) arithmetic/harmonic pair on (0, inf); invariant mean G"},
      {"swap", 2, "binary64 | rational", "(v1, v2) -> (v2, v1); no unique invariant mean"},
      {"example1", 3, "binary64 | rational", "piecewise halving map on [0,1]^3 with unbounded n0"},
      {"hamel-mn", 2, "hamel",
       "lambda_alpha pair (M, N), params (1, 4/3, 4, 1/2), alpha = (0, 1), d = 2; invariant mean A"},
  };
  return table;
}

/// Uniform samples in the box (lo, hi]^p.
inline std::vector<std::vector<double>> box_samples(std::size_t p, double lo, double hi, std::size_t count,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> out(count, std::vector<double>(p));
  for (auto& v : out) {
    for (auto& x : v) x = hi - (hi - lo) * unit(rng);
  }
  return out;
}

/// Float images of random span elements q0 + q1*sqrt(2), q0, q1 uniform in
/// [-scale, scale].
inline std::vector<std::vector<HamelImage>> hamel_samples(std::size_t count, std::uint64_t seed, double scale = 5.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-scale, scale);
  std::vector<std::vector<HamelImage>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<HamelImage> v;
    for (int k = 0; k < 2; ++k) {
      const double q0 = coeff(rng);
      const double q1 = coeff(rng);
      v.emplace_back(q0, q1, kDefaultSurd);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace meanmap
