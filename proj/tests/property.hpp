#pragma once

// Minimal property-test harness: seeded generators and a runner that
// reports the failing case index and seed.

#include <gtest/gtest.h>

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "meanmap/meanmap.hpp"

namespace prop {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  std::vector<double> vector(std::size_t p, double lo, double hi) {
    std::vector<double> v(p);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  meanmap::Rational rational(long max_num = 50, long max_den = 40) {
    return meanmap::Rational(integer(-max_num, max_num), integer(1, max_den));
  }

  meanmap::Rational positive_rational(long max_num = 50, long max_den = 40) {
    return meanmap::Rational(integer(1, max_num), integer(1, max_den));
  }

  meanmap::ExactHamel hamel(long max_num = 20, long max_den = 12) {
    return meanmap::ExactHamel(rational(max_num, max_den), rational(max_num, max_den));
  }

  /// Positive weights summing to exactly 1.
  std::vector<meanmap::Rational> weights(std::size_t p) {
    std::vector<long> raw(p);
    long total = 0;
    for (auto& w : raw) total += (w = integer(1, 9));
    std::vector<meanmap::Rational> out;
    for (const long w : raw) out.emplace_back(w, total);
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline constexpr std::uint64_t kSeed = 20240611;

/// Runs `body` for `cases` generated cases; stops at the first failure.
inline void for_all(std::size_t cases, const std::function<void(Gen&)>& body, std::uint64_t seed = kSeed) {
  for (std::size_t k = 0; k < cases; ++k) {
    Gen gen(seed + k);
    SCOPED_TRACE("property case " + std::to_string(k) + ", seed " + std::to_string(seed + k));
    body(gen);
    if (::testing::Test::HasFailure()) return;
  }
}

}  // namespace prop
