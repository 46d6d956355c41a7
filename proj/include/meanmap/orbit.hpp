#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meanmap/error.hpp"
#include "meanmap/mapping.hpp"
#include "meanmap/scalar.hpp"

namespace meanmap {

inline constexpr double kDefaultTol = 1e-12;
inline constexpr std::size_t kDefaultMaxIter = 100000;
/// A spread is "stabilized" when it moved by less than tol * kStallFactor over
/// kStallWindow consecutive steps.
inline constexpr std::size_t kStallWindow = 64;
inline constexpr double kStallFactor = 1e-3;

template <Scalar S>
std::vector<S> iterate(const MeanTypeMapping<S>& mapping, std::vector<S> v, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) v = mapping(v);
  return v;
}

enum class StopReason { SpreadTol, MaxIter, ExactFixpoint };

inline std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::SpreadTol: return "SpreadTol";
    case StopReason::MaxIter: return "MaxIter";
    case StopReason::ExactFixpoint: return "ExactFixpoint";
  }
  return "?";
}

struct StopRule {
  double spread_tol = kDefaultTol;
  std::size_t max_iter = kDefaultMaxIter;
};

template <Scalar S>
struct OrbitStep {
  std::size_t n = 0;
  std::vector<S> point;
  S min;
  S max;
  S spread;
};

template <Scalar S>
OrbitStep<S> make_step(std::size_t n, std::vector<S> point) {
  const std::span<const S> view(point);
  S lo = min_of(view);
  S hi = max_of(view);
  S width = hi - lo;
  return {n, std::move(point), std::move(lo), std::move(hi), std::move(width)};
}

template <Scalar S>
struct OrbitTrace {
  std::vector<OrbitStep<S>> steps;
  StopReason stop_reason = StopReason::MaxIter;

  const OrbitStep<S>& last() const { return steps.back(); }

  /// min nondecreasing, max nonincreasing, compared exactly.
  bool envelopes_monotone() const {
    for (std::size_t k = 1; k < steps.size(); ++k) {
      if (steps[k].min < steps[k - 1].min || steps[k - 1].max < steps[k].max) return false;
    }
    return true;
  }
};

/// Records v, M(v), M^2(v), ... until the spread drops to spread_tol, the
/// orbit hits an exact fixpoint, or max_iter steps were taken.
template <Scalar S>
OrbitTrace<S> orbit(const MeanTypeMapping<S>& mapping, std::vector<S> v, const StopRule& stop = {}) {
  if (!(stop.spread_tol >= 0.0)) throw Error(ErrorCode::DomainViolation, "spread_tol must be >= 0", "spread_tol");
  if (stop.max_iter < 1) throw Error(ErrorCode::DomainViolation, "max_iter must be >= 1", "max_iter");
  require_in_domain(std::span<const S>(v), mapping.domain());
  OrbitTrace<S> trace;
  trace.steps.push_back(make_step(0, std::move(v)));
  for (;;) {
    const auto& cur = trace.steps.back();
    if (cur.min == cur.max) {
      trace.stop_reason = StopReason::ExactFixpoint;
      break;
    }
    if (to_double(cur.spread) <= stop.spread_tol) {
      trace.stop_reason = StopReason::SpreadTol;
      break;
    }
    if (cur.n >= stop.max_iter) {
      trace.stop_reason = StopReason::MaxIter;
      break;
    }
    std::vector<S> next = mapping(cur.point);
    if (next == cur.point) {
      trace.stop_reason = StopReason::ExactFixpoint;
      break;
    }
    const std::size_t n = cur.n + 1;
    trace.steps.push_back(make_step(n, std::move(next)));
  }
  return trace;
}

enum class CompoundStatus {
  Converged,
  MaxIterReached,
  Stalled,  // exact fixpoint off the diagonal: the orbit can never converge
};

inline std::string_view to_string(CompoundStatus status) {
  switch (status) {
    case CompoundStatus::Converged: return "Converged";
    case CompoundStatus::MaxIterReached: return "MaxIterReached";
    case CompoundStatus::Stalled: return "Stalled";
  }
  return "?";
}

template <Scalar S>
struct CompoundResult {
  S value;           // midpoint of [min, max] of the final iterate
  S spread_at_stop;
  S lower;           // min of the final iterate
  S upper;           // max of the final iterate
  std::size_t iterations = 0;
  CompoundStatus status = CompoundStatus::MaxIterReached;

  bool converged() const { return status == CompoundStatus::Converged; }
};

/// Estimates the invariant (compound) mean K(v) as the common limit of the
/// coordinates of M^n(v).
template <Scalar S>
CompoundResult<S> compound_mean(const MeanTypeMapping<S>& mapping, std::vector<S> v, double tol = kDefaultTol,
                                std::size_t max_iter = kDefaultMaxIter) {
  if (!(tol > 0.0)) throw Error(ErrorCode::DomainViolation, "tol must be > 0", "tol");
  require_in_domain(std::span<const S>(v), mapping.domain());
  std::size_t n = 0;
  CompoundStatus status = CompoundStatus::MaxIterReached;
  for (;;) {
    const S spread = spread_of(std::span<const S>(v));
    if (to_double(spread) <= tol) {
      status = CompoundStatus::Converged;
      break;
    }
    if (n >= max_iter) break;
    std::vector<S> next = mapping(v);
    if (next == v) {
      status = CompoundStatus::Stalled;
      break;
    }
    v = std::move(next);
    ++n;
  }
  const std::span<const S> last(v);
  const S lo = min_of(last);
  const S hi = max_of(last);
  return {midpoint(lo, hi), hi - lo, lo, hi, n, status};
}

template <Scalar S>
struct EnvelopeEstimate {
  S lower;  // min(M^n(v)): nondecreasing in n, bounds L(v) from below
  S upper;  // max(M^n(v)): nonincreasing in n, bounds U(v) from above
  std::size_t n = 0;
};

/// n-step estimate of the smallest and biggest invariant means at v.
template <Scalar S>
EnvelopeEstimate<S> envelope_limits(const MeanTypeMapping<S>& mapping, std::vector<S> v, std::size_t n) {
  require_in_domain(std::span<const S>(v), mapping.domain());
  std::size_t used = 0;
  for (; used < n; ++used) {
    std::vector<S> next = mapping(v);
    if (next == v) break;
    v = std::move(next);
  }
  // An exact fixpoint repeats forever, so the n-step envelope equals the current one.
  const std::span<const S> last(v);
  return {min_of(last), max_of(last), n};
}

template <Scalar S>
struct ContractivityReport {
  std::optional<std::size_t> n0;  // minimal n <= n_max with spread(M^n v) < spread(v)
  std::size_t n_max = 0;
  std::vector<S> spread_history;  // spread(M^k v), k = 0..(n0 or n_max)

  bool found() const { return n0.has_value(); }
};

/// Searches for the first n with spread(M^n(v)) < spread(v). Spread is
/// nonincreasing along orbits, so the first witness settles every later n.
template <Scalar S>
ContractivityReport<S> weak_contractivity_probe(const MeanTypeMapping<S>& mapping, std::vector<S> v,
                                                std::size_t n_max) {
  if (n_max < 1) throw Error(ErrorCode::DomainViolation, "n_max must be >= 1", "n_max");
  require_in_domain(std::span<const S>(v), mapping.domain());
  const S initial = spread_of(std::span<const S>(v));
  if (min_of(std::span<const S>(v)) == max_of(std::span<const S>(v))) {
    throw Error(ErrorCode::ConstantInput, "weak contractivity is only defined for nonconstant vectors", "v");
  }
  ContractivityReport<S> report;
  report.n_max = n_max;
  report.spread_history.push_back(initial);
  for (std::size_t n = 1; n <= n_max; ++n) {
    v = mapping(v);
    report.spread_history.push_back(spread_of(std::span<const S>(v)));
    if (report.spread_history.back() < initial) {
      report.n0 = n;
      break;
    }
  }
  return report;
}

template <Scalar S>
using MeanEvaluator = std::function<S(std::span<const S>)>;

/// max over samples of |K(M(v)) - K(v)|.
template <Scalar S>
double invariance_residual(const MeanEvaluator<S>& mean, const MeanTypeMapping<S>& mapping,
                           const std::vector<std::vector<S>>& samples) {
  double worst = 0.0;
  for (const auto& v : samples) {
    const std::vector<S> image = mapping(v);
    const S before = mean(std::span<const S>(v));
    const S after = mean(std::span<const S>(image));
    worst = std::max(worst, std::fabs(to_double(S(after - before))));
  }
  return worst;
}

template <Scalar S>
double invariance_residual(const MeanExpr& mean, const MeanTypeMapping<S>& mapping,
                           const std::vector<std::vector<S>>& samples) {
  const ScalarDomain domain{scalar_traits<S>::kind, mapping.domain()};
  return invariance_residual<S>(MeanEvaluator<S>([&](std::span<const S> v) { return eval_mean(mean, v, domain); }),
                                mapping, samples);
}

enum class Verdict { ConvergedUnique, DivergentNonUnique, Inconclusive };

inline std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::ConvergedUnique: return "ConvergedUnique";
    case Verdict::DivergentNonUnique: return "DivergentNonUnique";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

template <Scalar S>
struct SampleVerdict {
  std::vector<S> start;
  Verdict verdict = Verdict::Inconclusive;
  S lower;
  S upper;
  S value;
  std::size_t iterations = 0;
  bool envelopes_monotone = true;
};

template <Scalar S>
struct PrincipleReport {
  std::vector<SampleVerdict<S>> samples;
  /// No sample was both converged and had upper - lower > consistency_slack.
  bool consistent = true;
  double tol = kDefaultTol;
  double consistency_slack = 3 * kDefaultTol;

  std::size_t count(Verdict v) const {
    std::size_t c = 0;
    for (const auto& s : samples) c += s.verdict == v;
    return c;
  }
  bool all_monotone() const {
    for (const auto& s : samples) {
      if (!s.envelopes_monotone) return false;
    }
    return true;
  }
};

struct PrincipleOptions {
  double tol = kDefaultTol;
  std::size_t max_iter = kDefaultMaxIter;
  double consistency_factor = 3.0;
};

/// Classifies one orbit: converged (unique invariant mean at v), stabilized
/// with a positive spread (L(v) != U(v), so invariant means are not unique),
/// or neither within max_iter.
template <Scalar S>
SampleVerdict<S> classify_orbit(const MeanTypeMapping<S>& mapping, std::vector<S> v, const PrincipleOptions& options) {
  require_in_domain(std::span<const S>(v), mapping.domain());
  SampleVerdict<S> out;
  out.start = v;
  std::deque<double> window;
  std::size_t n = 0;
  for (;;) {
    const std::span<const S> cur(v);
    const double spread = to_double(spread_of(cur));
    if (spread <= options.tol) {
      out.verdict = Verdict::ConvergedUnique;
      break;
    }
    window.push_back(spread);
    if (window.size() > kStallWindow) {
      window.pop_front();
      if (std::fabs(window.back() - window.front()) < options.tol * kStallFactor) {
        out.verdict = Verdict::DivergentNonUnique;
        break;
      }
    }
    if (n >= options.max_iter) {
      out.verdict = Verdict::Inconclusive;
      break;
    }
    std::vector<S> next = mapping(v);
    const std::span<const S> nxt(next);
    if (min_of(nxt) < min_of(cur) || max_of(cur) < max_of(nxt)) out.envelopes_monotone = false;
    if (next == v) {
      out.verdict = Verdict::DivergentNonUnique;  // fixed off the diagonal
      break;
    }
    v = std::move(next);
    ++n;
  }
  const std::span<const S> last(v);
  out.lower = min_of(last);
  out.upper = max_of(last);
  out.value = midpoint(out.lower, out.upper);
  out.iterations = n;
  return out;
}

/// Empirical check of the equivalence "unique invariant mean <=> orbits
/// converge to the diagonal" over sampled starting points.
template <Scalar S>
PrincipleReport<S> invariance_principle_check(const MeanTypeMapping<S>& mapping,
                                              const std::vector<std::vector<S>>& samples,
                                              const PrincipleOptions& options = {}) {
  if (!(options.tol > 0.0)) throw Error(ErrorCode::DomainViolation, "tol must be > 0", "tol");
  PrincipleReport<S> report;
  report.tol = options.tol;
  report.consistency_slack = options.consistency_factor * options.tol;
  report.samples.reserve(samples.size());
  for (const auto& v : samples) {
    auto verdict = classify_orbit(mapping, v, options);
    const double width = to_double(S(verdict.upper - verdict.lower));
    if (verdict.verdict == Verdict::ConvergedUnique && width > report.consistency_slack) report.consistent = false;
    report.samples.push_back(std::move(verdict));
  }
  return report;
}

}  // namespace meanmap
