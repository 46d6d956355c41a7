#pragma once

// End-to-end reproduction of the worked examples: Gauss compound means,
// the lambda_alpha family, the Example-1 orbit, the invariance principle and
// the functional-equation characterisation.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "meanmap/catalog.hpp"
#include "meanmap/example1.hpp"
#include "meanmap/funceq.hpp"
#include "meanmap/hamel.hpp"
#include "meanmap/orbit.hpp"

namespace meanmap {

/// AGM(1, 2) to 20 significant digits.
inline constexpr double kAgmOneTwo = 1.4567910310469068692;

struct SweepSummary {
  std::string mapping;
  std::size_t samples = 0;
  std::size_t converged = 0;
  std::size_t divergent = 0;
  std::size_t inconclusive = 0;
  bool consistent = true;          // no (converged and upper - lower > 3 tol)
  bool envelopes_monotone = true;  // every min/max sequence monotone
  bool swap_envelopes_exact = true;  // swap only: lower = min v, upper = max v
};

namespace detail {
template <Scalar S>
SweepSummary summarize(const std::string& name, const PrincipleReport<S>& report) {
  SweepSummary out;
  out.mapping = name;
  out.samples = report.samples.size();
  out.converged = report.count(Verdict::ConvergedUnique);
  out.divergent = report.count(Verdict::DivergentNonUnique);
  out.inconclusive = report.count(Verdict::Inconclusive);
  out.consistent = report.consistent;
  out.envelopes_monotone = report.all_monotone();
  return out;
}
}  // namespace detail

/// Invariance-principle sweep over `count` random starting points of a
/// built-in mapping.
inline SweepSummary principle_sweep(const std::string& name, std::size_t count, std::uint64_t seed,
                                    double tol = kDefaultTol) {
  PrincipleOptions options;
  options.tol = tol;
  if (name == "agm" || name == "ahm") {
    const auto mapping = name == "agm" ? agm_mapping() : ahm_mapping();
    return detail::summarize(name, invariance_principle_check(mapping, box_samples(2, 0.0, 10.0, count, seed), options));
  }
  if (name == "swap") {
    const auto samples = box_samples(2, 0.0, 10.0, count, seed);
    const auto report = invariance_principle_check(swap_mapping<double>(), samples, options);
    auto summary = detail::summarize(name, report);
    for (const auto& s : report.samples) {
      const std::span<const double> v(s.start);
      if (s.lower != min_of(v) || s.upper != max_of(v)) summary.swap_envelopes_exact = false;
    }
    return summary;
  }
  if (name == "example1") {
    return detail::summarize(
        name, invariance_principle_check(example1_mapping<double>(), box_samples(3, 0.0, 1.0, count, seed), options));
  }
  if (name == "hamel-mn") {
    return detail::summarize(name, invariance_principle_check(hamel_mn<HamelImage>(), hamel_samples(count, seed), options));
  }
  throw Error(ErrorCode::DomainViolation, "unknown built-in mapping '" + name + "'", "mapping");
}

struct HamelExactCheck {
  std::size_t steps_requested = 0;
  std::size_t steps_done = 0;
  bool complete = false;
  bool sum_conserved = true;
  bool mirror = true;
  bool gap_bound = true;
};

/// Verifies M_k + N_k = u + v, N_k = 2A(u,v) - M_k and
/// |M_k - N_k| <= kappa^k |u - v| exactly along the orbit.
inline HamelExactCheck check_hamel_exact_orbit(const LambdaParams& params, const AdditiveFunctional& f,
                                               const ExactHamel& u, const ExactHamel& v, std::size_t steps,
                                               std::size_t max_bits = 0) {
  const auto orbit = mn_orbit_within(params, f, u, v, steps, max_bits);
  HamelExactCheck out;
  out.steps_requested = steps;
  out.steps_done = orbit.pairs.size() - 1;
  out.complete = orbit.complete;
  const ExactHamel total = u + v;
  const ExactHamel initial_gap = abs(ExactHamel(u - v));
  Rational kappa_power(1);
  for (std::size_t k = 0; k < orbit.pairs.size(); ++k) {
    const auto& [m, n] = orbit.pairs[k];
    if (!(m + n == total)) out.sum_conserved = false;
    if (!(n == total - m)) out.mirror = false;
    if (initial_gap.scaled(kappa_power) < abs(ExactHamel(m - n))) out.gap_bound = false;
    kappa_power *= params.kappa();
  }
  return out;
}

struct ReproductionOptions {
  double agm_tol = 1e-12;
  Rational lambda_b{1};
  Rational lambda_c{4, 3};
  Rational lambda_d{4};
  Rational lambda_kappa{1, 2};
  std::size_t hamel_exact_steps = 12;
  unsigned example1_max_i = 20;
  std::size_t sweep_samples = 200;
  std::uint64_t seed = 20240601;
};

struct ReproductionCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReproductionReport {
  std::vector<ReproductionCheck> checks;

  bool all_pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return !checks.empty();
  }

  nlohmann::json to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) list.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"pass", all_pass()}, {"checks", list}};
  }
};

inline ReproductionReport run_reproduction_suite(const ReproductionOptions& options = {}) {
  ReproductionReport report;
  const auto add = [&report](std::string name, bool pass, std::string detail) {
    report.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  const auto guarded = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const Error& e) {
      add(name, false, e.what());
    }
  };
  const auto num = [](double x) { return scalar_traits<double>::to_string(x); };

  guarded("ahm-compound", [&] {
    const auto r = compound_mean(ahm_mapping(), {2.0, 8.0}, 1e-12);
    add("ahm-compound", r.converged() && std::fabs(r.value - 4.0) <= 1e-12,
        "K(2,8) = " + num(r.value) + " after " + std::to_string(r.iterations) + " steps");
  });

  guarded("agm-compound", [&] {
    const auto r = compound_mean(agm_mapping(), {1.0, 2.0}, 1e-12);
    const double err = std::fabs(r.value - kAgmOneTwo);
    add("agm-compound", r.converged() && err <= options.agm_tol,
        "K(1,2) = " + num(r.value) + ", |error| = " + num(err) + ", tol = " + num(options.agm_tol));
  });

  const auto bad = check_lambda_params(options.lambda_b, options.lambda_c, options.lambda_d, options.lambda_kappa);
  add("lambda-params", !bad, bad ? "violates " + std::string(to_string(*bad)) : "all constraints hold");

  if (!bad) {
    const auto params =
        validate_lambda_params(options.lambda_b, options.lambda_c, options.lambda_d, options.lambda_kappa);
    const AdditiveFunctional alpha;
    guarded("lambda-range", [&] {
      bool ok = true;
      std::string seen;
      for (const long t : {0L, 1L, 10L, 1000000L}) {
        const Rational lambda = lambda_of_alpha(params, Rational(t));
        ok = ok && params.lower_bound() <= lambda && lambda <= params.upper_bound();
        seen += (seen.empty() ? "" : ", ") + lambda.to_string();
      }
      add("lambda-range", ok, "lambda = " + seen);
    });

    guarded("hamel-exact-orbit", [&] {
      const auto c = check_hamel_exact_orbit(params, alpha, ExactHamel::surd(), ExactHamel(), options.hamel_exact_steps);
      add("hamel-exact-orbit", c.complete && c.sum_conserved && c.mirror && c.gap_bound,
          std::to_string(c.steps_done) + " exact steps; sum " + (c.sum_conserved ? "ok" : "BROKEN") + ", mirror " +
              (c.mirror ? "ok" : "BROKEN") + ", gap bound " + (c.gap_bound ? "ok" : "BROKEN"));
    });

    guarded("hamel-compound", [&] {
      const auto mapping = hamel_mn<HamelImage>(params, alpha);
      const auto r = compound_mean(mapping, {HamelImage::surd(), HamelImage()}, 1e-12);
      const double err = std::fabs(r.value.value() - std::numbers::sqrt2 / 2);
      add("hamel-compound", r.converged() && err <= 1e-12, "K(sqrt2, 0) = " + num(r.value.value()));
    });
  }

  guarded("example1-orbits", [&] {
    const auto mapping = example1_mapping<Rational>();
    bool orbits = true;
    bool probes = true;
    for (unsigned i = 1; i <= options.example1_max_i; ++i) {
      for (const Rational& x : {Rational(0), Rational(1, 2)}) {
        std::vector<Rational> v = example1_orbit_formula(x, i, 0);
        for (unsigned n = 0; n <= i + 3; ++n) {
          if (v != example1_orbit_formula(x, i, n)) orbits = false;
          v = mapping(v);
        }
        const auto probe = weak_contractivity_probe(mapping, example1_orbit_formula(x, i, 0), i + 10);
        if (!probe.n0 || *probe.n0 != i + 2) probes = false;
      }
    }
    add("example1-orbits", orbits && probes,
        std::string("orbit formula ") + (orbits ? "matches" : "MISMATCH") + ", n0 = i+2 " + (probes ? "ok" : "FAILED"));
  });

  guarded("theorem1-sweep", [&] {
    bool ok = true;
    std::string detail;
    for (const char* name : {"ahm", "agm", "hamel-mn", "swap", "example1"}) {
      const auto s = principle_sweep(name, options.sweep_samples, options.seed);
      ok = ok && s.consistent && s.envelopes_monotone && s.swap_envelopes_exact;
      detail += std::string(detail.empty() ? "" : "; ") + name + ": " + std::to_string(s.converged) + "/" +
                std::to_string(s.samples) + " converged";
    }
    add("theorem1-sweep", ok, detail);
  });

  guarded("theorem3-roundtrip", [&] {
    bool ok = true;
    double worst = 0.0;
    std::vector<double> ts;
    for (int k = 1; k <= 20; ++k) ts.push_back(0.5 * k);
    for (const auto& mapping : {ahm_mapping(), agm_mapping()}) {
      const auto samples = box_samples(2, 0.0, 10.0, options.sweep_samples, options.seed);
      for (const auto& phi : {DiagonalFunction::identity(), DiagonalFunction::square(), DiagonalFunction::exp()}) {
        const auto f = build_invariant_function(mapping, phi);
        const auto v = verify_invariance_equation(f, mapping, samples, 1e-8);
        worst = std::max(worst, v.max_residual);
        ok = ok && v.pass;
        const auto table = recover_phi(f, ts);
        for (const double t : ts) ok = ok && std::fabs(table(t) - phi(t)) <= 1e-10;
      }
      const auto step = remark4_counterexample(DiagonalFunction::step(4.0), mapping);
      const auto v = verify_invariance_equation(step, mapping, samples, 0.0);
      ok = ok && v.pass && v.max_residual == 0.0;
    }
    add("theorem3-roundtrip", ok, "max residual " + num(worst));
  });

  guarded("conjugation", [&] {
    const auto conj = conjugate_mapping(Generator::log(), ahm_mapping());
    const auto lhs = compound_mean(conj, {std::exp(2.0), std::exp(4.0)});
    const auto rhs = compound_mean(ahm_mapping(), {2.0, 4.0});
    const double err = std::fabs(lhs.value - std::exp(rhs.value));
    add("conjugation", lhs.converged() && rhs.converged() && err <= 1e-10, "|difference| = " + num(err));
  });

  return report;
}

}  // namespace meanmap
