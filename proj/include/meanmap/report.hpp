#pragma once

// CSV orbit traces and JSON reports.

#include <ostream>
#include <string>
#include <type_traits>

#include <json.hpp>

#include "meanmap/funceq.hpp"
#include "meanmap/hamel.hpp"
#include "meanmap/orbit.hpp"
#include "meanmap/scalar.hpp"

namespace meanmap {

/// Binary64 values become JSON numbers; exact values become
/// {"exact": text, "binary64": image}.
template <Scalar S>
nlohmann::json scalar_json(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    return x;
  } else {
    return {{"exact", format_scalar(x)}, {"binary64", to_double(x)}};
  }
}

template <Scalar S>
nlohmann::json vector_json(const std::vector<S>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(scalar_json(x));
  return out;
}

/// Header n,v1,...,vp,min,max,spread; binary64 printed with 17 significant
/// digits, exact scalars in their text form.
template <Scalar S>
void write_trace_csv(std::ostream& out, const OrbitTrace<S>& trace) {
  const std::size_t p = trace.steps.empty() ? 0 : trace.steps.front().point.size();
  out << "n";
  for (std::size_t i = 1; i <= p; ++i) out << ",v" << i;
  out << ",min,max,spread\n";
  for (const auto& step : trace.steps) {
    out << step.n;
    for (const auto& x : step.point) out << ',' << format_scalar(x);
    out << ',' << format_scalar(step.min) << ',' << format_scalar(step.max) << ',' << format_scalar(step.spread)
        << '\n';
  }
}

template <Scalar S>
nlohmann::json trace_json(const OrbitTrace<S>& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : trace.steps) {
    steps.push_back({{"n", step.n},
                     {"v", vector_json(step.point)},
                     {"min", scalar_json(step.min)},
                     {"max", scalar_json(step.max)},
                     {"spread", scalar_json(step.spread)}});
  }
  return {{"stop_reason", to_string(trace.stop_reason)}, {"steps", steps}};
}

template <Scalar S>
nlohmann::json to_json(const CompoundResult<S>& result) {
  return {{"value", scalar_json(result.value)},
          {"spread_at_stop", scalar_json(result.spread_at_stop)},
          {"lower", scalar_json(result.lower)},
          {"upper", scalar_json(result.upper)},
          {"iterations", result.iterations},
          {"status", to_string(result.status)}};
}

template <Scalar S>
nlohmann::json to_json(const ContractivityReport<S>& report) {
  nlohmann::json history = nlohmann::json::array();
  for (const auto& s : report.spread_history) history.push_back(scalar_json(s));
  nlohmann::json out = {{"n_max", report.n_max}, {"spread_history", history}};
  if (report.n0) {
    out["n0"] = *report.n0;
  } else {
    out["n0"] = "NotFound";
  }
  return out;
}

template <Scalar S>
nlohmann::json to_json(const PrincipleReport<S>& report) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : report.samples) {
    samples.push_back({{"start", vector_json(s.start)},
                       {"verdict", to_string(s.verdict)},
                       {"lower", scalar_json(s.lower)},
                       {"upper", scalar_json(s.upper)},
                       {"value", scalar_json(s.value)},
                       {"iterations", s.iterations},
                       {"envelopes_monotone", s.envelopes_monotone}});
  }
  return {{"tol", report.tol},
          {"consistency_slack", report.consistency_slack},
          {"consistent", report.consistent},
          {"envelopes_monotone", report.all_monotone()},
          {"counts",
           {{"ConvergedUnique", report.count(Verdict::ConvergedUnique)},
            {"DivergentNonUnique", report.count(Verdict::DivergentNonUnique)},
            {"Inconclusive", report.count(Verdict::Inconclusive)}}},
          {"samples", samples}};
}

inline nlohmann::json to_json(const VerificationReport& report) {
  return {{"mapping", report.mapping},   {"phi", report.phi},         {"samples", report.samples},
          {"filtered", report.filtered}, {"margin", report.margin},   {"max_residual", report.max_residual},
          {"tol", report.tol},           {"pass", report.pass}};
}

template <Scalar S>
nlohmann::json to_json(const MnOrbit<S>& orbit) {
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t k = 0; k < orbit.pairs.size(); ++k) {
    pairs.push_back({{"k", k}, {"m", scalar_json(orbit.pairs[k].m)}, {"n", scalar_json(orbit.pairs[k].n)}});
  }
  return {{"complete", orbit.complete}, {"pairs", pairs}};
}

}  // namespace meanmap
