#pragma once

// Command-line front end. Kept in a header so tests can drive run_cli()
// in-process.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "meanmap/meanmap.hpp"

namespace meanmap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNonConvergent = 2;
inline constexpr int kExitUsage = 64;

struct Config {
  std::string command;
  std::string mapping = "agm";
  std::string vector_text;
  double tol = kDefaultTol;
  std::size_t max_iter = kDefaultMaxIter;
  std::size_t n_max = 1000;
  std::string out;
  std::string format;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::string phi = "identity";
  std::string candidate = "geometric";
  std::string lambda = "1,4/3,4,1/2";
  std::string functional = "0,1";
  std::size_t steps = 12;
  double margin = 1e-6;
  double agm_tol = 1e-12;
  bool tol_set = false;
  bool samples_set = false;
  bool seed_set = false;
};

enum class InputKind { Binary64, Rational, Hamel };

struct ParsedVector {
  InputKind kind = InputKind::Binary64;
  std::vector<ExactHamel> exact;  // every token in exact form
  std::vector<double> binary64;   // every token as a binary64 value
};

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

/// Decimal tokens route to Binary64; "p/q" to exact rationals; anything with
/// sqrt(d) to exact Hamel numbers.
inline ParsedVector parse_vector(const std::string& text) {
  ParsedVector out;
  if (text.empty()) throw Error(ErrorCode::DomainViolation, "--v is required", "--v");
  for (const auto& token : split(text, ',')) {
    if (token.find("sqrt(") != std::string::npos) {
      out.kind = InputKind::Hamel;
      out.exact.push_back(parse_hamel(token));
    } else if (token.find('/') != std::string::npos) {
      if (out.kind == InputKind::Binary64) out.kind = InputKind::Rational;
      out.exact.push_back(ExactHamel::rational(Rational::parse(token)));
    } else {
      std::size_t used = 0;
      double x = 0;
      try {
        x = std::stod(token, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used == 0 || token.find_first_not_of(" \t", used) != std::string::npos) {
        throw Error(ErrorCode::DomainViolation, "cannot parse '" + token + "' as a scalar", "--v");
      }
      out.exact.push_back(ExactHamel::rational(Rational::from_double(x)));
    }
    out.binary64.push_back(out.exact.back().value());
  }
  return out;
}

inline std::vector<Rational> rational_part(const ParsedVector& v) {
  std::vector<Rational> out;
  for (const auto& h : v.exact) {
    if (!h.q1().is_zero()) throw Error(ErrorCode::DomainViolation, "mapping needs rational inputs", "--v");
    out.push_back(h.q0());
  }
  return out;
}

inline std::vector<HamelImage> image_part(const ParsedVector& v) {
  std::vector<HamelImage> out;
  for (const auto& h : v.exact) out.push_back(to_image(h));
  return out;
}

inline LambdaParams parse_lambda(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw Error(ErrorCode::InvalidParams, "--lambda needs b,c,d,kappa", "--lambda");
  return validate_lambda_params(Rational::parse(parts[0]), Rational::parse(parts[1]), Rational::parse(parts[2]),
                                Rational::parse(parts[3]));
}

inline AdditiveFunctional parse_functional(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2 && parts.size() != 3) {
    throw Error(ErrorCode::InvalidParams, "--functional needs a0,a1[,d]", "--functional");
  }
  const long d = parts.size() == 3 ? std::stol(parts[2]) : kDefaultSurd;
  return AdditiveFunctional(Rational::parse(parts[0]), Rational::parse(parts[1]), d);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::DomainViolation, "cannot open '" + path + "'", "path");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline double bound_from_json(const nlohmann::json& j, double fallback, const std::string& path) {
  if (j.is_null()) return fallback;
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return Rational::parse(s).to_double();
  }
  throw Error(ErrorCode::SchemaError, path + ": bound must be a number, null or \"inf\"", path);
}

/// Mapping document: {"version":1, "domain":[lo,hi], "coordinates":[expr,...]}
/// or {"conjugate": generator, "inner": <mapping document or "builtin:name">}.
struct ExprMappingDoc {
  std::vector<MeanExpr> coordinates;
  Interval domain;
  std::optional<Generator> conjugate;
  std::string inner_builtin;
  std::shared_ptr<ExprMappingDoc> inner;
  std::string name;
};

inline ExprMappingDoc parse_mapping_doc(const nlohmann::json& doc, const std::string& name) {
  ExprMappingDoc out;
  out.name = name;
  if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "/: mapping document must be an object", "/");
  if (doc.contains("version") && doc["version"] != kMeanSchemaVersion) {
    throw Error(ErrorCode::SchemaError, "/version: unsupported schema version", "/version");
  }
  if (doc.contains("conjugate")) {
    out.conjugate = detail::parse_generator(doc["conjugate"], "/conjugate");
    if (!doc.contains("inner")) throw Error(ErrorCode::SchemaError, "/inner: missing field", "/inner");
    if (doc["inner"].is_string()) {
      out.inner_builtin = doc["inner"].get<std::string>();
    } else {
      out.inner = std::make_shared<ExprMappingDoc>(parse_mapping_doc(doc["inner"], name + "/inner"));
    }
    return out;
  }
  if (!doc.contains("coordinates") || !doc["coordinates"].is_array()) {
    throw Error(ErrorCode::SchemaError, "/coordinates: expected an array of mean expressions", "/coordinates");
  }
  for (std::size_t i = 0; i < doc["coordinates"].size(); ++i) {
    out.coordinates.push_back(detail::parse_node(doc["coordinates"][i], "/coordinates/" + std::to_string(i)));
  }
  out.domain = Interval::real_line();
  if (doc.contains("domain")) {
    const auto& d = doc["domain"];
    if (!d.is_array() || d.size() != 2) throw Error(ErrorCode::SchemaError, "/domain: expected [lo, hi]", "/domain");
    out.domain = {bound_from_json(d[0], -std::numeric_limits<double>::infinity(), "/domain/0"),
                  bound_from_json(d[1], std::numeric_limits<double>::infinity(), "/domain/1")};
  }
  return out;
}

using AnyMapping = std::variant<MeanTypeMapping<double>, MeanTypeMapping<Rational>, MeanTypeMapping<ExactHamel>,
                                MeanTypeMapping<HamelImage>>;

inline std::string builtin_name(const std::string& spec) {
  const std::string prefix = "builtin:";
  std::string name = spec.rfind(prefix, 0) == 0 ? spec.substr(prefix.size()) : spec;
  for (const auto& b : builtin_mappings()) {
    if (b.name == name) return name;
  }
  if (spec.rfind(prefix, 0) == 0) {
    throw Error(ErrorCode::DomainViolation, "unknown built-in mapping '" + name + "' (see --list-mappings)",
                "--mapping");
  }
  return {};
}

inline MeanTypeMapping<double> binary64_mapping(const ExprMappingDoc& doc);

inline MeanTypeMapping<double> binary64_builtin(const std::string& name) {
  if (name == "agm") return agm_mapping();
  if (name == "ahm") return ahm_mapping();
  if (name == "swap") return swap_mapping<double>();
  if (name == "example1") return example1_mapping<double>();
  throw Error(ErrorCode::DomainViolation, "mapping '" + name + "' has no binary64 form", "--mapping");
}

inline MeanTypeMapping<double> binary64_mapping(const ExprMappingDoc& doc) {
  if (doc.conjugate) {
    const auto inner = doc.inner ? binary64_mapping(*doc.inner) : binary64_builtin(builtin_name(doc.inner_builtin));
    return conjugate_mapping(*doc.conjugate, inner);
  }
  return expr_vector<double>(doc.coordinates, doc.domain, doc.name);
}

/// Resolves --mapping against the input kind. Returns the mapping together
/// with the matching starting vector.
struct Resolved {
  AnyMapping mapping;
  std::variant<std::vector<double>, std::vector<Rational>, std::vector<ExactHamel>, std::vector<HamelImage>> start;
};

inline Resolved resolve(const std::string& spec, const ParsedVector& v) {
  const std::string name = builtin_name(spec);
  if (name == "hamel-mn") return {hamel_mn<HamelImage>(), image_part(v)};
  if (name == "swap") {
    if (v.kind == InputKind::Hamel) return {swap_mapping<ExactHamel>(), v.exact};
    if (v.kind == InputKind::Rational) return {swap_mapping<Rational>(), rational_part(v)};
    return {swap_mapping<double>(), v.binary64};
  }
  if (name == "example1") {
    if (v.kind == InputKind::Binary64) return {example1_mapping<double>(), v.binary64};
    return {example1_mapping<Rational>(), rational_part(v)};
  }
  if (!name.empty()) return {binary64_builtin(name), v.binary64};
  const auto doc = parse_mapping_doc(nlohmann::json::parse(read_file(spec)), spec);
  if (!doc.conjugate && v.kind == InputKind::Rational) {
    return {expr_vector<Rational>(doc.coordinates, doc.domain, spec), rational_part(v)};
  }
  if (!doc.conjugate && v.kind == InputKind::Hamel) {
    return {expr_vector<ExactHamel>(doc.coordinates, doc.domain, spec), v.exact};
  }
  return {binary64_mapping(doc), v.binary64};
}

/// Float-only resolution for sampling commands (principle, verify, funceq).
using FloatMapping = std::variant<MeanTypeMapping<double>, MeanTypeMapping<HamelImage>>;

inline FloatMapping resolve_float(const std::string& spec) {
  const std::string name = builtin_name(spec);
  if (name == "hamel-mn") return hamel_mn<HamelImage>();
  if (!name.empty()) return binary64_builtin(name);
  return binary64_mapping(parse_mapping_doc(nlohmann::json::parse(read_file(spec)), spec));
}

inline std::vector<std::vector<double>> samples_for(const MeanTypeMapping<double>& mapping, std::size_t count,
                                                    std::uint64_t seed) {
  const Interval& d = mapping.domain();
  if (d.bounded()) return box_samples(mapping.arity(), d.lower, d.upper, count, seed);
  const double lo = std::isfinite(d.lower) ? std::max(d.lower, 0.0) : 0.0;
  return box_samples(mapping.arity(), lo, lo + 10.0, count, seed);
}

inline std::vector<std::vector<HamelImage>> samples_for(const MeanTypeMapping<HamelImage>&, std::size_t count,
                                                        std::uint64_t seed) {
  return hamel_samples(count, seed);
}

inline MeanExpr candidate_mean(const std::string& spec, std::size_t arity) {
  if (spec == "arithmetic") return MeanExpr::arithmetic(arity);
  if (spec == "geometric") return MeanExpr::geometric(arity);
  if (spec == "harmonic") return MeanExpr::harmonic(arity);
  if (spec == "min") return MeanExpr::minimum(arity);
  if (spec == "max") return MeanExpr::maximum(arity);
  return parse_mean_expr(read_file(spec));
}

inline DiagonalFunction phi_from(const std::string& spec) {
  if (spec.rfind("table:", 0) == 0) {
    std::ifstream in(spec.substr(6));
    if (!in) throw Error(ErrorCode::DomainViolation, "cannot open phi table '" + spec.substr(6) + "'", "--phi");
    return DiagonalFunction::read_table_csv(in);
  }
  return DiagonalFunction::parse(spec);
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::DomainViolation, "cannot write '" + path + "'", "--out");
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline int cmd_compound(const Config& cfg, std::ostream& out) {
  const auto r = resolve(cfg.mapping, parse_vector(cfg.vector_text));
  return std::visit(
      [&](const auto& mapping) {
        using S = std::decay_t<decltype(mapping)>::Vector::value_type;
        const auto result = compound_mean(mapping, std::get<std::vector<S>>(r.start), cfg.tol, cfg.max_iter);
        Output sink(cfg.out, out);
        if (cfg.format == "json") {
          auto j = to_json(result);
          j["mapping"] = mapping.name();
          sink.stream() << j.dump(2) << '\n';
        } else {
          sink.stream() << format_scalar(result.value) << '\n';
        }
        return result.converged() ? kExitOk : kExitNonConvergent;
      },
      r.mapping);
}

inline int cmd_orbit(const Config& cfg, std::ostream& out) {
  const auto r = resolve(cfg.mapping, parse_vector(cfg.vector_text));
  return std::visit(
      [&](const auto& mapping) {
        using S = std::decay_t<decltype(mapping)>::Vector::value_type;
        const auto trace = orbit(mapping, std::get<std::vector<S>>(r.start), {cfg.tol, cfg.max_iter});
        Output sink(cfg.out, out);
        if (cfg.format == "json") {
          auto j = trace_json(trace);
          j["mapping"] = mapping.name();
          sink.stream() << j.dump(2) << '\n';
        } else {
          write_trace_csv(sink.stream(), trace);
        }
        const bool on_diagonal = trace.last().min == trace.last().max;
        const bool converged = trace.stop_reason == StopReason::SpreadTol ||
                               (trace.stop_reason == StopReason::ExactFixpoint && on_diagonal);
        return converged ? kExitOk : kExitNonConvergent;
      },
      r.mapping);
}

inline int cmd_probe(const Config& cfg, std::ostream& out) {
  const auto r = resolve(cfg.mapping, parse_vector(cfg.vector_text));
  return std::visit(
      [&](const auto& mapping) {
        using S = std::decay_t<decltype(mapping)>::Vector::value_type;
        const auto report = weak_contractivity_probe(mapping, std::get<std::vector<S>>(r.start), cfg.n_max);
        Output sink(cfg.out, out);
        if (cfg.format == "json") {
          sink.stream() << to_json(report).dump(2) << '\n';
        } else if (report.n0) {
          sink.stream() << "n0=" << *report.n0 << '\n';
        } else {
          sink.stream() << "n0=NotFound(" << report.n_max << ")\n";
        }
        return report.found() ? kExitOk : kExitNonConvergent;
      },
      r.mapping);
}

inline int cmd_principle(const Config& cfg, std::ostream& out) {
  const auto mapping_variant = resolve_float(cfg.mapping);
  return std::visit(
      [&](const auto& mapping) {
        using S = std::decay_t<decltype(mapping)>::Vector::value_type;
        std::vector<std::vector<S>> samples;
        if (!cfg.vector_text.empty()) {
          const auto parsed = parse_vector(cfg.vector_text);
          if constexpr (std::is_same_v<S, double>) {
            samples.push_back(parsed.binary64);
          } else {
            samples.push_back(image_part(parsed));
          }
        } else {
          samples = samples_for(mapping, cfg.samples, cfg.seed);
        }
        PrincipleOptions options;
        options.tol = cfg.tol;
        options.max_iter = cfg.max_iter;
        const auto report = invariance_principle_check(mapping, samples, options);
        auto j = to_json(report);
        j["mapping"] = mapping.name();
        Output sink(cfg.out, out);
        sink.stream() << j.dump(2) << '\n';
        return report.consistent ? kExitOk : kExitInvalid;
      },
      mapping_variant);
}

inline int cmd_verify(const Config& cfg, std::ostream& out) {
  const auto mapping = std::visit(
      [](const auto& m) -> MeanTypeMapping<double> {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, MeanTypeMapping<double>>) {
          return m;
        } else {
          throw Error(ErrorCode::DomainViolation, "verify evaluates candidate means in binary64", "--mapping");
        }
      },
      resolve_float(cfg.mapping));
  const MeanExpr candidate = candidate_mean(cfg.candidate, mapping.arity());
  const auto samples = samples_for(mapping, cfg.samples, cfg.seed);
  const double residual = invariance_residual(candidate, mapping, samples);
  const bool pass = residual <= cfg.tol;
  nlohmann::json j = {{"mapping", mapping.name()}, {"candidate", to_json(candidate)}, {"samples", samples.size()},
                      {"max_residual", residual},  {"tol", cfg.tol},                  {"pass", pass}};
  Output sink(cfg.out, out);
  sink.stream() << j.dump(2) << '\n';
  return pass ? kExitOk : kExitInvalid;
}

inline int cmd_funceq(const Config& cfg, std::ostream& out) {
  const DiagonalFunction phi = phi_from(cfg.phi);
  const double tol = cfg.tol_set ? cfg.tol : 1e-8;
  return std::visit(
      [&](const auto& mapping) {
        using S = std::decay_t<decltype(mapping)>::Vector::value_type;
        const auto f = remark4_counterexample(phi, mapping, kDefaultTol, cfg.max_iter);
        const auto samples = samples_for(mapping, cfg.samples, cfg.seed);
        const auto report = verify_invariance_equation(f, mapping, samples, tol, cfg.margin);
        auto j = to_json(report);
        j["phi_continuous"] = phi.continuous();
        if (!cfg.vector_text.empty()) {
          const auto parsed = parse_vector(cfg.vector_text);
          if constexpr (std::is_same_v<S, double>) {
            j["F"] = f(parsed.binary64);
          } else {
            j["F"] = f(image_part(parsed));
          }
        }
        Output sink(cfg.out, out);
        sink.stream() << j.dump(2) << '\n';
        return report.pass ? kExitOk : kExitInvalid;
      },
      resolve_float(cfg.mapping));
}

inline int cmd_hamel_demo(const Config& cfg, std::ostream& out) {
  const auto params = parse_lambda(cfg.lambda);
  const auto alpha = parse_functional(cfg.functional);
  const auto parsed = parse_vector(cfg.vector_text.empty() ? "sqrt(2),0" : cfg.vector_text);
  if (parsed.exact.size() != 2) throw Error(ErrorCode::ArityMismatch, "hamel-demo needs two scalars", "--v");
  const auto orbit = mn_orbit_within(params, alpha, parsed.exact[0], parsed.exact[1], cfg.steps);
  const auto check = check_hamel_exact_orbit(params, alpha, parsed.exact[0], parsed.exact[1], cfg.steps);
  auto j = to_json(orbit);
  j["lambda"] = {{"b", params.b().to_string()},
                 {"c", params.c().to_string()},
                 {"d", params.d().to_string()},
                 {"kappa", params.kappa().to_string()}};
  j["functional"] = {{"a0", alpha.a0().to_string()}, {"a1", alpha.a1().to_string()}, {"d", alpha.d()}};
  j["checks"] = {{"sum_conserved", check.sum_conserved}, {"mirror", check.mirror}, {"gap_bound", check.gap_bound}};
  Output sink(cfg.out, out);
  sink.stream() << j.dump(2) << '\n';
  return check.sum_conserved && check.mirror && check.gap_bound ? kExitOk : kExitInvalid;
}

inline int cmd_reproduce(const Config& cfg, std::ostream& out) {
  ReproductionOptions options;
  options.agm_tol = cfg.agm_tol;
  const auto parts = split(cfg.lambda, ',');
  if (parts.size() != 4) throw Error(ErrorCode::InvalidParams, "--lambda needs b,c,d,kappa", "--lambda");
  options.lambda_b = Rational::parse(parts[0]);
  options.lambda_c = Rational::parse(parts[1]);
  options.lambda_d = Rational::parse(parts[2]);
  options.lambda_kappa = Rational::parse(parts[3]);
  if (cfg.samples_set) options.sweep_samples = cfg.samples;
  if (cfg.seed_set) options.seed = cfg.seed;
  const auto report = run_reproduction_suite(options);
  Output sink(cfg.out, out);
  sink.stream() << report.to_json().dump(2) << '\n';
  return report.all_pass() ? kExitOk : kExitInvalid;
}

inline void list_mappings(std::ostream& out) {
  for (const auto& b : builtin_mappings()) {
    out << "builtin:" << b.name << "\tp=" << b.arity << "\t" << b.scalars << "\t" << b.description << '\n';
  }
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean-type mappings: compound means, orbits, invariance checks"};
  app.require_subcommand(0, 1);
  Config cfg;
  bool list = false;
  app.add_flag("--list-mappings", list, "List the built-in mappings");

  const auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--mapping", cfg.mapping, "builtin:<name> or a mapping JSON file");
    sub->add_option("--v", cfg.vector_text, "Starting vector, comma separated (decimal, p/q or a+b*sqrt(d))");
    sub->add_option("--tol", cfg.tol, "Spread tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", cfg.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "Write output here instead of stdout");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
    sub->add_option("--samples", cfg.samples, "Number of random samples")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Seed for sample generation");
  };

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"compound", "Compound (invariant) mean at --v"},
                      {"orbit", "Orbit trace at --v (CSV by default)"},
                      {"probe", "Weak-contractivity probe: first n with spread(M^n v) < spread(v)"},
                      {"verify", "Invariance residual of a candidate mean K: max |K(M v) - K(v)|"},
                      {"principle", "Invariance-principle verdicts over random samples (or --v)"},
                      {"hamel-demo", "Exact lambda_alpha orbit on the Q-span of {1, sqrt(d)}"},
                      {"funceq", "Build F = phi o K and verify F o M = F"},
                      {"reproduce", "Run the full reproduction suite"}};
  std::map<std::string, CLI::App*> handles;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    handles[s.name] = sub;
  }
  handles["probe"]->add_option("--n-max", cfg.n_max, "Largest n to try")->check(CLI::PositiveNumber);
  handles["verify"]->add_option("--candidate", cfg.candidate,
                                "arithmetic|geometric|harmonic|min|max or a mean JSON file");
  handles["funceq"]->add_option("--phi", cfg.phi, "identity|square|exp|log|negation|step:<t>|table:<csv>");
  handles["funceq"]->add_option("--margin", cfg.margin, "Jump-avoidance margin for discontinuous phi");
  for (const char* name : {"hamel-demo", "reproduce"}) {
    handles[name]->add_option("--lambda", cfg.lambda, "b,c,d,kappa");
  }
  handles["hamel-demo"]->add_option("--functional", cfg.functional, "a0,a1[,d]");
  handles["hamel-demo"]->add_option("--steps", cfg.steps, "Number of exact steps");
  handles["reproduce"]->add_option("--agm-tol", cfg.agm_tol, "Tolerance of the AGM check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (list) {
    list_mappings(out);
    return kExitOk;
  }
  std::string command;
  for (const auto& [name, handle] : handles) {
    if (handle->parsed()) command = name;
  }
  if (command.empty()) {
    err << "usage error: a subcommand is required\n" << app.help();
    return kExitUsage;
  }
  cfg.tol_set = handles[command]->count("--tol") > 0;
  cfg.samples_set = handles[command]->count("--samples") > 0;
  cfg.seed_set = handles[command]->count("--seed") > 0;

  try {
    if (command == "compound") return cmd_compound(cfg, out);
    if (command == "orbit") return cmd_orbit(cfg, out);
    if (command == "probe") return cmd_probe(cfg, out);
    if (command == "principle") return cmd_principle(cfg, out);
    if (command == "verify") return cmd_verify(cfg, out);
    if (command == "funceq") return cmd_funceq(cfg, out);
    if (command == "hamel-demo") return cmd_hamel_demo(cfg, out);
    if (command == "reproduce") return cmd_reproduce(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << (e.detail().empty() ? "" : " [" + e.detail() + "]") << '\n';
    return e.code() == ErrorCode::NonConvergent ? kExitNonConvergent : kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    err << "error: SchemaError: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitUsage;
}

}  // namespace meanmap::cli
