#pragma once

// JSON (de)serialization of mean expressions. Schema: docs/mean-expr.schema.json.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "meanmap/error.hpp"
#include "meanmap/mean_expr.hpp"

namespace meanmap {

inline constexpr int kMeanSchemaVersion = 1;

namespace detail {

using nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& path, const std::string& why) {
  throw Error(ErrorCode::SchemaError, (path.empty() ? std::string("/") : path) + ": " + why,
              path.empty() ? "/" : path);
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(path + "/" + key, "missing field");
  return *it;
}

inline Rational parse_rational_field(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) schema_error(path, "rational must be a \"num/den\" string or an integer");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    schema_error(path, e.message());
  }
}

inline std::size_t parse_arity(const json& j, const std::string& path) {
  const json& p = field(j, "p", path);
  if (!p.is_number_unsigned() || p.get<std::size_t>() < 2) schema_error(path + "/p", "arity must be an integer >= 2");
  return p.get<std::size_t>();
}

inline std::vector<Rational> parse_weights(const json& j, const std::string& path) {
  const json& w = field(j, "weights", path);
  if (!w.is_array()) schema_error(path + "/weights", "expected an array");
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < w.size(); ++i) {
    weights.push_back(parse_rational_field(w[i], path + "/weights/" + std::to_string(i)));
  }
  return weights;
}

inline double parse_exponent(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    try {
      return Rational::parse(text).to_double();
    } catch (const Error&) {
    }
  }
  schema_error(path, "exponent must be a number, \"inf\", \"-inf\" or \"num/den\"");
}

inline json exponent_to_json(double r) {
  if (std::isinf(r)) return r > 0 ? "inf" : "-inf";
  return r;
}

inline Generator parse_generator(const json& j, const std::string& path) {
  std::string name;
  if (j.is_string()) {
    name = j.get<std::string>();
  } else if (j.is_object()) {
    const json& n = field(j, "name", path);
    if (!n.is_string()) schema_error(path + "/name", "expected a string");
    name = n.get<std::string>();
  } else {
    schema_error(path, "generator must be a name or {\"name\":\"power\",\"r\":...}");
  }
  if (name == "identity") return Generator::identity();
  if (name == "log") return Generator::log();
  if (name == "exp") return Generator::exp();
  if (name == "negation") return Generator::negation();
  if (name == "power") {
    if (!j.is_object()) schema_error(path, "power generator needs an exponent: {\"name\":\"power\",\"r\":...}");
    const double r = parse_exponent(field(j, "r", path), path + "/r");
    try {
      return Generator::power(r);
    } catch (const Error& e) {
      schema_error(path + "/r", e.message());
    }
  }
  schema_error(path, "unknown generator '" + name + "'");
}

inline json generator_to_json(const Generator& g) {
  if (g.kind() == GeneratorKind::Power) return json{{"name", "power"}, {"r", g.exponent()}};
  return g.name();
}

inline MeanExpr parse_node(const json& j, const std::string& path);

inline MeanExpr parse_child(const json& j, const std::string& key, const std::string& path) {
  return parse_node(field(j, key, path), path + "/" + key);
}

inline BlendCoefficient parse_blend_coefficient(const json& j, const std::string& path) {
  const json& kind = field(j, "kind", path);
  if (!kind.is_string()) schema_error(path + "/kind", "expected a string");
  const auto name = kind.get<std::string>();
  if (name == "const") {
    const Rational value = parse_rational_field(field(j, "value", path), path + "/value");
    try {
      return BlendCoefficient::constant(value);
    } catch (const Error& e) {
      schema_error(path + "/value", e.message());
    }
  }
  if (name == "example1_strip") return BlendCoefficient::example1_strip();
  if (name == "relative_first") return BlendCoefficient::relative_first();
  schema_error(path + "/kind", "unknown blend coefficient '" + name + "'");
}

inline LambdaParams parse_lambda(const json& j, const std::string& path) {
  const auto get = [&](const char* key) { return parse_rational_field(field(j, key, path), path + "/" + key); };
  const Rational b = get("b");
  const Rational c = get("c");
  const Rational d = get("d");
  const Rational kappa = get("kappa");
  return validate_lambda_params(b, c, d, kappa);
}

inline AdditiveFunctional parse_functional(const json& j, const std::string& path) {
  const auto a0 = parse_rational_field(field(j, "a0", path), path + "/a0");
  const auto a1 = parse_rational_field(field(j, "a1", path), path + "/a1");
  long d = kDefaultSurd;
  if (j.contains("d")) {
    if (!j["d"].is_number_integer()) schema_error(path + "/d", "expected an integer");
    d = j["d"].get<long>();
  }
  return AdditiveFunctional(a0, a1, d);
}

inline MeanExpr parse_node(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  const json& op_field = field(j, "op", path);
  if (!op_field.is_string()) schema_error(path + "/op", "expected a string");
  const auto op = op_field.get<std::string>();
  try {
    if (op == "power") return MeanExpr::power(parse_exponent(field(j, "r", path), path + "/r"), parse_weights(j, path));
    if (op == "quasi") {
      return MeanExpr::quasi(parse_generator(field(j, "generator", path), path + "/generator"),
                             parse_weights(j, path));
    }
    if (op == "min") return MeanExpr::minimum(parse_arity(j, path));
    if (op == "max") return MeanExpr::maximum(parse_arity(j, path));
    if (op == "proj") {
      const json& index = field(j, "index", path);
      if (!index.is_number_unsigned()) schema_error(path + "/index", "expected a nonnegative integer");
      return MeanExpr::projection(parse_arity(j, path), index.get<std::size_t>());
    }
    if (op == "blend") {
      return MeanExpr::blend(parse_blend_coefficient(field(j, "s", path), path + "/s"),
                             parse_child(j, "left", path), parse_child(j, "right", path));
    }
    if (op == "piecewise") {
      const json& region = field(j, "region", path);
      RegionPredicate predicate;
      if (region == "example1_lambda") {
        predicate = RegionPredicate::Example1Lambda;
      } else if (region == "first_le_second") {
        predicate = RegionPredicate::FirstLeSecond;
      } else {
        schema_error(path + "/region", "unknown region predicate");
      }
      return MeanExpr::piecewise(predicate, parse_child(j, "then", path), parse_child(j, "else", path));
    }
    if (op == "state_weighted") {
      const json& side = field(j, "side", path);
      if (side != "m" && side != "n") schema_error(path + "/side", "expected \"m\" or \"n\"");
      const LambdaParams params = j.contains("lambda") ? parse_lambda(j["lambda"], path + "/lambda")
                                                       : LambdaParams::example2();
      const AdditiveFunctional functional =
          j.contains("functional") ? parse_functional(j["functional"], path + "/functional") : AdditiveFunctional{};
      return MeanExpr::state_weighted(side == "m" ? LambdaSide::M : LambdaSide::N, params, functional);
    }
  } catch (const Error& e) {
    // Locate library-level failures (weights, arity) at the node that raised them.
    if (e.code() == ErrorCode::SchemaError || e.code() == ErrorCode::InvalidParams || (!e.detail().empty() && e.detail()[0] == '/')) throw;
    const std::string where = e.detail().empty() ? (path.empty() ? "/" : path) : path + "/" + e.detail();
    throw Error(e.code(), where + ": " + e.message(), where);
  }
  schema_error(path + "/op", "unknown op '" + op + "'");
}

inline json rationals_to_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& q : values) out.push_back(q.to_string());
  return out;
}

}  // namespace detail

inline MeanExpr parse_mean_expr(const nlohmann::json& doc) { return detail::parse_node(doc, ""); }

inline MeanExpr parse_mean_expr(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("not valid JSON: ") + e.what(), "/");
  }
  return parse_mean_expr(doc);
}

/// Canonical JSON form: every field explicit, rationals in lowest terms.
inline nlohmann::json to_json(const MeanExpr& expr) {
  using nlohmann::json;
  return std::visit(
      [&](const auto& node) -> json {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, Projection>) {
          return {{"op", "proj"}, {"p", expr.arity()}, {"index", node.index}};
        } else if constexpr (std::is_same_v<N, PowerMean>) {
          return {{"op", "power"}, {"r", detail::exponent_to_json(node.exponent)},
                  {"weights", detail::rationals_to_json(node.weights)}};
        } else if constexpr (std::is_same_v<N, QuasiArithmetic>) {
          return {{"op", "quasi"}, {"generator", detail::generator_to_json(node.generator)},
                  {"weights", detail::rationals_to_json(node.weights)}};
        } else if constexpr (std::is_same_v<N, MinMean>) {
          return {{"op", "min"}, {"p", expr.arity()}};
        } else if constexpr (std::is_same_v<N, MaxMean>) {
          return {{"op", "max"}, {"p", expr.arity()}};
        } else if constexpr (std::is_same_v<N, ConvexBlend>) {
          json s;
          switch (node.coefficient.kind) {
            case BlendKind::Constant: s = {{"kind", "const"}, {"value", node.coefficient.value.to_string()}}; break;
            case BlendKind::Example1Strip: s = {{"kind", "example1_strip"}}; break;
            case BlendKind::RelativeFirst: s = {{"kind", "relative_first"}}; break;
          }
          return {{"op", "blend"}, {"s", s}, {"left", to_json(*node.left)}, {"right", to_json(*node.right)}};
        } else if constexpr (std::is_same_v<N, Piecewise>) {
          return {{"op", "piecewise"},
                  {"region", node.predicate == RegionPredicate::Example1Lambda ? "example1_lambda" : "first_le_second"},
                  {"then", to_json(*node.then_branch)},
                  {"else", to_json(*node.else_branch)}};
        } else {
          return {{"op", "state_weighted"},
                  {"side", node.side == LambdaSide::M ? "m" : "n"},
                  {"lambda",
                   {{"b", node.params.b().to_string()},
                    {"c", node.params.c().to_string()},
                    {"d", node.params.d().to_string()},
                    {"kappa", node.params.kappa().to_string()}}},
                  {"functional",
                   {{"a0", node.functional.a0().to_string()},
                    {"a1", node.functional.a1().to_string()},
                    {"d", node.functional.d()}}}};
        }
      },
      expr.node());
}

inline std::string serialize(const MeanExpr& expr) { return to_json(expr).dump(); }

}  // namespace meanmap
