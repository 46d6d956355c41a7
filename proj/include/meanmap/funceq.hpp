#pragma once

// Continuous-on-the-diagonal solutions of F o M = F are exactly F = phi o K,
// K the unique invariant mean, phi(t) = F(t, ..., t).

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "meanmap/error.hpp"
#include "meanmap/mapping.hpp"
#include "meanmap/orbit.hpp"
#include "meanmap/scalar.hpp"

namespace meanmap {

enum class PhiKind { Identity, Square, Exp, Log, Negation, Table, Step };

/// Scalar function on I used as the outer factor of F = phi o K.
class DiagonalFunction {
 public:
  static DiagonalFunction identity() { return DiagonalFunction(PhiKind::Identity); }
  static DiagonalFunction square() { return DiagonalFunction(PhiKind::Square); }
  static DiagonalFunction exp() { return DiagonalFunction(PhiKind::Exp); }
  static DiagonalFunction log() { return DiagonalFunction(PhiKind::Log); }
  static DiagonalFunction negation() { return DiagonalFunction(PhiKind::Negation); }

  static DiagonalFunction catalog(const std::string& name) {
    if (name == "identity") return identity();
    if (name == "square") return square();
    if (name == "exp") return exp();
    if (name == "log") return log();
    if (name == "negation") return negation();
    throw Error(ErrorCode::DomainViolation, "unknown phi '" + name + "'", "phi");
  }

  /// Piecewise-linear interpolation through (t, phi(t)); t strictly increasing.
  static DiagonalFunction table(std::vector<std::pair<double, double>> points) {
    if (points.empty()) throw Error(ErrorCode::DomainViolation, "phi table is empty", "phi");
    std::sort(points.begin(), points.end());
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!std::isfinite(points[i].first) || !std::isfinite(points[i].second)) {
        throw Error(ErrorCode::DomainViolation, "phi table has a non-finite entry", "phi");
      }
      if (i > 0 && points[i].first == points[i - 1].first) {
        throw Error(ErrorCode::DomainViolation, "phi table repeats t = " + std::to_string(points[i].first), "phi");
      }
    }
    DiagonalFunction f(PhiKind::Table);
    f.table_ = std::move(points);
    return f;
  }

  /// below for t < threshold, at_or_above for t >= threshold. Discontinuous.
  static DiagonalFunction step(double threshold, double below = 0.0, double at_or_above = 1.0) {
    DiagonalFunction f(PhiKind::Step);
    f.threshold_ = threshold;
    f.below_ = below;
    f.above_ = at_or_above;
    return f;
  }

  /// "identity", "square", "exp", "log", "negation", "step:<threshold>".
  static DiagonalFunction parse(const std::string& spec) {
    if (spec.rfind("step:", 0) == 0) {
      try {
        return step(std::stod(spec.substr(5)));
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::DomainViolation, "bad step threshold in '" + spec + "'", "phi");
      }
    }
    return catalog(spec);
  }

  /// Two-column CSV "t,phi"; a non-numeric first line is taken as a header.
  static DiagonalFunction read_table_csv(std::istream& in) {
    std::vector<std::pair<double, double>> points;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line == "\r") continue;
      const auto comma = line.find(',');
      try {
        if (comma == std::string::npos) throw std::invalid_argument("no comma");
        std::size_t used = 0;
        const double t = std::stod(line.substr(0, comma), &used);
        const double y = std::stod(line.substr(comma + 1));
        points.emplace_back(t, y);
      } catch (const std::logic_error&) {
        if (line_no == 1) continue;
        throw Error(ErrorCode::DomainViolation, "phi table line " + std::to_string(line_no) + " is not 't,phi'",
                    "phi");
      }
    }
    return table(std::move(points));
  }

  PhiKind kind() const { return kind_; }
  bool continuous() const { return kind_ != PhiKind::Step; }
  std::optional<double> jump() const {
    if (kind_ == PhiKind::Step) return threshold_;
    return std::nullopt;
  }
  const std::vector<std::pair<double, double>>& points() const { return table_; }

  double operator()(double t) const {
    switch (kind_) {
      case PhiKind::Identity: return t;
      case PhiKind::Square: return t * t;
      case PhiKind::Exp: return std::exp(t);
      case PhiKind::Log:
        if (!(t > 0.0)) throw Error(ErrorCode::DomainViolation, "log phi needs t > 0", "t");
        return std::log(t);
      case PhiKind::Negation: return -t;
      case PhiKind::Step: return t < threshold_ ? below_ : above_;
      case PhiKind::Table: return interpolate(t);
    }
    return t;
  }

  /// Lipschitz bound of phi on [t - h, t + h]; infinite across a jump.
  double slope_bound(double t, double h) const {
    const double inf = std::numeric_limits<double>::infinity();
    switch (kind_) {
      case PhiKind::Identity:
      case PhiKind::Negation: return 1.0;
      case PhiKind::Square: return 2.0 * (std::fabs(t) + h);
      case PhiKind::Exp: return std::exp(t + h);
      case PhiKind::Log: return t - h > 0.0 ? 1.0 / (t - h) : inf;
      case PhiKind::Step: return std::fabs(t - threshold_) <= h ? inf : 0.0;
      case PhiKind::Table: {
        double worst = 0.0;
        for (std::size_t i = 1; i < table_.size(); ++i) {
          const auto& [t0, y0] = table_[i - 1];
          const auto& [t1, y1] = table_[i];
          if (t1 < t - h || t0 > t + h) continue;
          worst = std::max(worst, std::fabs((y1 - y0) / (t1 - t0)));
        }
        return worst;
      }
    }
    return inf;
  }

  std::string name() const {
    switch (kind_) {
      case PhiKind::Identity: return "identity";
      case PhiKind::Square: return "square";
      case PhiKind::Exp: return "exp";
      case PhiKind::Log: return "log";
      case PhiKind::Negation: return "negation";
      case PhiKind::Table: return "table(" + std::to_string(table_.size()) + " points)";
      case PhiKind::Step: {
        std::ostringstream os;
        os.precision(17);
        os << "step:" << threshold_;
        return os.str();
      }
    }
    return "?";
  }

 private:
  explicit DiagonalFunction(PhiKind kind) : kind_(kind) {}

  double interpolate(double t) const {
    if (table_.size() == 1 || t < table_.front().first || t > table_.back().first) {
      if (table_.size() == 1 && t == table_.front().first) return table_.front().second;
      throw Error(ErrorCode::DomainViolation, "t = " + std::to_string(t) + " outside the phi table range", "t");
    }
    auto hi = std::lower_bound(table_.begin(), table_.end(), t,
                               [](const auto& point, double x) { return point.first < x; });
    if (hi->first == t) return hi->second;
    const auto lo = hi - 1;
    const double w = (t - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
  }

  PhiKind kind_;
  std::vector<std::pair<double, double>> table_;
  double threshold_ = 0.0;
  double below_ = 0.0;
  double above_ = 1.0;
};

/// F(v) = phi(K(v)) with K evaluated by compound_mean.
template <Scalar S>
class InvariantFunction {
 public:
  InvariantFunction(MeanTypeMapping<S> mapping, DiagonalFunction phi, double tol = kDefaultTol,
                    std::size_t max_iter = kDefaultMaxIter)
      : mapping_(std::move(mapping)), phi_(std::move(phi)), tol_(tol), max_iter_(max_iter) {
    if (!(tol_ > 0.0)) throw Error(ErrorCode::DomainViolation, "tol must be > 0", "tol");
  }

  const MeanTypeMapping<S>& mapping() const { return mapping_; }
  const DiagonalFunction& phi() const { return phi_; }
  double tol() const { return tol_; }
  std::size_t arity() const { return mapping_.arity(); }

  /// K(v); NonConvergent when the orbit does not reach the diagonal.
  double invariant_mean(std::span<const S> v) const {
    const auto result = compound_mean(mapping_, std::vector<S>(v.begin(), v.end()), tol_, max_iter_);
    if (!result.converged()) {
      throw Error(ErrorCode::NonConvergent,
                  "orbit of " + mapping_.name() + " did not converge (" + std::string(to_string(result.status)) +
                      " after " + std::to_string(result.iterations) + " steps)");
    }
    return to_double(result.value);
  }

  double operator()(std::span<const S> v) const { return phi_(invariant_mean(v)); }
  double operator()(const std::vector<S>& v) const { return (*this)(std::span<const S>(v)); }

  /// True when phi jumps within `margin` of K(v).
  bool near_jump(std::span<const S> v, double margin) const {
    const auto jump = phi_.jump();
    return jump && std::fabs(invariant_mean(v) - *jump) < margin;
  }

 private:
  MeanTypeMapping<S> mapping_;
  DiagonalFunction phi_;
  double tol_;
  std::size_t max_iter_;
};

template <Scalar S>
InvariantFunction<S> build_invariant_function(const MeanTypeMapping<S>& mapping, const DiagonalFunction& phi,
                                              double tol = kDefaultTol, std::size_t max_iter = kDefaultMaxIter) {
  if (!phi.continuous()) {
    throw Error(ErrorCode::DomainViolation,
                "phi must be continuous; use remark4_counterexample for discontinuous phi", "phi");
  }
  return InvariantFunction<S>(mapping, phi, tol, max_iter);
}

/// F(v) := phi(t) where M^n(v) -> (t, ..., t), for any phi, continuous or not.
/// Still satisfies F o M = F, so continuity on the diagonal cannot be dropped
/// from the characterisation F = phi o K with continuous phi.
template <Scalar S>
InvariantFunction<S> remark4_counterexample(const DiagonalFunction& phi, const MeanTypeMapping<S>& mapping,
                                            double tol = kDefaultTol, std::size_t max_iter = kDefaultMaxIter) {
  return InvariantFunction<S>(mapping, phi, tol, max_iter);
}

template <Scalar S>
using ScalarField = std::function<double(std::span<const S>)>;

/// Diagonal restriction phi(t) := F(t, ..., t) at the given points.
template <Scalar S>
DiagonalFunction recover_phi(const ScalarField<S>& f, std::size_t arity, const std::vector<double>& ts) {
  std::vector<std::pair<double, double>> points;
  points.reserve(ts.size());
  for (const double t : ts) {
    const std::vector<S> diagonal(arity, scalar_traits<S>::from_double(t));
    points.emplace_back(t, f(std::span<const S>(diagonal)));
  }
  return DiagonalFunction::table(std::move(points));
}

template <Scalar S>
DiagonalFunction recover_phi(const InvariantFunction<S>& f, const std::vector<double>& ts) {
  return recover_phi<S>(ScalarField<S>([&f](std::span<const S> v) { return f(v); }), f.arity(), ts);
}

struct VerificationReport {
  std::string mapping;
  std::string phi;
  std::size_t samples = 0;   // samples evaluated
  std::size_t filtered = 0;  // samples skipped for lying within margin of a jump of phi
  double margin = 0.0;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// max over samples of |F(M(v)) - F(v)|; passes iff that is <= tol.
template <Scalar S>
VerificationReport verify_invariance_equation(const ScalarField<S>& f, const MeanTypeMapping<S>& mapping,
                                              const std::vector<std::vector<S>>& samples, double tol) {
  VerificationReport report;
  report.mapping = mapping.name();
  report.phi = "custom";
  report.tol = tol;
  for (const auto& v : samples) {
    const auto image = mapping(v);
    const double residual = std::fabs(f(std::span<const S>(image)) - f(std::span<const S>(v)));
    report.max_residual = std::max(report.max_residual, residual);
    ++report.samples;
  }
  report.pass = report.max_residual <= tol;
  return report;
}

/// As above for F = phi o K; when phi has a jump, samples whose K(v) lies
/// within `margin` of it are skipped and counted in `filtered`.
template <Scalar S>
VerificationReport verify_invariance_equation(const InvariantFunction<S>& f, const MeanTypeMapping<S>& mapping,
                                              const std::vector<std::vector<S>>& samples, double tol,
                                              double margin = 1e-6) {
  std::vector<std::vector<S>> kept;
  kept.reserve(samples.size());
  for (const auto& v : samples) {
    if (!f.near_jump(std::span<const S>(v), margin)) kept.push_back(v);
  }
  auto report = verify_invariance_equation<S>(ScalarField<S>([&f](std::span<const S> v) { return f(v); }),
                                              mapping, kept, tol);
  report.phi = f.phi().name();
  report.filtered = samples.size() - kept.size();
  report.margin = f.phi().continuous() ? 0.0 : margin;
  return report;
}

}  // namespace meanmap
