#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

#include "meanmap/error.hpp"

namespace meanmap {

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw Error(ErrorCode::DomainViolation, "zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Accepts "n" or "n/d" with optional sign; whitespace around the parts is
  /// ignored.
  static Rational parse(std::string_view text) {
    std::string s;
    for (char ch : text) {
      if (ch != ' ' && ch != '\t') s.push_back(ch);
    }
    if (s.empty()) throw Error(ErrorCode::DomainViolation, "empty rational literal");
    const auto slash = s.find('/');
    auto valid_int = [](std::string_view part) {
      std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
      if (i == part.size()) return false;
      for (; i < part.size(); ++i) {
        if (part[i] < '0' || part[i] > '9') return false;
      }
      return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
      throw Error(ErrorCode::DomainViolation, "malformed rational '" + std::string(text) + "'");
    }
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw Error(ErrorCode::DomainViolation, "zero denominator in '" + std::string(text) + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
  }

  /// Exact conversion; every finite binary64 value is a dyadic rational.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw Error(ErrorCode::DomainViolation, "non-finite value has no rational form");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);
    return Rational(std::move(q));
  }

  /// 2^-k, exact.
  static Rational dyadic(long numerator, unsigned k) {
    mpz_class den = 1;
    den <<= k;
    mpq_class q(mpz_class(numerator), den);
    q.canonicalize();
    return Rational(std::move(q));
  }

  double to_double() const { return value_.get_d(); }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }

  std::string to_string() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  /// Larger of the numerator and denominator bit lengths.
  std::size_t bits() const {
    const std::size_t nb = mpz_sizeinbase(value_.get_num_mpz_t(), 2);
    const std::size_t db = mpz_sizeinbase(value_.get_den_mpz_t(), 2);
    return nb > db ? nb : db;
  }

  const mpq_class& raw() const { return value_; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorCode::DomainViolation, "division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

 private:
  mpq_class value_{0};
};

inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

}  // namespace meanmap
