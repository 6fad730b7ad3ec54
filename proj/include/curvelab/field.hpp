#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "curvelab/rational.hpp"

namespace curvelab {

/// The concrete valued field a scalar lives in: Q with the usual absolute
/// value, or Q with |.|_p for a fixed prime p.
struct FieldContext {
  enum class Kind { archimedean, padic };

  Kind kind = Kind::archimedean;
  unsigned long prime = 0;  // set iff kind == padic

  static FieldContext rationals() { return {Kind::archimedean, 0}; }
  static FieldContext padic(unsigned long p);

  bool is_padic() const { return kind == Kind::padic; }
  bool is_ultrametric() const { return is_padic(); }

  friend bool operator==(const FieldContext& a, const FieldContext& b) {
    return a.kind == b.kind && a.prime == b.prime;
  }
  friend bool operator!=(const FieldContext& a, const FieldContext& b) {
    return !(a == b);
  }

  std::string to_string() const;
};

/// Nonnegative size value: either an exact rational (p-adic absolute values,
/// exact real absolute values) or a double (gauge values involving real
/// roots). Exactly one representation is active.
class Magnitude {
 public:
  Magnitude() : exact_(true), exact_val_(0), approx_val_(0.0) {}

  static Magnitude exact(Rational v) {
    if (v.sign() < 0) throw std::invalid_argument("Magnitude: negative exact value");
    Magnitude m;
    m.exact_ = true;
    m.exact_val_ = std::move(v);
    return m;
  }

  static Magnitude approx(double v) {
    if (!(v >= 0.0)) throw std::invalid_argument("Magnitude: negative or NaN value");
    Magnitude m;
    m.exact_ = false;
    m.approx_val_ = v;
    return m;
  }

  static Magnitude zero() { return Magnitude(); }

  bool is_exact() const { return exact_; }
  bool is_zero() const { return exact_ ? exact_val_.is_zero() : approx_val_ == 0.0; }

  const Rational& exact_value() const {
    if (!exact_) throw std::logic_error("Magnitude: no exact representation");
    return exact_val_;
  }

  double as_double() const { return exact_ ? exact_val_.to_double() : approx_val_; }

  friend Magnitude operator*(const Magnitude& a, const Magnitude& b) {
    if (a.exact_ && b.exact_) return exact(a.exact_val_ * b.exact_val_);
    return approx(a.as_double() * b.as_double());
  }

  friend Magnitude operator+(const Magnitude& a, const Magnitude& b) {
    if (a.exact_ && b.exact_) return exact(a.exact_val_ + b.exact_val_);
    return approx(a.as_double() + b.as_double());
  }

  Magnitude pow(long e) const {
    if (exact_) return exact(exact_val_.pow(e));
    return approx(std::pow(approx_val_, static_cast<double>(e)));
  }

  static Magnitude max(const Magnitude& a, const Magnitude& b) {
    return b > a ? b : a;
  }

  /// Rationals compare exactly; comparisons touching a double go through
  /// double. Callers that need slack use leq_with_slack.
  friend bool operator<(const Magnitude& a, const Magnitude& b) {
    if (a.exact_ && b.exact_) return a.exact_val_ < b.exact_val_;
    return a.as_double() < b.as_double();
  }
  friend bool operator<=(const Magnitude& a, const Magnitude& b) {
    if (a.exact_ && b.exact_) return a.exact_val_ <= b.exact_val_;
    return a.as_double() <= b.as_double();
  }
  friend bool operator>(const Magnitude& a, const Magnitude& b) { return b < a; }
  friend bool operator>=(const Magnitude& a, const Magnitude& b) { return b <= a; }
  friend bool operator==(const Magnitude& a, const Magnitude& b) {
    if (a.exact_ && b.exact_) return a.exact_val_ == b.exact_val_;
    return a.as_double() == b.as_double();
  }

  /// a <= b up to relative slack; exact compare when both sides are exact.
  bool leq_with_slack(const Magnitude& b, double rel_slack) const {
    if (exact_ && b.exact_) return exact_val_ <= b.exact_val_;
    double lhs = as_double();
    double rhs = b.as_double();
    return lhs <= rhs + rel_slack * std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
  }

  std::string to_string() const {
    return exact_ ? exact_val_.to_string() : std::to_string(approx_val_);
  }

 private:
  bool exact_;
  Rational exact_val_;
  double approx_val_ = 0.0;
};

/// An element of the working field: rational value + field context.
/// Arithmetic requires matching contexts.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(Rational v, FieldContext ctx) : value_(std::move(v)), ctx_(ctx) {}
  ExactScalar(long v, FieldContext ctx) : value_(v), ctx_(ctx) {}

  const Rational& value() const { return value_; }
  const FieldContext& context() const { return ctx_; }
  bool is_zero() const { return value_.is_zero(); }

  static ExactScalar zero(FieldContext ctx) { return ExactScalar(Rational(0), ctx); }
  static ExactScalar one(FieldContext ctx) { return ExactScalar(Rational(1), ctx); }

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    require_same(a, b);
    return {a.value_ + b.value_, a.ctx_};
  }
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    require_same(a, b);
    return {a.value_ - b.value_, a.ctx_};
  }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    require_same(a, b);
    return {a.value_ * b.value_, a.ctx_};
  }
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    require_same(a, b);
    return {a.value_ / b.value_, a.ctx_};
  }
  ExactScalar operator-() const { return {-value_, ctx_}; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    require_same(a, b);
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  /// Numeric order of the underlying rationals; used for canonical keys,
  /// not for the field's absolute value.
  friend bool operator<(const ExactScalar& a, const ExactScalar& b) {
    return a.value_ < b.value_;
  }

  std::string to_string() const { return value_.to_string(); }

 private:
  static void require_same(const ExactScalar& a, const ExactScalar& b) {
    if (a.ctx_ != b.ctx_)
      throw std::invalid_argument("ExactScalar: mixed field contexts");
  }

  Rational value_;
  FieldContext ctx_ = FieldContext::rationals();
};

/// |x| in x's field: exact rational in both the archimedean and the p-adic
/// case (p-adic values are integer powers of p).
Magnitude abs_value(const ExactScalar& x);

/// Plain double absolute value, wrapped for the real (double) scalar path.
inline Magnitude abs_value(double x) {
  return x == 0.0 ? Magnitude::zero() : Magnitude::approx(std::fabs(x));
}

/// |x+y| for ultrametric x, y with |y| < |x|; asserts the result equals |x|
/// exactly before returning it.
Magnitude ultrametric_sum_law(const ExactScalar& x, const ExactScalar& y);

/// Exact membership test for the closed ball of the given radius.
bool in_closed_ball(const ExactScalar& x, const ExactScalar& center,
                    const Magnitude& radius);

}  // namespace curvelab
