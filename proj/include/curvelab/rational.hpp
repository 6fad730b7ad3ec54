#pragma once

#include <gmp.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace curvelab {

/// Arbitrary-precision rational, value semantics over GMP's mpq_t.
/// Always kept canonical (reduced, positive denominator).
class Rational {
 public:
  Rational() { mpq_init(q_); }

  Rational(long n) {
    mpq_init(q_);
    mpq_set_si(q_, n, 1);
  }

  Rational(long n, long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    mpq_init(q_);
    mpq_set_si(q_, n, 1);
    mpq_t den;
    mpq_init(den);
    mpq_set_si(den, d, 1);
    mpq_div(q_, q_, den);
    mpq_clear(den);
  }

  Rational(const Rational& other) {
    mpq_init(q_);
    mpq_set(q_, other.q_);
  }

  Rational(Rational&& other) noexcept {
    mpq_init(q_);
    mpq_swap(q_, other.q_);
  }

  Rational& operator=(const Rational& other) {
    if (this != &other) mpq_set(q_, other.q_);
    return *this;
  }

  Rational& operator=(Rational&& other) noexcept {
    if (this != &other) mpq_swap(q_, other.q_);
    return *this;
  }

  ~Rational() { mpq_clear(q_); }

  /// Parses "num", "num/den" or "-num/den" with decimal integer parts.
  static Rational from_string(std::string_view s);

  bool is_zero() const { return mpq_sgn(q_) == 0; }
  int sign() const { return mpq_sgn(q_); }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

  Rational abs() const {
    Rational r;
    mpq_abs(r.q_, q_);
    return r;
  }

  Rational reciprocal() const {
    if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
    Rational r;
    mpq_inv(r.q_, q_);
    return r;
  }

  /// Integer power; negative exponents invert (error on zero base).
  Rational pow(long e) const;

  double to_double() const { return mpq_get_d(q_); }

  /// p-adic valuation v_p(num) - v_p(den); requires a nonzero value.
  long valuation(unsigned long p) const;

  /// "n" when the denominator is 1, otherwise "n/d".
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    Rational r;
    mpq_div(r.q_, a.q_, b.q_);
    return r;
  }
  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_, q_);
    return r;
  }

  Rational& operator+=(const Rational& b) {
    mpq_add(q_, q_, b.q_);
    return *this;
  }
  Rational& operator-=(const Rational& b) {
    mpq_sub(q_, q_, b.q_);
    return *this;
  }
  Rational& operator*=(const Rational& b) {
    mpq_mul(q_, q_, b.q_);
    return *this;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_, b.q_) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) < 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) <= 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) > 0;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) >= 0;
  }

 private:
  mpq_t q_;
};

/// base^e for integer base, e >= 0.
Rational int_pow(long base, unsigned long e);

/// p^e for possibly negative e.
Rational prime_power(unsigned long p, long e);

}  // namespace curvelab
