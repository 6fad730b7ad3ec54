#include "curvelab/field.hpp"

namespace curvelab {

namespace {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

FieldContext FieldContext::padic(unsigned long p) {
  if (!is_prime(p))
    throw std::invalid_argument("FieldContext: " + std::to_string(p) + " is not prime");
  return {Kind::padic, p};
}

std::string FieldContext::to_string() const {
  return is_padic() ? "Q_" + std::to_string(prime) : "Q";
}

Magnitude abs_value(const ExactScalar& x) {
  if (x.is_zero()) return Magnitude::zero();
  if (x.context().is_padic()) {
    long v = x.value().valuation(x.context().prime);
    return Magnitude::exact(prime_power(x.context().prime, -v));
  }
  return Magnitude::exact(x.value().abs());
}

Magnitude ultrametric_sum_law(const ExactScalar& x, const ExactScalar& y) {
  if (!x.context().is_ultrametric())
    throw std::invalid_argument("ultrametric_sum_law: context is not ultrametric");
  Magnitude ax = abs_value(x);
  Magnitude ay = abs_value(y);
  if (!(ay < ax))
    throw std::invalid_argument("ultrametric_sum_law: requires |y| < |x|");
  Magnitude s = abs_value(x + y);
  if (!(s == ax))
    throw std::logic_error("ultrametric_sum_law: |x+y| != |x| (field arithmetic bug)");
  return s;
}

bool in_closed_ball(const ExactScalar& x, const ExactScalar& center,
                    const Magnitude& radius) {
  if (radius.is_zero() || !(Magnitude::zero() <= radius))
    throw std::invalid_argument("in_closed_ball: radius must be positive");
  return abs_value(x - center) <= radius;
}

}  // namespace curvelab
