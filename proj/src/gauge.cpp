#include "curvelab/gauge.hpp"

namespace curvelab {

Gauge triangle_companion(const Gauge& q, bool ultrametric_field) {
  switch (q.rule()) {
    case Gauge::Rule::abs:
      if (ultrametric_field) return q;
      // archimedean |.| is a 1-seminorm
      return Gauge::scaled(q, Magnitude::exact(Rational(2)));
    case Gauge::Rule::p_norm: {
      // q(x+y)^r <= q(x)^r + q(y)^r <= 2 max{..}^r, so p = 2^(1/r) q works.
      Rational r = q.exponent();
      Rational e = Rational(1) / r;
      Magnitude factor = e.is_integer()
                             ? Magnitude::exact(Rational(2).pow(static_cast<long>(e.to_double())))
                             : Magnitude::approx(std::pow(2.0, e.to_double()));
      return Gauge::scaled(q, factor);
    }
    default:
      throw std::invalid_argument("triangle_companion: unsupported gauge rule");
  }
}

Calibration calibration_from_rseminorm(Gauge q, Rational r) {
  return Calibration::pow2_over_r(std::move(q), std::move(r), Calibration::Kind::strong);
}

}  // namespace curvelab
