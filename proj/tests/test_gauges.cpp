#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvelab/gauge.hpp"
#include "curvelab/sampler.hpp"

using namespace curvelab;

namespace {
const FieldContext kArch = FieldContext::rationals();
ExactScalar q(long n, long d = 1) { return ExactScalar(Rational(n, d), kArch); }
}  // namespace

TEST_CASE("gauge evaluation") {
  Gauge one_norm = Gauge::p_norm(Rational(1));
  VectorT<ExactScalar> x{q(3), q(-4)};
  CHECK(one_norm.eval(x).exact_value() == Rational(7));

  Gauge half = Gauge::p_norm(Rational(1, 2));
  VectorT<double> xr{3.0, 4.0};
  // (sqrt(3) + sqrt(4))^2 = 7 + 4 sqrt(3)
  CHECK(half.eval(xr).as_double() == doctest::Approx(13.9282032303).epsilon(1e-9));

  auto ctx2 = FieldContext::padic(2);
  Gauge abs = Gauge::abs_on_K();
  VectorT<ExactScalar> y{ExactScalar(Rational(12), ctx2)};
  CHECK(abs.eval(y).exact_value() == Rational(1, 4));

  Gauge scaled = Gauge::scaled(one_norm, Magnitude::exact(Rational(2)));
  CHECK(scaled.eval(x).exact_value() == Rational(14));
  CHECK(scaled.is_seminorm());
  CHECK_FALSE(Gauge::p_norm(Rational(1, 2)).is_seminorm());

  CHECK_THROWS_AS(Gauge::p_norm(Rational(2)), std::invalid_argument);
  CHECK_THROWS_AS(Gauge::sup_on_curves(0, abs).eval(x), std::logic_error);

  VectorT<ExactScalar> mixed{q(1), ExactScalar(Rational(1), ctx2)};
  CHECK_THROWS_AS(one_norm.eval(mixed), std::invalid_argument);
}

TEST_CASE("gauge homogeneity is exact on exact rules") {
  Rng rng(5);
  SamplerConfig cfg;
  for (const auto& g : {Gauge::abs_on_K(), Gauge::p_norm(Rational(1)),
                        Gauge::sum({Gauge::abs_on_K(), Gauge::p_norm(Rational(1))})}) {
    for (int i = 0; i < 200; ++i) {
      auto x = random_vector(3, kArch, cfg, rng);
      ExactScalar t(rng.rational(15, 6), kArch);
      CHECK(g.eval(t * x) == abs_value(t) * g.eval(x));
    }
  }
}

TEST_CASE("minkowski candidate search") {
  auto ctx3 = FieldContext::padic(3);
  BallDescriptor unit(Gauge::abs_on_K(), Magnitude::exact(Rational(1)), false);
  std::vector<ExactScalar> cands;
  for (long e : {0L, 1L, 2L, -1L, -2L})
    cands.push_back(ExactScalar(prime_power(3, e), ctx3));

  // |9|_3 = 1/9: 9 lies in tU exactly when |t| >= 1/9
  auto mu = minkowski(unit, VectorT<ExactScalar>{ExactScalar(Rational(9), ctx3)}, cands);
  REQUIRE(mu.has_value());
  CHECK(mu->exact_value() == Rational(1, 9));

  // x = 0 picks the smallest candidate magnitude
  auto mu0 = minkowski(unit, VectorT<ExactScalar>{ExactScalar::zero(ctx3)}, cands);
  REQUIRE(mu0.has_value());
  CHECK(mu0->exact_value() == Rational(1, 9));

  // real l^1 ball: (2,0) lies in 2U
  BallDescriptor U1(Gauge::p_norm(Rational(1)), Magnitude::exact(Rational(1)), false);
  std::vector<ExactScalar> cr{q(1), q(2), q(4)};
  auto mu2 = minkowski(U1, VectorT<ExactScalar>{q(2), q(0)}, cr);
  REQUIRE(mu2.has_value());
  CHECK(mu2->exact_value() == Rational(2));

  CHECK_THROWS_AS(minkowski(U1, VectorT<ExactScalar>{q(1), q(0)}, std::vector<ExactScalar>{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(minkowski(U1, VectorT<ExactScalar>{q(1), q(0)},
                            std::vector<ExactScalar>{q(0)}),
                  std::invalid_argument);
  // tight ball with no usable candidate
  auto none = minkowski(U1, VectorT<ExactScalar>{q(100), q(0)}, cr);
  CHECK_FALSE(none.has_value());
}

TEST_CASE("sandwich check and its premise") {
  Rng rng(9);
  SamplerConfig cfg;
  Gauge q1 = Gauge::p_norm(Rational(1));
  BallDescriptor U(q1, Magnitude::exact(Rational(1)), true);
  std::vector<ExactScalar> cands;
  for (int e = -8; e <= 8; ++e) cands.push_back(ExactScalar(Rational(2).pow(e), kArch));

  std::vector<VectorT<ExactScalar>> samples;
  for (int i = 0; i < 100; ++i) samples.push_back(random_vector(2, kArch, cfg, rng));
  samples.push_back(VectorT<ExactScalar>{q(0), q(0)});

  auto good = check_sandwich(q1, U, samples, cands, 0.0);
  CHECK(good.passed);
  CHECK(good.checked > 50);

  // doubling the gauge breaks the required containment U inside B_1^q(0)
  Gauge q2 = Gauge::scaled(q1, Magnitude::exact(Rational(2)));
  auto bad = check_sandwich(q2, U, samples, cands, 0.0);
  CHECK_FALSE(bad.passed);
}

TEST_CASE("triangle companion") {
  Gauge half = Gauge::p_norm(Rational(1, 2));
  Gauge comp = triangle_companion(half, false);
  CHECK(comp.rule() == Gauge::Rule::scaled);
  CHECK(comp.factor() == Magnitude::exact(Rational(4)));

  Gauge abs = Gauge::abs_on_K();
  CHECK(triangle_companion(abs, true).rule() == Gauge::Rule::abs);
  CHECK(triangle_companion(abs, false).factor() == Magnitude::exact(Rational(2)));
  CHECK_THROWS_AS(triangle_companion(Gauge::sum({abs}), false), std::invalid_argument);

  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    VectorT<double> x = random_real_vector(4, 2.0, rng);
    VectorT<double> y = random_real_vector(4, 2.0, rng);
    CHECK(half.eval(x + y).leq_with_slack(Magnitude::max(comp.eval(x), comp.eval(y)), 1e-9));
  }
}

TEST_CASE("calibrations") {
  Gauge half = Gauge::p_norm(Rational(1, 2));
  Calibration cal = calibration_from_rseminorm(half, Rational(1, 2));
  CHECK(cal.kind() == Calibration::Kind::strong);
  CHECK(cal.pow2_factor(3) == Magnitude::exact(Rational(64)));  // 2^(3 / (1/2)) = 2^6
  CHECK(cal.pow2_factor(0) == Magnitude::exact(Rational(1)));
  CHECK(cal.at(0).rule() == Gauge::Rule::scaled);
  CHECK_THROWS_AS(calibration_from_rseminorm(half, Rational(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(cal.at(-1), std::invalid_argument);

  Rng rng(13);
  std::vector<std::pair<VectorT<double>, VectorT<double>>> pairs;
  for (int i = 0; i < 1000; ++i)
    pairs.emplace_back(random_real_vector(3, 2.0, rng), random_real_vector(3, 2.0, rng));
  auto out = check_fake_triangle(cal, pairs, 4, 1e-9);
  CHECK(out.passed);

  // a constant calibration from a seminorm passes the ordinary inequality
  SamplerConfig cfg;
  Calibration flat = Calibration::constant(Gauge::p_norm(Rational(1)),
                                           Calibration::Kind::ordinary);
  std::vector<std::pair<VectorT<ExactScalar>, VectorT<ExactScalar>>> qpairs;
  for (int i = 0; i < 300; ++i)
    qpairs.emplace_back(random_vector(3, kArch, cfg, rng), random_vector(3, kArch, cfg, rng));
  qpairs.emplace_back(VectorT<ExactScalar>{q(0), q(0), q(0)},
                      VectorT<ExactScalar>{q(0), q(0), q(0)});
  CHECK(check_fake_triangle(flat, qpairs, 3, 0.0).passed);

  // shifted law q_n = scale * base_(n+n0)
  Calibration sh = Calibration::shifted(cal, 2, Magnitude::exact(Rational(3)));
  CHECK(check_fake_triangle(sh, pairs, 3, 1e-9).passed);
}

TEST_CASE("partial sum bound") {
  Rng rng(17);
  SamplerConfig cfg;
  Calibration cal = calibration_from_rseminorm(Gauge::p_norm(Rational(1, 2)), Rational(1, 2));
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<VectorT<double>> terms;
    double f = 1.0;
    double ratio = rng.uniform(0.2, 0.9);
    VectorT<double> base = random_real_vector(3, 2.0, rng);
    for (int k = 0; k < 8; ++k) {
      terms.push_back(f * base);
      f *= ratio;
    }
    int m = static_cast<int>(rng.uniform_int(1, 4));
    int n = static_cast<int>(rng.uniform_int(m, 8));
    CHECK(partial_sum_bound(terms, cal, m, n, 1e-9).passed);
  }

  // single term reduces to monotonicity; all-zero terms give 0 <= 0
  std::vector<VectorT<double>> z(4, VectorT<double>{0.0, 0.0});
  CHECK(partial_sum_bound(z, cal, 2, 2, 0.0).passed);
  CHECK(partial_sum_bound(z, cal, 1, 4, 0.0).passed);
  CHECK_THROWS_AS(partial_sum_bound(z, cal, 0, 3, 0.0), std::out_of_range);
  CHECK_THROWS_AS(partial_sum_bound(z, cal, 1, 9, 0.0), std::out_of_range);
}
