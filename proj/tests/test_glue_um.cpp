#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvelab/glue_um.hpp"
#include "curvelab/json_io.hpp"

using namespace curvelab;

namespace {

/// Pieces gamma_n(t) = p^(n^2) t on the radius |rho|^n ball, the running
/// accepting example.
UltrametricGlueSpec make_spec(unsigned long p, int pieces) {
  FieldContext ctx = FieldContext::padic(p);
  UltrametricGlueSpec spec;
  spec.context = ctx;
  spec.rho = ExactScalar(Rational(static_cast<long>(p)), ctx);
  spec.calibration = Calibration::constant(Gauge::abs_on_K(), Calibration::Kind::strong);
  spec.probe.a_values = {Rational(2), Rational(static_cast<long>(p * p))};
  spec.probe.k_max = 3;
  spec.probe.m_max = 2;
  spec.probe.C = Rational(1);
  for (int n = 1; n <= pieces; ++n) {
    auto dom = Domain<ExactScalar>::ball(ExactScalar::zero(ctx),
                                         Magnitude::exact(prime_power(p, -n)));
    ExactScalar coeff(prime_power(p, static_cast<long>(n) * n), ctx);
    spec.pieces.push_back(
        Curve<ExactScalar>::polynomial(dom, {{ExactScalar::zero(ctx), coeff}}));
  }
  return spec;
}

UltrametricGlueSpec make_bad_spec(unsigned long p, int pieces) {
  auto spec = make_spec(p, pieces);
  FieldContext ctx = spec.context;
  for (int n = 1; n <= pieces; ++n) {
    auto dom = spec.pieces[static_cast<size_t>(n - 1)].domain();
    ExactScalar coeff(prime_power(p, -n), ctx);  // |coeff| = p^n grows
    spec.pieces[static_cast<size_t>(n - 1)] =
        Curve<ExactScalar>::polynomial(dom, {{ExactScalar::zero(ctx), coeff}});
  }
  return spec;
}

}  // namespace

TEST_CASE("build validation") {
  auto spec = make_spec(3, 4);
  auto glued = GluedCurveUM::build(spec);
  CHECK(glued.piece_count() == 4);
  CHECK(glued.center(1) == ExactScalar::one(spec.context));
  CHECK(glued.radius(1) == Magnitude::exact(Rational(1, 3)));

  // empty piece list glues to the zero curve
  UltrametricGlueSpec empty = spec;
  empty.pieces.clear();
  auto z = GluedCurveUM::build(empty);
  CHECK(z.eval(ExactScalar(Rational(7, 3), spec.context)).is_zero());

  // |rho| >= 1 rejected
  UltrametricGlueSpec bad_rho = spec;
  bad_rho.rho = ExactScalar(Rational(1, 3), spec.context);  // |1/3|_3 = 3
  CHECK_THROWS_AS(GluedCurveUM::build(bad_rho), std::invalid_argument);

  // wrong piece radius rejected
  UltrametricGlueSpec bad_dom = spec;
  auto wrong = Domain<ExactScalar>::ball(ExactScalar::zero(spec.context),
                                         Magnitude::exact(Rational(1, 3)));
  bad_dom.pieces[1] = Curve<ExactScalar>::polynomial(
      wrong, {{ExactScalar::zero(spec.context), ExactScalar::one(spec.context)}});
  CHECK_THROWS_AS(GluedCurveUM::build(bad_dom), std::invalid_argument);

  // archimedean context rejected
  UltrametricGlueSpec arch = spec;
  arch.context = FieldContext::rationals();
  CHECK_THROWS_AS(GluedCurveUM::build(arch), std::invalid_argument);
}

TEST_CASE("locate and eval, frozen examples") {
  auto spec = make_spec(3, 8);
  auto glued = GluedCurveUM::build(spec);
  FieldContext ctx = spec.context;

  // x = 4 = 1 + 3: |4 - 1|_3 = 1/3, piece 1, value gamma_1(3) = 3*3 = 9
  auto n4 = glued.locate(ExactScalar(Rational(4), ctx));
  REQUIRE(n4.has_value());
  CHECK(*n4 == 1);
  CHECK(glued.eval(ExactScalar(Rational(4), ctx)).coords[0] ==
        ExactScalar(Rational(9), ctx));

  // x = 2: |2 - 1|_3 = 1 > 1/3 and |2|_3 = 1 rules out deeper balls
  CHECK_FALSE(glued.locate(ExactScalar(Rational(2), ctx)).has_value());
  CHECK(glued.eval(ExactScalar(Rational(2), ctx)).is_zero());

  // x = 0 is in no support ball
  CHECK_FALSE(glued.locate(ExactScalar::zero(ctx)).has_value());
  CHECK(glued.eval(ExactScalar::zero(ctx)).is_zero());

  // x = rho^(n-1) gives gamma_n(0) = 0 here
  for (int n = 1; n <= 8; ++n) {
    auto c = glued.center(n);
    auto at = glued.locate(c);
    REQUIRE(at.has_value());
    CHECK(*at == n);
    CHECK(glued.eval(c).is_zero());
  }

  // identity inside a deeper ball: x = 3 + 81 lands in piece 2
  ExactScalar x(Rational(3 + 81), ctx);
  auto n2 = glued.locate(x);
  REQUIRE(n2.has_value());
  CHECK(*n2 == 2);
  // gamma_2(81) = 3^4 * 81 = 6561
  CHECK(glued.eval(x).coords[0] == ExactScalar(Rational(6561), ctx));
}

TEST_CASE("support balls disjoint, identity and off-support checks") {
  SamplerConfig cfg;
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    auto spec = make_spec(p, 6);
    auto glued = GluedCurveUM::build(spec);
    CHECK(glued.check_disjoint_supports().passed);

    Rng rng(91);
    auto ident = glued.check_defining_identity(12, cfg, rng);
    CHECK(ident.passed);
    CHECK(ident.checked >= 6 * 12);

    auto off = glued.check_off_support_zero(60, cfg, rng);
    CHECK(off.passed);
  }
}

TEST_CASE("extension by zero and its estimate") {
  auto ctx = FieldContext::padic(3);
  auto ball = Domain<ExactScalar>::ball(ExactScalar::zero(ctx),
                                        Magnitude::exact(Rational(1, 3)));
  auto c = Curve<ExactScalar>::polynomial(
      ball, {{ExactScalar::zero(ctx), ExactScalar(Rational(3), ctx)}});
  auto eta = extend_by_zero(c);

  // inside the ball (|3|_3 = 1/3): the curve's value; outside: 0
  CHECK(eta.eval(ExactScalar(Rational(3), ctx)).coords[0] == ExactScalar(Rational(9), ctx));
  CHECK(eta.eval(ExactScalar(Rational(1), ctx)).is_zero());

  // mixed first-order tuple: eta^<1>(x0, x1) = -c(x0)/(x1 - x0)
  ExactScalar x0(Rational(3), ctx);
  ExactScalar x1(Rational(1), ctx);
  auto v = diff_quot(eta, 1, std::vector<ExactScalar>{x0, x1});
  auto expected = (ExactScalar::zero(ctx) - c.eval(x0).coords[0]) / (x1 - x0);
  CHECK(v.coords[0] == expected);

  // k = 0 sups agree: sup |eta| = sup |c|
  auto cal = Calibration::constant(Gauge::abs_on_K(), Calibration::Kind::strong);
  SamplerConfig cfg;
  Rng rng(93);
  CHECK(check_resestim(c, 4, cal, cfg, rng).passed);

  // strong-calibration variant drops the 2^(k-j) factor
  CHECK(check_resestim(c, 4, cal, cfg, rng, 120, true).passed);
  auto ordinary = Calibration::constant(Gauge::abs_on_K(), Calibration::Kind::ordinary);
  CHECK_THROWS_AS(check_resestim(c, 2, ordinary, cfg, rng, 60, true),
                  std::invalid_argument);

  CHECK_THROWS_AS(extend_by_zero(Curve<ExactScalar>::polynomial(
                      Domain<ExactScalar>::whole(), {{ExactScalar::one(ctx)}})),
                  std::invalid_argument);
}

TEST_CASE("extension estimate across primes and degrees") {
  SamplerConfig cfg;
  Rng rng(95);
  auto cal3 = Calibration::constant(Gauge::abs_on_K(), Calibration::Kind::strong);
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    auto ctx = FieldContext::padic(p);
    auto ball = Domain<ExactScalar>::ball(ExactScalar::zero(ctx),
                                          Magnitude::exact(Rational(1, (long)p)));
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<ExactScalar> cs;
      int deg = 1 + static_cast<int>(rng.uniform_int(0, 4));
      for (int m = 0; m <= deg; ++m) cs.push_back(ExactScalar(rng.rational(12, 5), ctx));
      auto c = Curve<ExactScalar>::polynomial(ball, {cs});
      CHECK(check_resestim(c, 4, cal3, cfg, rng, 80).passed);
    }
  }
}

TEST_CASE("hypothesis checker accepts the decaying family") {
  SamplerConfig cfg;
  Rng rng(97);
  auto spec = make_spec(3, 8);
  auto rep = check_hypothesis(spec, cfg, rng);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.probe_verdict == Verdict::pass);
  CHECK_FALSE(rep.records.empty());
}

TEST_CASE("hypothesis checker rejects the growing family") {
  SamplerConfig cfg;
  Rng rng(99);
  auto rep = check_hypothesis(make_bad_spec(3, 6), cfg, rng);
  CHECK(rep.verdict == Verdict::fail);
}

TEST_CASE("zero pieces accepted") {
  auto spec = make_spec(3, 4);
  for (auto& piece : spec.pieces) {
    auto dom = piece.domain();
    piece = Curve<ExactScalar>::polynomial(dom, {{ExactScalar::zero(spec.context)}});
  }
  SamplerConfig cfg;
  Rng rng(101);
  auto rep = check_hypothesis(spec, cfg, rng);
  CHECK(rep.verdict == Verdict::pass);
}

TEST_CASE("glued curve works with the difference quotient engine") {
  auto spec = make_spec(3, 5);
  auto glued = GluedCurveUM::build(spec);
  auto curve = glued.as_curve();
  FieldContext ctx = spec.context;
  // distinct points across supports; exactness carries through the recursion
  std::vector<ExactScalar> t{ExactScalar(Rational(4), ctx), ExactScalar(Rational(2), ctx),
                             ExactScalar(Rational(12), ctx)};
  auto v = diff_quot(curve, 2, t);
  CHECK(v.dim() == 1);
  // spot value: gamma(4) = 9 and gamma(2) = 0
  CHECK(curve.eval(ExactScalar(Rational(4), ctx)).coords[0] == ExactScalar(Rational(9), ctx));
  CHECK(curve.eval(ExactScalar(Rational(2), ctx)).is_zero());
}

TEST_CASE("spec round trip through JSON") {
  json j = {
      {"p", 3},
      {"rho", "3"},
      {"pieces", json::array({json{{"poly", json::array({"0", "3"})}},
                              json{{"poly", json::array({"0", "81"})}}})},
      {"calibration",
       {{"base", {{"rule", "abs"}}}, {"kind", "strong"}, {"factor_law", "constant"}}},
      {"probe", {{"a_values", json::array({"2"})}, {"k_max", 2}, {"m_max", 1}, {"C", "1"}}}};
  auto spec = um_spec_from_json(j);
  CHECK(spec.pieces.size() == 2);
  auto glued = GluedCurveUM::build(spec);
  CHECK(glued.eval(ExactScalar(Rational(4), spec.context)).coords[0] ==
        ExactScalar(Rational(9), spec.context));

  json bad = j;
  bad["rho"] = "1/3";
  CHECK_THROWS_AS(um_spec_from_json(bad), ConfigError);
  json bad2 = j;
  bad2.erase("pieces");
  CHECK_THROWS_AS(um_spec_from_json(bad2), ConfigError);
}
