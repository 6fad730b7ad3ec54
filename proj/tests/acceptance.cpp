// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion enforces its stated sample counts, tolerances and runtime
// budget.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "curvelab/json_io.hpp"
#include "curvelab/leibniz.hpp"
#include "curvelab/suites.hpp"

using namespace curvelab;

namespace {

struct Criterion {
  std::string name;
  double budget_s;
  bool passed = true;
  std::vector<std::string> notes;

  void fail(std::string note) {
    passed = false;
    if (notes.size() < 6) notes.push_back(std::move(note));
  }
};

int failures = 0;

void run(Criterion& c, const std::function<void(Criterion&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= c.budget_s)
    c.fail("runtime " + std::to_string(secs) + "s exceeds budget " +
           std::to_string(c.budget_s) + "s");
  std::printf("[%s] %s (%.2fs)\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), secs);
  for (const auto& n : c.notes) std::printf("        %s\n", n.c_str());
  if (!c.passed) ++failures;
}

std::vector<FieldContext> all_contexts() {
  return {FieldContext::rationals(), FieldContext::padic(2), FieldContext::padic(3),
          FieldContext::padic(5)};
}

Curve<ExactScalar> random_poly(FieldContext ctx, int max_deg, Rng& rng) {
  std::vector<ExactScalar> cs;
  int deg = 1 + static_cast<int>(rng.uniform_int(0, max_deg - 1));
  for (int m = 0; m <= deg; ++m) cs.push_back(ExactScalar(rng.rational(9, 4), ctx));
  return Curve<ExactScalar>::polynomial(Domain<ExactScalar>::whole(), {cs});
}

std::vector<ExactScalar> distinct_points(FieldContext ctx, int count, Rng& rng) {
  std::set<Rational> seen;
  std::vector<ExactScalar> pts;
  while (static_cast<int>(pts.size()) < count) {
    Rational r = rng.rational(30, 9);
    if (seen.insert(r).second) pts.push_back(ExactScalar(r, ctx));
  }
  return pts;
}

UltrametricGlueSpec power_spec(unsigned long p, int pieces, bool adversarial) {
  FieldContext ctx = FieldContext::padic(p);
  UltrametricGlueSpec spec;
  spec.context = ctx;
  spec.rho = ExactScalar(Rational(static_cast<long>(p)), ctx);
  spec.calibration = Calibration::constant(Gauge::abs_on_K(), Calibration::Kind::strong);
  spec.probe.a_values = {Rational(2), Rational(static_cast<long>(p))};
  spec.probe.k_max = 3;
  spec.probe.m_max = 2;
  spec.probe.C = Rational(1);
  for (int n = 1; n <= pieces; ++n) {
    auto dom = Domain<ExactScalar>::ball(ExactScalar::zero(ctx),
                                         Magnitude::exact(prime_power(p, -n)));
    long e = adversarial ? -static_cast<long>(n) : static_cast<long>(n) * n;
    spec.pieces.push_back(Curve<ExactScalar>::polynomial(
        dom, {{ExactScalar::zero(ctx), ExactScalar(prime_power(p, e), ctx)}}));
  }
  return spec;
}

// ------------------------------------------------------------------ C1

void c1_diffquot_core(Criterion& c) {
  Rng rng(1001);
  long done = 0;
  for (const auto& ctx : all_contexts()) {
    for (int rep = 0; rep < 50; ++rep) {
      auto curve = random_poly(ctx, 8, rng);
      DiffQuotSession<ExactScalar> session(curve);
      for (int k = 1; k <= 5; ++k) {
        auto pts = distinct_points(ctx, k + 1, rng);

        // permutation symmetry of the defining recursion, all (k+1)! orders
        auto ref = session.diff_quot_recursive(k, pts);
        std::vector<ExactScalar> perm = pts;
        std::sort(perm.begin(), perm.end());
        do {
          if (!(session.diff_quot_recursive(k, perm) == ref)) {
            c.fail("permutation symmetry broken at k=" + std::to_string(k));
            return;
          }
        } while (std::next_permutation(perm.begin(), perm.end()));

        // defining recursion identity
        std::vector<ExactScalar> left(pts.begin(), pts.end() - 1);
        std::vector<ExactScalar> right = left;
        right[0] = pts.back();
        auto lhs = (pts.back() - pts.front()) * session.diff_quot(k, pts);
        auto rhs = session.diff_quot(k - 1, right) - session.diff_quot(k - 1, left);
        if (!(lhs == rhs)) {
          c.fail("recursion identity broken at k=" + std::to_string(k));
          return;
        }

        // k! gamma^<k>(x,..,x) = gamma^(k)(x), three routes
        ExactScalar x(rng.rational(9, 4), ctx);
        Rational kfact(1);
        for (int i = 2; i <= k; ++i) kfact = kfact * Rational(i);
        auto coin = diff_quot_coincident(curve, k, x);
        auto der = polynomial_derivative(curve, k, x);
        std::vector<ExactScalar> rep_tuple(static_cast<size_t>(k) + 1, x);
        auto chs = session.diff_quot(k, rep_tuple);
        if (!(ExactScalar(kfact, ctx) * coin == der) || !(coin == chs)) {
          c.fail("coincident relation broken at k=" + std::to_string(k));
          return;
        }
        ++done;
      }
    }
  }
  c.notes.push_back("200 polynomials x 4 contexts x orders <= 5, exact: " +
                    std::to_string(done) + " order-checks");
}

// ------------------------------------------------------------------ C2

void c2_leibniz(Criterion& c) {
  auto f1 = expand(1);
  if (f1.terms.size() != 2 || f1.terms[{{0, 1}, {1}}] != 1 || f1.terms[{{0}, {0, 1}}] != 1)
    c.fail("order-1 expansion does not match the two-term base formula");
  auto f2 = expand(2);
  if (f2.terms.size() != 3 || f2.terms[{{0, 1, 2}, {1}}] != 1 ||
      f2.terms[{{0, 2}, {1, 2}}] != 1 || f2.terms[{{0}, {0, 1, 2}}] != 1)
    c.fail("order-2 expansion does not match the derived three-term formula");

  for (int n = 1; n <= 10; ++n) {
    auto f = expand(n);
    if (f.coefficient_sum() > (1L << n)) c.fail("sum N > 2^n at n=" + std::to_string(n));
    if (constants(f).sum() > (1L << n)) c.fail("sum C > 2^n at n=" + std::to_string(n));
  }

  Rng rng(1002);
  long checks = 0;
  for (const auto& ctx : {FieldContext::rationals(), FieldContext::padic(5)}) {
    for (int n = 1; n <= 6; ++n) {
      auto f = expand(n);
      for (int rep = 0; rep < 50; ++rep) {
        auto gamma = random_poly(ctx, 4, rng);
        auto eta = random_poly(ctx, 4, rng);
        auto pts = distinct_points(ctx, n + 1, rng);
        auto out = verify_numeric(f, gamma, eta, pts, 0.0, rep % 2 == 1);
        if (!out.passed) {
          c.fail("product rule mismatch at n=" + std::to_string(n));
          return;
        }
        ++checks;
      }
    }
  }
  c.notes.push_back("50 exact tuples per order 1..6 per context: " + std::to_string(checks));
}

// ------------------------------------------------------------------ C3

void c3_extension_estimate(Criterion& c) {
  SamplerConfig cfg;
  long cases = 0;
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    Rng rng(1003 + p);
    auto ctx = FieldContext::padic(p);
    auto ball = Domain<ExactScalar>::ball(ExactScalar::zero(ctx),
                                          Magnitude::exact(Rational(1, (long)p)));
    auto cal = Calibration::constant(Gauge::abs_on_K(), Calibration::Kind::strong);
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<ExactScalar> cs;
      int deg = 1 + static_cast<int>(rng.uniform_int(0, 4));
      for (int m = 0; m <= deg; ++m) cs.push_back(ExactScalar(rng.rational(12, 5), ctx));
      auto piece = Curve<ExactScalar>::polynomial(ball, {cs});
      auto out = check_resestim(piece, 4, cal, cfg, rng, 500);
      if (!out.passed) {
        c.fail("violation at p=" + std::to_string(p));
        return;
      }
      cases += out.checked;
    }
  }
  c.notes.push_back("500 exact tuples per (p, piece, order <= 4): " + std::to_string(cases) +
                    " tuples total");
}

// ------------------------------------------------------------------ C4

void c4_glue_um(Criterion& c) {
  SamplerConfig cfg;
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    Rng rng(1004 + p);
    auto spec = power_spec(p, 8, false);
    auto glued = GluedCurveUM::build(spec);

    auto rep = check_hypothesis(spec, cfg, rng);
    if (rep.verdict != Verdict::pass) {
      c.fail("decaying family not accepted at p=" + std::to_string(p));
      return;
    }
    if (!glued.check_disjoint_supports().passed) {
      c.fail("ball disjointness not certified at p=" + std::to_string(p));
      return;
    }
    auto ident = glued.check_defining_identity(13, cfg, rng);  // 8 x 13 >= 100
    if (!ident.passed || ident.checked < 100) {
      c.fail("gluing identity failed at p=" + std::to_string(p));
      return;
    }
    auto off = glued.check_off_support_zero(100, cfg, rng);
    if (!off.passed || off.checked < 100) {
      c.fail("off-support values not zero at p=" + std::to_string(p));
      return;
    }
    auto bad = check_hypothesis(power_spec(p, 6, true), cfg, rng);
    if (bad.verdict != Verdict::fail) {
      c.fail("growing family not rejected at p=" + std::to_string(p));
      return;
    }
  }
  c.notes.push_back("p in {2,3,5}: accept, exact disjointness, identity, zeros, reject");
}

// ------------------------------------------------------------------ C5

void c5_glue_re(Criterion& c) {
  RealGlueSpec spec;
  spec.calibration = Calibration::constant(Gauge::abs_on_K(), Calibration::Kind::ordinary);
  spec.probe.k_max = 2;
  spec.probe.l_max = 3;
  spec.probe.m_max = 2;
  for (int n = 1; n <= 6; ++n) {
    spec.s.push_back(Rational(1) / Rational(2).pow(n));
    double r = spec.s.back().to_double() + 2.0 / (n * n);
    double coeff = std::pow(2.0, -static_cast<double>(n) * n);
    spec.pieces.push_back(Curve<double>::polynomial(Domain<double>::interval(-r, r),
                                                    {{0.0, 0.0, coeff}}));
  }
  auto glued = GluedCurveRE::build(spec);

  if (!(glued.t()[0] == Rational(5, 2))) c.fail("t_1 != 5/2");
  if (!(glued.t()[1] == Rational(23, 4))) c.fail("t_2 != 23/4");
  if (!glued.check_center_increments().passed) c.fail("center increments not exact");
  if (!glued.check_disjoint_supports().passed) c.fail("supports not exactly disjoint");

  Rng rng(1005);
  auto ident = glued.check_glue_identity(100, 1e-9, rng);
  if (!ident.passed || ident.checked != 100) c.fail("gluing identity beyond 1e-9");
  c.notes.push_back("t_1 = 5/2, t_2 = 23/4 exact; identity at 100 random (n,t)");
}

// ------------------------------------------------------------------ C6

void c6_cutoff(Criterion& c) {
  SamplerConfig cfg;
  MnTable mn = estimate_Mn(4, cfg, 1.5);
  Rng rng(1006);
  for (auto [a, b] : std::vector<std::pair<double, double>>{
           {1.0, 1.0}, {1.0, 0.25}, {0.5, 1.0 / 9.0}}) {
    auto shape = check_cutoff_shape(a, b, 1000, rng);
    if (!shape.passed) {
      c.fail("plateau/support/range failed at a=" + std::to_string(a) +
             " b=" + std::to_string(b));
      return;
    }
    auto bound = check_cutoff_bound(a, b, mn, 4, cfg, rng);
    if (!bound.passed) {
      c.fail("derivative bound failed at a=" + std::to_string(a) + " b=" + std::to_string(b));
      return;
    }
  }
  std::ostringstream ms;
  ms << "M (safety 1.5):";
  for (double m : mn.inflated) ms << " " << m;
  c.notes.push_back(ms.str());
}

// ------------------------------------------------------------------ C7

void c7_calibrations(Criterion& c) {
  Rng rng(1007);
  const double slack = 1e-9;

  // ordinary fake triangle, exact l^1 vectors
  SamplerConfig cfg;
  auto arch = FieldContext::rationals();
  Calibration flat = Calibration::constant(Gauge::p_norm(Rational(1)),
                                           Calibration::Kind::ordinary);
  std::vector<std::pair<VectorT<ExactScalar>, VectorT<ExactScalar>>> qpairs;
  for (int i = 0; i < 1000; ++i)
    qpairs.emplace_back(random_vector(3, arch, cfg, rng), random_vector(3, arch, cfg, rng));
  if (!check_fake_triangle(flat, qpairs, 3, 0.0).passed)
    c.fail("ordinary fake triangle inequality failed");

  // strong calibration 2^(n/r) on l^(1/2)
  Calibration strong = calibration_from_rseminorm(Gauge::p_norm(Rational(1, 2)),
                                                  Rational(1, 2));
  std::vector<std::pair<VectorT<double>, VectorT<double>>> pairs;
  for (int i = 0; i < 1000; ++i)
    pairs.emplace_back(random_real_vector(4, 2.0, rng), random_real_vector(4, 2.0, rng));
  if (!check_fake_triangle(strong, pairs, 4, slack).passed)
    c.fail("fake ultrametric inequality failed on l^(1/2)");

  // companion max-inequality
  Gauge half = Gauge::p_norm(Rational(1, 2));
  Gauge comp = triangle_companion(half, false);
  long done = 0;
  for (int i = 0; i < 1000; ++i) {
    auto x = random_real_vector(4, 2.0, rng);
    auto y = random_real_vector(4, 2.0, rng);
    if (!half.eval(x + y).leq_with_slack(Magnitude::max(comp.eval(x), comp.eval(y)), slack)) {
      c.fail("companion max-inequality failed");
      break;
    }
    ++done;
  }

  // partial-sum bound, 1000 random prefixes
  for (int i = 0; i < 1000; ++i) {
    std::vector<VectorT<double>> terms;
    double f = 1.0;
    double ratio = rng.uniform(0.2, 0.95);
    auto base = random_real_vector(3, 2.0, rng);
    for (int k = 0; k < 8; ++k) {
      terms.push_back(f * base);
      f *= ratio;
    }
    int m = static_cast<int>(rng.uniform_int(1, 4));
    int n = static_cast<int>(rng.uniform_int(m, 8));
    if (!partial_sum_bound(terms, strong, m, n, slack).passed) {
      c.fail("partial-sum bound failed");
      break;
    }
  }
  c.notes.push_back(">= 1000 random inputs per inequality, zero violations");
  (void)done;
}

// ------------------------------------------------------------------ C8

int shell(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

void strip_timing(json& j) {
  if (j.is_object()) {
    j.erase("ms");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

void c8_cli(Criterion& c) {
  const std::string bin = CURVELAB_BIN;
  const std::string root = CURVELAB_ROOT;
  const std::string rep1 = "/tmp/curvelab_acc_rep1.json";
  const std::string rep2 = "/tmp/curvelab_acc_rep2.json";
  const std::string rep3 = "/tmp/curvelab_acc_rep3.json";

  int code = shell(bin + " verify --config " + root + "/configs/default.json --suite all" +
                   " --seed 42 --out " + rep1 + " 2>/dev/null");
  if (code != 0) {
    c.fail("default config exited " + std::to_string(code));
    return;
  }
  std::ifstream in(rep1);
  json rep;
  in >> rep;
  std::ifstream sin(root + "/schemas/report.schema.json");
  json schema;
  sin >> schema;
  if (auto err = validate_schema(rep, schema)) {
    c.fail("report not schema-valid: " + *err);
    return;
  }

  int bad = shell(bin + " verify --config " + root + "/configs/adversarial.json --suite all" +
                  " --out " + rep3 + " 2>/dev/null");
  if (bad != 1) {
    c.fail("adversarial config exited " + std::to_string(bad) + ", expected 1");
    return;
  }

  if (shell(bin + " verify --config " + root + "/configs/default.json --suite all" +
            " --seed 42 --out " + rep2 + " 2>/dev/null") != 0) {
    c.fail("second deterministic run failed");
    return;
  }
  std::ifstream in1(rep1), in2(rep2);
  json a, b;
  in1 >> a;
  in2 >> b;
  strip_timing(a);
  strip_timing(b);
  if (a.dump() != b.dump()) {
    c.fail("reports differ for identical config and seed");
    return;
  }
  c.notes.push_back("exit codes 0/1, schema-valid, seed-deterministic");
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");

  Criterion c1{"C1 difference-quotient core (exact, 4 contexts)", 10.0};
  run(c1, c1_diffquot_core);
  Criterion c2{"C2 product expansion and numeric verification", 30.0};
  run(c2, c2_leibniz);
  Criterion c3{"C3 ultrametric extension-by-zero estimate", 60.0};
  run(c3, c3_extension_estimate);
  Criterion c4{"C4 ultrametric gluing (accept + reject)", 30.0};
  run(c4, c4_glue_um);
  Criterion c5{"C5 real gluing (exact centers, identity)", 30.0};
  run(c5, c5_glue_re);
  Criterion c6{"C6 cut-off family bounds", 60.0};
  run(c6, c6_cutoff);
  Criterion c7{"C7 calibration inequalities", 20.0};
  run(c7, c7_calibrations);
  Criterion c8{"C8 end-to-end CLI", 180.0};
  run(c8, c8_cli);

  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures;
}
