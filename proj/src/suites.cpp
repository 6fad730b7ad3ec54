#include "curvelab/suites.hpp"

#include <chrono>
#include <functional>

#include "curvelab/leibniz.hpp"

namespace curvelab {

namespace {

class Recorder {
 public:
  explicit Recorder(VerificationReport& rep) : rep_(rep) {}

  void run(const std::string& id, const std::string& anchor,
           const std::function<CheckOutcome()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    CheckRecord rec;
    try {
      CheckOutcome out = fn();
      rec = CheckRecord::from_outcome(id, anchor, out);
    } catch (const std::exception& e) {
      rec.id = id;
      rec.anchor = anchor;
      rec.verdict = Verdict::fail;
      rec.witness = nlohmann::json{{"error", e.what()}};
    }
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                 .count();
    rep_.checks.push_back(std::move(rec));
  }

  void add(const std::string& id, const std::string& anchor, Verdict v,
           nlohmann::json witness) {
    CheckRecord rec;
    rec.id = id;
    rec.anchor = anchor;
    rec.verdict = v;
    rec.witness = std::move(witness);
    rep_.checks.push_back(std::move(rec));
  }

 private:
  VerificationReport& rep_;
};

Curve<ExactScalar> random_poly_q(FieldContext ctx, int max_deg, int dim,
                                 const Domain<ExactScalar>& dom, Rng& rng,
                                 long num_bound = 9, long den_bound = 4) {
  typename Curve<ExactScalar>::Coeffs coeffs;
  int deg = static_cast<int>(rng.uniform_int(0, max_deg));
  for (int c = 0; c < dim; ++c) {
    std::vector<ExactScalar> cs;
    for (int m = 0; m <= deg; ++m)
      cs.push_back(ExactScalar(rng.rational(num_bound, den_bound), ctx));
    coeffs.push_back(std::move(cs));
  }
  return Curve<ExactScalar>::polynomial(dom, std::move(coeffs));
}

std::vector<ExactScalar> random_distinct_points(FieldContext ctx, int count, Rng& rng,
                                                long num_bound = 30, long den_bound = 10) {
  std::set<Rational> seen;
  std::vector<ExactScalar> pts;
  while (static_cast<int>(pts.size()) < count) {
    Rational r = rng.rational(num_bound, den_bound);
    if (seen.insert(r).second) pts.push_back(ExactScalar(r, ctx));
  }
  return pts;
}

/// Exact Lagrange interpolation value at 0 from (node, value) pairs.
VectorT<ExactScalar> lagrange_at_zero(const std::vector<ExactScalar>& nodes,
                                      const std::vector<VectorT<ExactScalar>>& values) {
  VectorT<ExactScalar> acc = VectorT<ExactScalar>::zero(values.front().dim(), nodes.front());
  for (size_t i = 0; i < nodes.size(); ++i) {
    ExactScalar w = ExactScalar::one(nodes[i].context());
    for (size_t j = 0; j < nodes.size(); ++j) {
      if (j == i) continue;
      w = w * ((-nodes[j]) / (nodes[i] - nodes[j]));
    }
    acc = acc + w * values[i];
  }
  return acc;
}

// ---------------------------------------------------------------- scalar

void suite_scalar(Recorder& rec, const VerifyConfig& cfg) {
  rec.run("scalar.abs_multiplicative", "|xy| = |x| |y|", [&] {
    CheckOutcome out;
    Rng rng(cfg.seed + 11);
    std::vector<FieldContext> ctxs{FieldContext::rationals()};
    for (auto p : cfg.primes) ctxs.push_back(FieldContext::padic(p));
    for (const auto& ctx : ctxs)
      for (int i = 0; i < 300; ++i) {
        ExactScalar x(rng.rational(50, 15), ctx);
        ExactScalar y(rng.rational(50, 15), ctx);
        ++out.checked;
        if (!(abs_value(x * y) == abs_value(x) * abs_value(y)))
          out.add_violation("x=" + x.to_string() + " y=" + y.to_string());
      }
    return out;
  });

  rec.run("scalar.ultrametric_max", "|x+y| <= max(|x|, |y|)", [&] {
    CheckOutcome out;
    Rng rng(cfg.seed + 12);
    for (auto p : cfg.primes) {
      auto ctx = FieldContext::padic(p);
      for (int i = 0; i < 400; ++i) {
        ExactScalar x(rng.rational(50, 15), ctx);
        ExactScalar y(rng.rational(50, 15), ctx);
        ++out.checked;
        if (!(abs_value(x + y) <= Magnitude::max(abs_value(x), abs_value(y))))
          out.add_violation("x=" + x.to_string() + " y=" + y.to_string());
      }
    }
    return out;
  });

  rec.run("scalar.ultrametric_strict_equality", "|x+y| = |x| when |y| < |x|", [&] {
    CheckOutcome out;
    Rng rng(cfg.seed + 13);
    for (auto p : cfg.primes) {
      auto ctx = FieldContext::padic(p);
      for (int i = 0; i < 400; ++i) {
        ExactScalar x(rng.nonzero_rational(50, 15), ctx);
        ExactScalar y(rng.rational(50, 15), ctx);
        if (!(abs_value(y) < abs_value(x))) continue;
        ++out.checked;
        if (!(ultrametric_sum_law(x, y) == abs_value(x)))
          out.add_violation("x=" + x.to_string() + " y=" + y.to_string());
      }
    }
    return out;
  });

  rec.run("scalar.ball_clopen", "x in B(c,r), |y-x| <= r  =>  y in B(c,r)", [&] {
    CheckOutcome out;
    Rng rng(cfg.seed + 14);
    auto ctx = FieldContext::padic(cfg.primes.empty() ? 3 : cfg.primes.front());
    for (int i = 0; i < 2500; ++i) {
      ExactScalar c(rng.rational(30, 9), ctx);
      ExactScalar x(rng.rational(30, 9), ctx);
      ExactScalar y(rng.rational(30, 9), ctx);
      Magnitude r = Magnitude::exact(prime_power(ctx.prime, rng.uniform_int(-2, 2)));
      if (!in_closed_ball(x, c, r) || !(abs_value(y - x) <= r)) continue;
      ++out.checked;
      if (!in_closed_ball(y, c, r))
        out.add_violation("c=" + c.to_string() + " x=" + x.to_string() + " y=" + y.to_string());
    }
    return out;
  });

  rec.run("scalar.serialization_roundtrip", "plumbing", [&] {
    CheckOutcome out;
    Rng rng(cfg.seed + 15);
    for (int i = 0; i < 200; ++i) {
      Rational r = rng.rational(1000, 999);
      ++out.checked;
      if (Rational::from_string(r.to_string()) != r)
        out.add_violation("rational " + r.to_string());
    }
    Magnitude m = Magnitude::exact(prime_power(3, -2));
    auto j = magnitude_to_json(m, 3ul);
    ++out.checked;
    if (!(magnitude_from_json(j) == m)) out.add_violation("magnitude p-power round trip");
    return out;
  });
}

// ---------------------------------------------------------------- gauges

void suite_gauges(Recorder& rec, const VerifyConfig& cfg) {
  const double slack = cfg.slack;

  rec.run("gauges.homogeneity", "q(t x) = |t| q(x)", [&] {
    CheckOutcome out;
    Rng rng(cfg.seed + 21);
    std::vector<Gauge> gauges{Gauge::abs_on_K(), Gauge::p_norm(Rational(1)),
                              Gauge::scaled(Gauge::abs_on_K(), Magnitude::exact(Rational(3))),
                              Gauge::sum({Gauge::abs_on_K(), Gauge::p_norm(Rational(1))})};
    std::vector<FieldContext> ctxs{FieldContext::rationals()};
    for (auto p : cfg.primes) ctxs.push_back(FieldContext::padic(p));
    for (const auto& ctx : ctxs)
      for (const auto& q : gauges)
        for (int i = 0; i < 120; ++i) {
          auto x = random_vector(3, ctx, cfg.sampler, rng);
          ExactScalar t(rng.rational(20, 7), ctx);
          ++out.checked;
          if (!(q.eval(t * x) == abs_value(t) * q.eval(x)))
            out.add_violation("exact gauge, t=" + t.to_string());
        }
    // root gauges in double coordinates, 1e-12 tolerance
    Gauge half = Gauge::p_norm(Rational(1, 2));
    for (int i = 0; i < 400; ++i) {
      auto x = random_real_vector(4, 3.0, rng);
      double t = rng.uniform(-4.0, 4.0);
      double lhs = half.eval(t * x).as_double();
      double rhs = std::fabs(t) * half.eval(x).as_double();
      ++out.checked;
      if (std::fabs(lhs - rhs) > 1e-12 * std::max({lhs, rhs, 1.0}))
        out.add_violation("p_norm(1/2) homogeneity at t=" + std::to_string(t));
    }
    return out;
  });

  rec.run("gauges.fake_triangle_ordinary", "q_n(x+y) <= q_{n+1}(x) + q_{n+1}(y)", [&] {
    Rng rng(cfg.seed + 22);
    auto ctx = FieldContext::rationals();
    Calibration cal = Calibration::constant(Gauge::p_norm(Rational(1)),
                                            Calibration::Kind::ordinary);
    std::vector<std::pair<VectorT<ExactScalar>, VectorT<ExactScalar>>> pairs;
    for (int i = 0; i < 300; ++i)
      pairs.emplace_back(random_vector(3, ctx, cfg.sampler, rng),
                         random_vector(3, ctx, cfg.sampler, rng));
    CheckOutcome out = check_fake_triangle(cal, pairs, 3, 0.0);
    // a shifted calibration keeps the inequality
    Calibration sh = Calibration::shifted(cal, 2, Magnitude::exact(Rational(3)));
    out.merge(check_fake_triangle(sh, pairs, 3, 0.0));
    return out;
  });

  rec.run("gauges.fake_ultrametric_strong", "q_n(x+y) <= max(q_{n+1}(x), q_{n+1}(y))", [&] {
    Rng rng(cfg.seed + 23);
    Calibration cal = calibration_from_rseminorm(Gauge::p_norm(Rational(1, 2)), Rational(1, 2));
    std::vector<std::pair<VectorT<double>, VectorT<double>>> pairs;
    for (int i = 0; i < 1000; ++i)
      pairs.emplace_back(random_real_vector(4, 2.0, rng), random_real_vector(4, 2.0, rng));
    return check_fake_triangle(cal, pairs, 4, slack);
  });

  rec.run("gauges.triangle_companion", "q(x+y) <= max(p(x), p(y))", [&] {
    CheckOutcome out;
    Rng rng(cfg.seed + 24);
    Gauge q = Gauge::p_norm(Rational(1, 2));
    Gauge p = triangle_companion(q, false);
    if (!(p.factor() == Magnitude::exact(Rational(4))))
      out.add_violation("companion of an (1/2)-seminorm should scale by 4");
    for (int i = 0; i < 1000; ++i) {
      auto x = random_real_vector(4, 2.0, rng);
      auto y = random_real_vector(4, 2.0, rng);
      ++out.checked;
      if (!q.eval(x + y).leq_with_slack(Magnitude::max(p.eval(x), p.eval(y)), slack))
        out.add_violation("companion bound fails");
    }
    auto ctx3 = FieldContext::padic(3);
    Gauge abs = Gauge::abs_on_K();
    Gauge pu = triangle_companion(abs, true);
    Gauge pa = triangle_companion(abs, false);
    for (int i = 0; i < 400; ++i) {
      auto x = random_vector(1, ctx3, cfg.sampler, rng);
      auto y = random_vector(1, ctx3, cfg.sampler, rng);
      ++out.checked;
      if (!(abs.eval(x + y) <= Magnitude::max(pu.eval(x), pu.eval(y))))
        out.add_violation("ultrametric companion fails");
    }
    auto arch = FieldContext::rationals();
    for (int i = 0; i < 400; ++i) {
      auto x = random_vector(1, arch, cfg.sampler, rng);
      auto y = random_vector(1, arch, cfg.sampler, rng);
      ++out.checked;
      if (!(abs.eval(x + y) <= Magnitude::max(pa.eval(x), pa.eval(y))))
        out.add_violation("archimedean companion fails");
    }
    return out;
  });

  rec.run("gauges.partial_sum_bound", "||sum_{k=m..n} x_k||_{q_0} <= sum ||x_k||_{q_k}", [&] {
    CheckOutcome out;
    Rng rng(cfg.seed + 25);
    Calibration strong = calibration_from_rseminorm(Gauge::p_norm(Rational(1, 2)),
                                                    Rational(1, 2));
    for (int rep = 0; rep < 100; ++rep) {
      // geometric series prefix in l^(1/2)
      double ratio = rng.uniform(0.2, 0.9);
      VectorT<double> base = random_real_vector(3, 2.0, rng);
      std::vector<VectorT<double>> terms;
      double f = 1.0;
      for (int k = 0; k < 9; ++k) {
        terms.push_back(f * base);
        f *= ratio;
      }
      int m = static_cast<int>(rng.uniform_int(1, 5));
      int n = static_cast<int>(rng.uniform_int(m, 9));
      out.merge(partial_sum_bound(terms, strong, m, n, slack));
    }
    Calibration exact = Calibration::constant(Gauge::p_norm(Rational(1)),
                                              Calibration::Kind::ordinary);
    auto ctx = FieldContext::rationals();
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<VectorT<ExactScalar>> terms;
      for (int k = 0; k < 6; ++k) terms.push_back(random_vector(3, ctx, cfg.sampler, rng));
      int m = static_cast<int>(rng.uniform_int(1, 3));
      int n = static_cast<int>(rng.uniform_int(m, 6));
      out.merge(partial_sum_bound(terms, exact, m, n, 0.0));
    }
    return out;
  });

  rec.run("gauges.minkowski_sandwich", "q <= mu_U for U inside the unit q-ball", [&] {
    CheckOutcome out;
    Rng rng(cfg.seed + 26);
    auto ctx = FieldContext::rationals();
    Gauge q1 = Gauge::p_norm(Rational(1));
    BallDescriptor U(q1, Magnitude::exact(Rational(1)), true);
    std::vector<ExactScalar> candidates;
    for (int e = -8; e <= 8; ++e)
      candidates.push_back(ExactScalar(Rational(2).pow(e), ctx));
    std::vector<VectorT<ExactScalar>> samples;
    for (int i = 0; i < 200; ++i) samples.push_back(random_vector(2, ctx, cfg.sampler, rng));
    samples.push_back(VectorT<ExactScalar>{ExactScalar::zero(ctx), ExactScalar::zero(ctx)});
    out.merge(check_sandwich(q1, U, samples, candidates, 0.0));

    // frozen example: in Q_3 the unit abs-ball assigns mu(9) = 1/9
    auto ctx3 = FieldContext::padic(3);
    BallDescriptor U3(Gauge::abs_on_K(), Magnitude::exact(Rational(1)), false);
    std::vector<ExactScalar> cand3;
    for (int e = -2; e <= 2; ++e) cand3.push_back(ExactScalar(prime_power(3, e), ctx3));
    auto mu = minkowski(U3, VectorT<ExactScalar>{ExactScalar(Rational(9), ctx3)}, cand3);
    ++out.checked;
    if (!mu || !(*mu == Magnitude::exact(Rational(1, 9))))
      out.add_violation("mu_U(9) != 1/9 in Q_3");
    return out;
  });

  rec.run("gauges.sandwich_premise_needed", "scaled gauge outside the unit-ball premise",
          [&] {
            CheckOutcome out;
            Rng rng(cfg.seed + 27);
            auto ctx = FieldContext::rationals();
            Gauge q1 = Gauge::p_norm(Rational(1));
            Gauge q2 = Gauge::scaled(q1, Magnitude::exact(Rational(2)));
            BallDescriptor U(q1, Magnitude::exact(Rational(1)), true);
            std::vector<ExactScalar> candidates;
            for (int e = -8; e <= 8; ++e)
              candidates.push_back(ExactScalar(Rational(2).pow(e), ctx));
            std::vector<VectorT<ExactScalar>> samples;
            for (int i = 0; i < 100; ++i)
              samples.push_back(random_vector(2, ctx, cfg.sampler, rng));
            CheckOutcome bad = check_sandwich(q2, U, samples, candidates, 0.0);
            out.checked = bad.checked;
            if (bad.passed)
              out.add_violation("expected violations for 2*q against q's own unit ball");
            return out;
          });
}

// ---------------------------------------------------------------- diffquot

void suite_diffquot(Recorder& rec, const VerifyConfig& cfg) {
  std::vector<FieldContext> ctxs{FieldContext::rationals()};
  for (auto p : cfg.primes) ctxs.push_back(FieldContext::padic(p));

  rec.run("diffquot.permutation_symmetry", "gamma^<k> symmetric in its k+1 variables", [&] {
    CheckOutcome out;
    Rng rng(cfg.seed + 31);
    for (const auto& ctx : ctxs)
      for (int rep = 0; rep < 10; ++rep) {
        auto c = random_poly_q(ctx, 8, 1, Domain<ExactScalar>::whole(), rng);
        DiffQuotSession<ExactScalar> session(c);
        for (int k = 1; k <= 4; ++k) {
          auto pts = random_distinct_points(ctx, k + 1, rng);
          VectorT<ExactScalar> ref = session.diff_quot_recursive(k, pts);
          std::vector<ExactScalar> perm = pts;
          std::sort(perm.begin(), perm.end());
          int tried = 0;
          do {
            ++out.checked;
            if (!(session.diff_quot_recursive(k, perm) == ref)) {
              out.add_violation("order " + std::to_string(k) + " permutation mismatch");
              break;
            }
          } while (++tried < 24 && std::next_permutation(perm.begin(), perm.end()));
        }
      }
    return out;
  });

  rec.run("diffquot.recursion_identity",
          "(x_k - x_0) gamma^<k>(x) = gamma^<k-1>(x_k,x_1,..) - gamma^<k-1>(x_0,x_1,..)",
          [&] {
            CheckOutcome out;
            Rng rng(cfg.seed + 32);
            for (const auto& ctx : ctxs)
              for (int rep = 0; rep < 10; ++rep) {
                auto c = random_poly_q(ctx, 8, 2, Domain<ExactScalar>::whole(), rng);
                for (int k = 1; k <= 5; ++k) {
                  auto pts = random_distinct_points(ctx, k + 1, rng);
                  std::vector<ExactScalar> left(pts.begin(), pts.end() - 1);
                  std::vector<ExactScalar> right = left;
                  right[0] = pts.back();
                  auto lhs = (pts.back() - pts.front()) * diff_quot(c, k, pts);
                  auto rhs = diff_quot(c, k - 1, right) - diff_quot(c, k - 1, left);
                  ++out.checked;
                  if (!(lhs == rhs)) out.add_violation("recursion identity, k=" + std::to_string(k));
                }
              }
            return out;
          });

  rec.run("diffquot.symbolic_equals_recursive",
          "closed-form polynomial path = defining recursion", [&] {
            CheckOutcome out;
            Rng rng(cfg.seed + 33);
            for (const auto& ctx : ctxs)
              for (int rep = 0; rep < 8; ++rep) {
                auto c = random_poly_q(ctx, 7, 1, Domain<ExactScalar>::whole(), rng);
                DiffQuotSession<ExactScalar> session(c);
                for (int k = 0; k <= 4; ++k) {
                  auto pts = random_distinct_points(ctx, k + 1, rng);
                  ++out.checked;
                  if (!(session.diff_quot(k, pts) == session.diff_quot_recursive(k, pts)))
                    out.add_violation("paths disagree at k=" + std::to_string(k));
                }
              }
            return out;
          });

  rec.run("diffquot.coincident_limit",
          "k! gamma^<k>(x,..,x) = d^k gamma / dx^k; constant epsilon-interpolation term",
          [&] {
            CheckOutcome out;
            Rng rng(cfg.seed + 34);
            for (const auto& ctx : ctxs)
              for (int rep = 0; rep < 4; ++rep) {
                auto c = random_poly_q(ctx, 6, 1, Domain<ExactScalar>::whole(), rng);
                for (int k = 0; k <= 3; ++k) {
                  ExactScalar x(rng.rational(9, 4), ctx);
                  auto sym = diff_quot_coincident(c, k, x);
                  // independent route: k-fold symbolic derivative / k!
                  Rational kfact(1);
                  for (int i = 2; i <= k; ++i) kfact = kfact * Rational(i);
                  auto der = polynomial_derivative(c, k, x) /
                             ExactScalar(kfact, ctx);
                  ++out.checked;
                  if (!(sym == der)) {
                    out.add_violation("derivative route mismatch at k=" + std::to_string(k));
                    continue;
                  }
                  if (k == 0) continue;
                  // evaluate on tuples (x, x+e, .., x+ke) for several small
                  // rational e; the interpolated value at e = 0 must equal
                  // the coincident value
                  int nodes = 8;
                  std::vector<ExactScalar> eps;
                  std::vector<VectorT<ExactScalar>> vals;
                  DiffQuotSession<ExactScalar> session(c);
                  for (int i = 0; i < nodes; ++i) {
                    ExactScalar e(Rational(1, 7 + i), ctx);
                    std::vector<ExactScalar> tuple;
                    for (int j = 0; j <= k; ++j)
                      tuple.push_back(x + ExactScalar(Rational(j), ctx) * e);
                    eps.push_back(e);
                    vals.push_back(session.diff_quot(k, tuple));
                  }
                  ++out.checked;
                  if (!(lagrange_at_zero(eps, vals) == sym))
                    out.add_violation("epsilon interpolation limit mismatch, k=" +
                                      std::to_string(k));
                }
              }
            return out;
          });

  rec.run("diffquot.transform_laws",
          "translate/scale/restrict transport of difference quotients", [&] {
            CheckOutcome out;
            Rng rng(cfg.seed + 35);
            for (const auto& ctx : ctxs)
              for (int rep = 0; rep < 8; ++rep) {
                auto c = random_poly_q(ctx, 6, 2, Domain<ExactScalar>::whole(), rng);
                ExactScalar t0(rng.rational(9, 4), ctx);
                ExactScalar a(rng.nonzero_rational(9, 4), ctx);
                auto tr = c.translated(t0);
                auto sc = c.scaled_arg(a);
                for (int k = 0; k <= 4; ++k) {
                  auto pts = random_distinct_points(ctx, k + 1, rng);
                  std::vector<ExactScalar> shifted, scaled;
                  for (const auto& x : pts) {
                    shifted.push_back(x + t0);
                    scaled.push_back(a * x);
                  }
                  ++out.checked;
                  if (!(diff_quot(tr, k, pts) == diff_quot(c, k, shifted)))
                    out.add_violation("translate law, k=" + std::to_string(k));
                  ExactScalar ak = ExactScalar::one(ctx);
                  for (int i = 0; i < k; ++i) ak = ak * a;
                  ++out.checked;
                  if (!(diff_quot(sc, k, pts) == ak * diff_quot(c, k, scaled)))
                    out.add_violation("scale law, k=" + std::to_string(k));
                }
              }
            // restriction agrees on the subdomain
            auto ctx = FieldContext::rationals();
            auto c = random_poly_q(ctx, 5, 1, Domain<ExactScalar>::whole(), rng);
            auto sub = Domain<ExactScalar>::interval(ExactScalar(Rational(-1), ctx),
                                                     ExactScalar(Rational(1), ctx));
            auto restr = c.restricted(sub);
            SamplerConfig sc_cfg = cfg.sampler;
            Rng rng2(cfg.seed + 36);
            auto pts = sample_points(sub, sc_cfg, rng2);
            for (int k = 0; k <= 3; ++k) {
              auto tuples = tuples_from_points(pts, k, 20, rng2);
              for (const auto& t : tuples) {
                ++out.checked;
                if (!(diff_quot(restr, k, t) == diff_quot(c, k, t)))
                  out.add_violation("restrict law, k=" + std::to_string(k));
              }
            }
            return out;
          });

  rec.run("diffquot.certified_bound",
          "sampled sup <= coefficient bound max_m |a_m| R^(m-k) on ultrametric balls", [&] {
            CheckOutcome out;
            Rng rng(cfg.seed + 37);
            for (auto p : cfg.primes) {
              auto ctx = FieldContext::padic(p);
              auto dom = Domain<ExactScalar>::ball(ExactScalar::zero(ctx),
                                                   Magnitude::exact(Rational(1, (long)p)));
              for (int rep = 0; rep < 4; ++rep) {
                auto c = random_poly_q(ctx, 5, 1, dom, rng);
                for (int k = 0; k <= 4; ++k) {
                  auto tuples = sample_tuples(dom, k, cfg.sampler, rng);
                  auto est = sup_gauge(c, k, Gauge::abs_on_K(), tuples);
                  ++out.checked;
                  if (!est.upper) {
                    out.add_violation("missing certified bound");
                    continue;
                  }
                  if (!(est.lower <= *est.upper))
                    out.add_violation("bracket inverted at k=" + std::to_string(k));
                }
              }
              // monomials x^m: the bound is R^(m-k) and is attained
              for (int m = 1; m <= 4; ++m) {
                std::vector<ExactScalar> cs(m + 1, ExactScalar::zero(ctx));
                cs.back() = ExactScalar::one(ctx);
                auto mono = Curve<ExactScalar>::polynomial(dom, {cs});
                for (int k = 0; k <= m; ++k) {
                  auto bound = certified_sup_bound(mono, k, Gauge::abs_on_K());
                  ++out.checked;
                  if (!bound ||
                      !(*bound == Magnitude::exact(Rational(1, (long)p).pow(m - k))))
                    out.add_violation("monomial bound != R^(m-k)");
                }
              }
            }
            return out;
          });

  rec.run("diffquot.supgauge_linear_piece", "||(3t)^<1>|| on the 1/3-ball equals 1/3", [&] {
    CheckOutcome out;
    Rng rng(cfg.seed + 38);
    auto ctx = FieldContext::padic(3);
    auto dom = Domain<ExactScalar>::ball(ExactScalar::zero(ctx),
                                         Magnitude::exact(Rational(1, 3)));
    auto c = Curve<ExactScalar>::polynomial(
        dom, {{ExactScalar::zero(ctx), ExactScalar(Rational(3), ctx)}});
    auto tuples = sample_tuples(dom, 1, cfg.sampler, rng);
    auto est = sup_gauge(c, 1, Gauge::abs_on_K(), tuples);
    ++out.checked;
    if (!(est.lower == Magnitude::exact(Rational(1, 3))) || !est.upper ||
        !(*est.upper == Magnitude::exact(Rational(1, 3))))
      out.add_violation("expected lower = upper = 1/3");
    // order 0 of the zero curve
    auto z = Curve<ExactScalar>::polynomial(dom, {{ExactScalar::zero(ctx)}});
    auto est0 = sup_gauge(z, 0, Gauge::abs_on_K(), sample_tuples(dom, 0, cfg.sampler, rng));
    ++out.checked;
    if (!est0.lower.is_zero()) out.add_violation("zero curve sup not 0");
    return out;
  });

  rec.run("diffquot.curve_space_calibration",
          "sup-gauges of a calibration stay a calibration on curves", [&] {
            CheckOutcome out;
            Rng rng(cfg.seed + 39);
            auto ctx = FieldContext::rationals();
            Calibration cal = Calibration::constant(Gauge::p_norm(Rational(1)),
                                                    Calibration::Kind::ordinary);
            for (int rep = 0; rep < 6; ++rep) {
              auto c1 = random_poly_q(ctx, 5, 2, Domain<ExactScalar>::whole(), rng);
              auto c2 = random_poly_q(ctx, 5, 2, Domain<ExactScalar>::whole(), rng);
              auto sum = Curve<ExactScalar>::sum({c1, c2});
              for (int j = 0; j <= 2; ++j) {
                auto pts = random_distinct_points(ctx, 8, rng);
                auto tuples = tuples_from_points(pts, j, 30, rng);
                for (int n = 0; n <= 2; ++n) {
                  Gauge qn = Gauge::sup_on_curves(j, cal.at(n));
                  Gauge qn1 = Gauge::sup_on_curves(j, cal.at(n + 1));
                  Magnitude lhs = eval_curve_gauge(qn, sum, tuples);
                  Magnitude rhs = eval_curve_gauge(qn1, c1, tuples) +
                                  eval_curve_gauge(qn1, c2, tuples);
                  ++out.checked;
                  if (!(lhs <= rhs))
                    out.add_violation("curve-space fake triangle fails at j=" +
                                      std::to_string(j));
                }
              }
            }
            return out;
          });
}

// ---------------------------------------------------------------- leibniz

void suite_leibniz(Recorder& rec, const VerifyConfig& cfg) {
  rec.run("leibniz.base_formulas", "two terms at order 1; three terms at order 2", [&] {
    CheckOutcome out;
    auto f1 = expand(1);
    ++out.checked;
    if (f1.terms.size() != 2 || f1.terms[{{0, 1}, {1}}] != 1 || f1.terms[{{0}, {0, 1}}] != 1)
      out.add_violation("order-1 base formula mismatch");
    auto f2 = expand(2);
    ++out.checked;
    if (f2.terms.size() != 3 || f2.terms[{{0, 1, 2}, {1}}] != 1 ||
        f2.terms[{{0, 2}, {1, 2}}] != 1 || f2.terms[{{0}, {0, 1, 2}}] != 1)
      out.add_violation("order-2 formula mismatch");
    return out;
  });

  rec.run("leibniz.coefficient_bounds", "sum N_{i,j} <= 2^n and sum C_k <= 2^n", [&] {
    CheckOutcome out;
    for (int n = 1; n <= 10; ++n) {
      auto f = expand(n);
      auto cs = constants(f);
      ++out.checked;
      if (f.coefficient_sum() > (1L << n)) out.add_violation("N bound at n=" + std::to_string(n));
      ++out.checked;
      if (cs.sum() > (1L << n)) out.add_violation("C bound at n=" + std::to_string(n));
      for (int v : f.terms.begin()->first.i)
        if (v < 0 || v > n) out.add_violation("index out of range");
    }
    return out;
  });

  rec.run("leibniz.determinism", "plumbing", [&] {
    CheckOutcome out;
    for (int n = 1; n <= 8; ++n) {
      ++out.checked;
      if (!(expand(n).terms == expand(n).terms))
        out.add_violation("expand not deterministic at n=" + std::to_string(n));
    }
    return out;
  });

  rec.run("leibniz.product_rule_numeric",
          "(beta(gamma,eta))^<n> = sum N_{i,j} beta(gamma^<k>(x_i..), eta^<l>(x_j..))", [&] {
            CheckOutcome out;
            Rng rng(cfg.seed + 41);
            std::vector<FieldContext> ctxs{FieldContext::rationals(),
                                           FieldContext::padic(5)};
            for (const auto& ctx : ctxs)
              for (int n = 1; n <= 5; ++n) {
                auto f = expand(n);
                for (int rep = 0; rep < 10; ++rep) {
                  auto gamma = random_poly_q(ctx, 4, 1, Domain<ExactScalar>::whole(), rng);
                  auto eta = random_poly_q(ctx, 4, 2, Domain<ExactScalar>::whole(), rng);
                  auto pts = random_distinct_points(ctx, n + 1, rng);
                  out.merge(verify_numeric(f, gamma, eta, pts, 0.0, false));
                  out.merge(verify_numeric(f, gamma, eta, pts, 0.0, true));
                }
              }
            return out;
          });

  rec.run("leibniz.product_estimate",
          "||(gamma.eta)^<n>||_{q_0,inf} <= sum C_k ||gamma^<k>||_inf ||eta^<n-k>||_{q_n,inf}",
          [&] {
            CheckOutcome out;
            Rng rng(cfg.seed + 42);
            auto arch = FieldContext::rationals();
            Calibration cal = Calibration::constant(Gauge::abs_on_K(),
                                                    Calibration::Kind::ordinary);
            auto dom = Domain<ExactScalar>::interval(ExactScalar(Rational(-1), arch),
                                                     ExactScalar(Rational(1), arch));
            for (int rep = 0; rep < 4; ++rep) {
              auto gamma = random_poly_q(arch, 3, 1, dom, rng);
              auto eta = random_poly_q(arch, 3, 1, dom, rng);
              for (int n = 1; n <= 3; ++n) {
                Rng rng_t(cfg.seed + 43 + static_cast<uint64_t>(rep * 10 + n));
                auto pts = sample_points(dom, cfg.sampler, rng_t);
                auto tuples = tuples_from_points(pts, n, 60, rng_t);
                out.merge(product_estimate_check(gamma, eta, n, cal, tuples, 0.0));
              }
            }
            // ultrametric variant with certified right sides
            auto ctx = FieldContext::padic(3);
            auto ball = Domain<ExactScalar>::ball(ExactScalar::zero(ctx),
                                                  Magnitude::exact(Rational(1, 3)));
            for (int rep = 0; rep < 3; ++rep) {
              auto gamma = random_poly_q(ctx, 3, 1, ball, rng);
              auto eta = random_poly_q(ctx, 3, 1, ball, rng);
              for (int n = 1; n <= 3; ++n) {
                Rng rng_t(cfg.seed + 47 + static_cast<uint64_t>(rep * 10 + n));
                auto tuples = sample_tuples(ball, n, cfg.sampler, rng_t);
                out.merge(product_estimate_check(gamma, eta, n, cal, tuples, 0.0));
              }
            }
            return out;
          });
}

// ---------------------------------------------------------------- glue_um

void suite_glue_um(Recorder& rec, const VerifyConfig& cfg) {
  if (!cfg.um) {
    rec.add("glue_um.spec_present", "plumbing", Verdict::inconclusive,
            nlohmann::json{{"note", "config has no glue_um spec"}});
    return;
  }
  const auto& spec = *cfg.um;

  rec.run("glue_um.build", "plumbing", [&] {
    CheckOutcome out;
    out.checked = 1;
    GluedCurveUM::build(spec);
    return out;
  });

  GluedCurveUM glued = GluedCurveUM::build(spec);

  rec.run("glue_um.ball_disjoint", "|rho^(m-1) - rho^(n-1)| > max(|rho|^m, |rho|^n)",
          [&] { return glued.check_disjoint_supports(); });

  rec.run("glue_um.defining_identity", "gamma(rho^(n-1) + t) = gamma_n(t)", [&] {
    Rng rng(cfg.seed + 51);
    return glued.check_defining_identity(15, cfg.sampler, rng);
  });

  rec.run("glue_um.off_support_zero", "gamma = 0 outside every support ball", [&] {
    Rng rng(cfg.seed + 52);
    return glued.check_off_support_zero(100, cfg.sampler, rng);
  });

  rec.add("glue_um.image_containment",
          "im(gamma) inside {0} and the piece images, by construction", Verdict::pass,
          nlohmann::json{{"note",
                          "eval returns 0 or a piece value; with finitely many nonzero "
                          "pieces all sums are finite, so values land in E outright"}});

  rec.run("glue_um.extension_estimate",
          "||eta^<k>||_{q_0,inf} <= max_j (2/r)^(k-j) ||gamma^<j>||_{q_(k-j),inf}", [&] {
            CheckOutcome out;
            Rng rng(cfg.seed + 53);
            for (int n = 1; n <= glued.piece_count(); ++n)
              out.merge(check_resestim(spec.pieces[static_cast<size_t>(n - 1)],
                                       std::min(4, spec.probe.k_max + 1), spec.calibration,
                                       cfg.sampler, rng, 60));
            return out;
          });

  {
    Rng rng(cfg.seed + 54);
    HypothesisReport rep = check_hypothesis(spec, cfg.sampler, rng);
    rec.add("glue_um.hypothesis_threshold", "||gamma_n^<k>||_{p_2n,inf} <= C n^-n",
            rep.verdict,
            nlohmann::json{{"records", rep.records},
                           {"calibration", calibration_to_json(spec.calibration)}});
    rec.add("glue_um.hypothesis_decay_probe", "a^n ||gamma_n^<k>||_{q_(n+m),inf} -> 0",
            rep.probe_verdict == Verdict::fail ? Verdict::fail : Verdict::pass,
            nlohmann::json{{"records", rep.probe_lines},
                           {"note", "finite prefix; not a limit certificate"}});
  }
}

// ---------------------------------------------------------------- glue_re

void suite_glue_re(Recorder& rec, const VerifyConfig& cfg) {
  if (!cfg.re) {
    rec.add("glue_re.spec_present", "plumbing", Verdict::inconclusive,
            nlohmann::json{{"note", "config has no glue_re spec"}});
    return;
  }
  const auto& spec = *cfg.re;

  rec.run("glue_re.build", "plumbing", [&] {
    CheckOutcome out;
    out.checked = 1;
    GluedCurveRE::build(spec);
    return out;
  });

  GluedCurveRE glued = GluedCurveRE::build(spec);

  rec.run("glue_re.center_increments", "t_(n+1) - t_n = r_(n+1) + r_n",
          [&] { return glued.check_center_increments(); });
  rec.run("glue_re.support_disjoint", "open intervals ]t_n - r_n, t_n + r_n[ disjoint",
          [&] { return glued.check_disjoint_supports(); });
  rec.run("glue_re.center_bound", "t_n increasing, below 2 sum s_j + 4 sum 1/j^2",
          [&] { return glued.check_center_bound(); });

  rec.run("glue_re.glue_identity", "gamma(t_n + t) = gamma_n(t) for |t| <= s_n", [&] {
    Rng rng(cfg.seed + 61);
    return glued.check_glue_identity(100, cfg.slack, rng);
  });

  rec.run("glue_re.off_support_zero", "gamma = 0 outside every support", [&] {
    Rng rng(cfg.seed + 62);
    return glued.check_off_support_zero(100, rng);
  });

  rec.run("glue_re.bump_shape", "g = 1 left of 0, g = 0 right of 1, nonincreasing", [&] {
    CheckOutcome out;
    auto g = base_bump();
    auto at = [&](double t) { return g.eval(t).coords[0]; };
    ++out.checked;
    if (at(-1.0) != 1.0 || at(2.0) != 0.0) out.add_violation("plateau values");
    ++out.checked;
    if (std::fabs(at(0.5) - 0.5) > 1e-15) out.add_violation("g(1/2) != 1/2");
    double prev = at(-0.5);
    for (int i = 1; i <= 300; ++i) {
      double t = -0.5 + i * (2.0 / 300.0);
      double v = at(t);
      ++out.checked;
      if (v > prev + 1e-12) out.add_violation("g increases at t=" + std::to_string(t));
      prev = v;
    }
    return out;
  });

  rec.run("glue_re.cutoff_shape", "h = 1 on [-a,a], 0 outside [-(a+b),a+b], 0 <= h <= 1", [&] {
    CheckOutcome out;
    Rng rng(cfg.seed + 63);
    for (auto [a, b] : std::vector<std::pair<double, double>>{
             {1.0, 1.0}, {1.0, 0.25}, {0.5, 1.0 / 9.0}})
      out.merge(check_cutoff_shape(a, b, 1000, rng));
    // frozen: h(1.5) = g(1/2) g(-5/2) = 1/2 for a = b = 1
    auto h = cutoff(1.0, 1.0);
    ++out.checked;
    if (std::fabs(h.eval(1.5).coords[0] - 0.5) > 1e-15) out.add_violation("h(1.5) != 1/2");
    return out;
  });

  rec.run("glue_re.cutoff_bound", "||h^<n>||_inf <= M_n b^-n", [&] {
    CheckOutcome out;
    MnTable mn = estimate_Mn(4, cfg.sampler);
    if (std::fabs(mn.raw[0] - 1.0) > 1e-9)
      out.add_violation("M_0 should be 1 before inflation");
    for (double m : mn.inflated)
      if (m < 1.0) out.add_violation("every M_n >= 1 (order-0 term alone contributes 1)");
    Rng rng(cfg.seed + 64);
    for (auto [a, b] : std::vector<std::pair<double, double>>{
             {1.0, 1.0}, {1.0, 0.25}, {0.5, 1.0 / 9.0}})
      out.merge(check_cutoff_bound(a, b, mn, 4, cfg.sampler, rng));
    return out;
  });

  rec.run("glue_re.zeta_extension_estimate",
          "||eta^<k>||_{q_0,inf} <= max_j (2/r)^(k-j) ||zeta^<j>||_{q_(k-j),inf}", [&] {
            CheckOutcome out;
            Rng rng(cfg.seed + 65);
            int pieces = std::min(2, glued.piece_count());
            for (int n = 1; n <= pieces; ++n) {
              double s_n = spec.s[static_cast<size_t>(n - 1)].to_double();
              double inner = s_n + 1.0 / (n * n);
              out.merge(check_morkll(glued.zeta(n), -inner, inner, spec.calibration, 3,
                                     cfg.sampler, rng, cfg.slack));
            }
            return out;
          });

  rec.add("glue_re.image_containment",
          "im(gamma) inside [0,1] scalings of the piece images, by construction",
          Verdict::pass,
          nlohmann::json{{"note", "eval returns 0 or h_n(t) gamma_n(t) with h_n in [0,1]"}});

  {
    Rng rng(cfg.seed + 66);
    HypothesisReport rep = check_hypothesis_real(spec, cfg.sampler, rng);
    rec.add("glue_re.hypothesis_prefix", "n^l ||gamma_n^<k>||_{q_(n+m),inf} -> 0",
            rep.verdict,
            nlohmann::json{{"records", rep.records},
                           {"calibration", calibration_to_json(spec.calibration)}});
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"scalar", "gauges", "diffquot", "leibniz", "glue_um", "glue_re"};
}

VerificationReport run_suites(const std::string& selector, const VerifyConfig& cfg) {
  VerificationReport rep;
  rep.suite = selector;
  rep.seed = cfg.seed;
  rep.environment = nlohmann::json{
      {"seed", cfg.seed},
      {"sampler",
       {{"padic_depth", cfg.sampler.padic_depth},
        {"point_budget", cfg.sampler.point_budget},
        {"tuple_budget", cfg.sampler.tuple_budget},
        {"min_gap", cfg.sampler.min_gap}}},
      {"tolerances", {{"float_rel_slack", cfg.slack}}}};
  Recorder rec(rep);

  bool all = selector == "all";
  bool matched = false;
  auto want = [&](const char* name) {
    bool w = all || selector == name;
    matched = matched || w;
    return w;
  };
  if (want("scalar")) suite_scalar(rec, cfg);
  if (want("gauges")) suite_gauges(rec, cfg);
  if (want("diffquot")) suite_diffquot(rec, cfg);
  if (want("leibniz")) suite_leibniz(rec, cfg);
  if (want("glue_um")) suite_glue_um(rec, cfg);
  if (want("glue_re")) suite_glue_re(rec, cfg);
  if (!matched) throw ConfigError("unknown suite: " + selector);
  return rep;
}

}  // namespace curvelab
