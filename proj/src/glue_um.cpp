#include "curvelab/glue_um.hpp"

#include <algorithm>

namespace curvelab {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

GluedCurveUM GluedCurveUM::build(UltrametricGlueSpec spec) {
  if (!spec.context.is_padic())
    throw std::invalid_argument("GluedCurveUM: context must be p-adic");
  if (spec.rho.context() != spec.context)
    throw std::invalid_argument("GluedCurveUM: rho context mismatch");
  Magnitude arho = abs_value(spec.rho);
  if (spec.rho.is_zero() || !(arho < Magnitude::exact(Rational(1))))
    throw std::invalid_argument("GluedCurveUM: need 0 < |rho| < 1");

  GluedCurveUM g;
  g.dim_ = spec.pieces.empty() ? 1 : spec.pieces.front().dim();

  ExactScalar center = ExactScalar::one(spec.context);  // rho^{n-1}, n = 1
  Magnitude radius = arho;                               // |rho|^n, n = 1
  for (size_t idx = 0; idx < spec.pieces.size(); ++idx) {
    const auto& piece = spec.pieces[idx];
    if (piece.dim() != g.dim_)
      throw std::invalid_argument("GluedCurveUM: piece dimension mismatch");
    const auto& dom = piece.domain();
    if (dom.kind != Domain<ExactScalar>::Kind::ball || !dom.center_or_lo.is_zero() ||
        !dom.radius.is_exact() || !(dom.radius == radius))
      throw std::invalid_argument("GluedCurveUM: piece " + std::to_string(idx + 1) +
                                  " domain radius mismatch");
    g.centers_.push_back(center);
    g.radii_.push_back(radius);
    g.etas_.push_back(piece.translated(-center).extended_by_zero());
    center = center * spec.rho;
    radius = radius * arho;
  }
  g.spec_ = std::move(spec);
  return g;
}

std::optional<int> GluedCurveUM::locate(const ExactScalar& x) const {
  if (x.is_zero() || spec_.pieces.empty()) return std::nullopt;
  // every point of ball n has |x| = |rho|^{n-1}; valuations shortlist n
  long e = spec_.rho.value().valuation(spec_.context.prime);
  long w = x.value().valuation(spec_.context.prime);
  if (w < 0 || w % e != 0) return std::nullopt;
  long n = w / e + 1;
  if (n < 1 || n > piece_count()) return std::nullopt;
  if (!in_closed_ball(x, center(static_cast<int>(n)), radius(static_cast<int>(n))))
    return std::nullopt;
  return static_cast<int>(n);
}

VectorT<ExactScalar> GluedCurveUM::eval(const ExactScalar& x) const {
  auto n = locate(x);
  if (!n) return VectorT<ExactScalar>::zero(dim_, ExactScalar::zero(spec_.context));
  return spec_.pieces[static_cast<size_t>(*n - 1)].eval(x - center(*n));
}

Curve<ExactScalar> GluedCurveUM::as_curve() const {
  GluedCurveUM copy = *this;
  return Curve<ExactScalar>::from_callback(
      Domain<ExactScalar>::whole(), dim_, ExactScalar::zero(spec_.context),
      [copy](const ExactScalar& x) { return copy.eval(x); }, "glued_um");
}

CheckOutcome GluedCurveUM::check_disjoint_supports() const {
  CheckOutcome out;
  for (int m = 1; m <= piece_count(); ++m)
    for (int n = m + 1; n <= piece_count(); ++n) {
      ++out.checked;
      Magnitude dist = abs_value(center(m) - center(n));
      Magnitude rmax = Magnitude::max(radius(m), radius(n));
      if (!(rmax < dist))
        out.add_violation("balls " + std::to_string(m) + ", " + std::to_string(n) +
                          " not separated: |c_m - c_n| = " + dist.to_string() +
                          " <= " + rmax.to_string());
    }
  return out;
}

CheckOutcome GluedCurveUM::check_defining_identity(int samples_per_piece,
                                                   const SamplerConfig& cfg, Rng& rng) const {
  CheckOutcome out;
  for (int n = 1; n <= piece_count(); ++n) {
    const auto& piece = spec_.pieces[static_cast<size_t>(n - 1)];
    auto pts = sample_points(piece.domain(), cfg, rng);
    int used = 0;
    for (const auto& t : pts) {
      if (used++ >= samples_per_piece) break;
      ++out.checked;
      VectorT<ExactScalar> lhs = eval(center(n) + t);
      VectorT<ExactScalar> rhs = piece.eval(t);
      if (!(lhs == rhs))
        out.add_violation("piece " + std::to_string(n) + " at t=" + t.to_string() +
                          ": " + lhs.to_string() + " != " + rhs.to_string());
    }
  }
  return out;
}

CheckOutcome GluedCurveUM::check_off_support_zero(int count, const SamplerConfig& cfg,
                                                  Rng& rng) const {
  CheckOutcome out;
  FieldContext ctx = spec_.context;
  int found = 0;
  int attempts = 0;
  while (found < count && attempts < count * 80) {
    ++attempts;
    ExactScalar x(rng.rational(cfg.rat_num_bound, cfg.rat_den_bound), ctx);
    if (attempts % 3 == 0 && !spec_.pieces.empty()) {
      // points at a support's magnitude but off the ball
      int n = static_cast<int>(rng.uniform_int(1, piece_count()));
      ExactScalar unit(Rational(rng.uniform_int(1, static_cast<long>(ctx.prime) - 1) +
                                static_cast<long>(ctx.prime)),
                       ctx);
      x = center(n) * unit;
    }
    if (locate(x)) continue;
    ++found;
    ++out.checked;
    if (!eval(x).is_zero())
      out.add_violation("gamma(" + x.to_string() + ") != 0 off support");
  }
  if (found < count) out.add_violation("could not find enough off-support sample points");
  return out;
}

Curve<ExactScalar> extend_by_zero(const Curve<ExactScalar>& c) {
  const auto& dom = c.domain();
  if (dom.kind != Domain<ExactScalar>::Kind::ball || !dom.center_or_lo.is_zero())
    throw std::invalid_argument("extend_by_zero: domain must be a closed ball about 0");
  return c.extended_by_zero();
}

CheckOutcome check_resestim(const Curve<ExactScalar>& c, int k_max, const Calibration& cal,
                            const SamplerConfig& cfg, Rng& rng, int tuples_per_order,
                            bool strong_variant) {
  const auto& dom = c.domain();
  if (dom.kind != Domain<ExactScalar>::Kind::ball || !dom.center_or_lo.is_zero())
    throw std::invalid_argument("check_resestim: domain must be a closed ball about 0");
  if (!c.as_polynomial())
    throw std::invalid_argument("check_resestim: piece must be polynomial-backed");
  if (strong_variant && cal.kind() != Calibration::Kind::strong)
    throw std::invalid_argument("check_resestim: strong variant needs a strong calibration");

  CheckOutcome out;
  Curve<ExactScalar> eta = c.extended_by_zero();
  Rational r = dom.radius.exact_value();
  Rational two_over_r = (strong_variant ? Rational(1) : Rational(2)) / r;

  // mixed pool: ball grid plus points of strictly larger absolute value
  auto pool = padic_ball_grid(dom, cfg.padic_depth, cfg.point_budget);
  auto outside = padic_outside_points(dom, 3, rng);
  pool.insert(pool.end(), outside.begin(), outside.end());

  for (int k = 0; k <= k_max; ++k) {
    auto tuples = tuples_from_points(pool, k, tuples_per_order, rng);
    auto lhs = sup_gauge(eta, k, cal.at(0), tuples);

    Magnitude rhs = Magnitude::zero();
    bool certified = true;
    for (int j = 0; j <= k; ++j) {
      auto bound = certified_sup_bound(c, j, cal.at(k - j));
      if (!bound) {
        certified = false;
        break;
      }
      rhs = Magnitude::max(rhs, Magnitude::exact(two_over_r.pow(k - j)) * *bound);
    }
    out.checked += lhs.sample_count;
    if (!certified) {
      ++out.skipped;
      continue;
    }
    if (!(lhs.lower <= rhs))
      out.add_violation("k=" + std::to_string(k) + ": sampled ||eta^<k>|| = " +
                        lhs.lower.to_string() + " exceeds bound " + rhs.to_string());
  }
  return out;
}

HypothesisReport check_hypothesis(const UltrametricGlueSpec& spec, const SamplerConfig& cfg,
                                  Rng& rng) {
  HypothesisReport rep;
  bool any_reject = false;
  bool any_open = false;

  GluedCurveUM glued = GluedCurveUM::build(spec);  // validates and yields radii

  for (int n = 1; n <= glued.piece_count(); ++n) {
    const auto& piece = spec.pieces[static_cast<size_t>(n - 1)];
    Rational threshold = spec.probe.C * Rational(n).pow(-static_cast<long>(n));
    for (int k = 0; k <= std::min(spec.probe.k_max, n); ++k) {
      Gauge p2n = spec.calibration.at(2 * n);
      auto upper = certified_sup_bound(piece, k, p2n);
      std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
      if (upper && upper->is_exact() && upper->exact_value() <= threshold) {
        rep.records.push_back(tag + ": certified " + upper->to_string() +
                              " <= C n^-n = " + threshold.to_string());
        continue;
      }
      auto tuples = sample_tuples(piece.domain(), k, cfg, rng);
      auto est = sup_gauge(piece, k, p2n, tuples);
      if (est.lower.is_exact() && est.lower.exact_value() > threshold) {
        any_reject = true;
        rep.records.push_back(tag + ": sampled lower " + est.lower.to_string() +
                              " > C n^-n = " + threshold.to_string() + " (reject)");
      } else {
        any_open = true;
        rep.records.push_back(tag + ": bracket straddles C n^-n (inconclusive)");
      }
    }
  }
  rep.verdict = any_reject ? Verdict::fail : (any_open ? Verdict::inconclusive : Verdict::pass);

  // finite-prefix decay of the geometric-weight condition
  bool probe_fail = false;
  bool probe_open = false;
  for (const Rational& a : spec.probe.a_values) {
    for (int k = 0; k <= spec.probe.k_max; ++k) {
      for (int m = 0; m <= spec.probe.m_max; ++m) {
        std::vector<double> v;
        for (int n = 1; n <= glued.piece_count(); ++n) {
          const auto& piece = spec.pieces[static_cast<size_t>(n - 1)];
          Gauge q = spec.calibration.at(n + m);
          auto upper = certified_sup_bound(piece, k, q);
          Magnitude size = upper ? *upper : Magnitude::zero();
          if (!upper) {
            auto tuples = sample_tuples(piece.domain(), k, cfg, rng);
            size = sup_gauge(piece, k, q, tuples).lower;
          }
          v.push_back(std::pow(a.to_double(), n) * size.as_double());
        }
        if (v.size() < 3) {
          probe_open = true;
          continue;
        }
        bool tail_dec = true;
        for (size_t i = v.size() / 2; i + 1 < v.size(); ++i)
          if (v[i + 1] > v[i]) tail_dec = false;
        bool below = v.back() <= spec.probe.C.to_double();
        std::string line = "a=" + a.to_string() + " k=" + std::to_string(k) +
                           " m=" + std::to_string(m) + ": last=" + std::to_string(v.back());
        if (tail_dec && below) {
          rep.probe_lines.push_back(line + " (decaying over prefix)");
        } else if (!tail_dec && v.back() > std::max(v.front(), spec.probe.C.to_double())) {
          probe_fail = true;
          rep.probe_lines.push_back(line + " (growing; prefix contradicts decay)");
        } else {
          probe_open = true;
          rep.probe_lines.push_back(line + " (prefix inconclusive)");
        }
      }
    }
  }
  rep.probe_verdict =
      probe_fail ? Verdict::fail : (probe_open ? Verdict::inconclusive : Verdict::pass);
  return rep;
}

}  // namespace curvelab
