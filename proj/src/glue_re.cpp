#include "curvelab/glue_re.hpp"

#include <algorithm>

#include "curvelab/leibniz.hpp"

namespace curvelab {

RealGlueSpec normalize_spec(RealGlueSpec spec) {
  size_t n = spec.pieces.size();
  if (spec.s.size() < n)
    throw std::invalid_argument("RealGlueSpec: fewer s_n entries than pieces");
  if (!spec.r.empty() && spec.r.size() < n)
    throw std::invalid_argument("RealGlueSpec: fewer r_n entries than pieces");

  std::vector<Rational> normalized;
  bool shrunk = false;
  for (size_t i = 0; i < n; ++i) {
    if (!(spec.s[i] > Rational(0)))
      throw std::invalid_argument("RealGlueSpec: s_n must be positive");
    long idx = static_cast<long>(i) + 1;
    Rational target = spec.s[i] + Rational(2) / Rational(idx * idx);
    if (!spec.r.empty()) {
      if (spec.r[i] < target)
        throw std::invalid_argument("RealGlueSpec: r_n >= s_n + 2/n^2 violated at n=" +
                                    std::to_string(idx));
      if (spec.r[i] > target) shrunk = true;
    }
    normalized.push_back(target);
  }

  for (size_t i = 0; i < n; ++i) {
    double r = normalized[i].to_double();
    auto dom = Domain<double>::interval(-r, r);
    const auto& pd = spec.pieces[i].domain();
    if (pd.kind == Domain<double>::Kind::whole) {
      spec.pieces[i] = spec.pieces[i].restricted(dom);
    } else if (pd.kind == Domain<double>::Kind::interval) {
      if (pd.center_or_lo > -r || pd.hi < r)
        throw std::invalid_argument("RealGlueSpec: piece domain smaller than [-r_n, r_n]");
      if (pd.center_or_lo < -r || pd.hi > r) spec.pieces[i] = spec.pieces[i].restricted(dom);
    } else {
      throw std::invalid_argument("RealGlueSpec: piece domain must be a real interval");
    }
  }

  spec.r = std::move(normalized);
  spec.r_normalized = shrunk;
  return spec;
}

Curve<double> base_bump() {
  return Curve<double>::from_callback(
      Domain<double>::whole(), 1, 0.0,
      [](const double& t) { return VectorT<double>{{smooth_step(t)}}; }, "bump_g");
}

Curve<double> cutoff(double a, double b) { return Curve<double>::cutoff(a, b); }

MnTable estimate_Mn(int n_max, const SamplerConfig& cfg, double safety) {
  MnTable table;
  table.safety = safety;
  Curve<double> g = base_bump();
  // g is constant outside [0,1]; the window still probes both plateaus
  auto dom = Domain<double>::interval(-0.75, 1.75);
  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);

  for (int k = 0; k <= n_max; ++k) {
    auto tuples = sample_tuples(dom, k, cfg, rng);
    auto est = sup_gauge(g, k, Gauge::abs_on_K(), tuples);
    table.g_sups.push_back(est.lower.as_double());
  }

  for (int n = 0; n <= n_max; ++n) {
    std::vector<long> C(static_cast<size_t>(n) + 1, 1);
    if (n >= 1) C = constants(expand(n)).C;
    double raw = 0.0;
    double inflated = 0.0;
    for (int k = 0; k <= n; ++k) {
      double ck = static_cast<double>(C[static_cast<size_t>(k)]);
      raw += ck * table.g_sups[static_cast<size_t>(k)] * table.g_sups[static_cast<size_t>(n - k)];
      inflated += ck * (safety * table.g_sups[static_cast<size_t>(k)]) *
                  (safety * table.g_sups[static_cast<size_t>(n - k)]);
    }
    table.raw.push_back(raw);
    table.inflated.push_back(inflated);
  }
  return table;
}

CheckOutcome check_cutoff_bound(double a, double b, const MnTable& mn, int n_max,
                                const SamplerConfig& cfg, Rng& rng) {
  CheckOutcome out;
  Curve<double> h = cutoff(a, b);
  auto dom = Domain<double>::interval(-(a + b) - 0.5, a + b + 0.5);
  for (int n = 0; n <= n_max; ++n) {
    auto tuples = sample_tuples(dom, n, cfg, rng);
    auto est = sup_gauge(h, n, Gauge::abs_on_K(), tuples);
    out.checked += est.sample_count;
    double bound = mn.inflated[static_cast<size_t>(n)] * std::pow(b, -n);
    if (est.lower.as_double() > bound)
      out.add_violation("n=" + std::to_string(n) + ": sampled ||h^<n>|| = " +
                        std::to_string(est.lower.as_double()) + " > M_n b^-n = " +
                        std::to_string(bound));
  }
  return out;
}

CheckOutcome check_cutoff_shape(double a, double b, int samples, Rng& rng) {
  CheckOutcome out;
  Curve<double> h = cutoff(a, b);
  double outer = a + b;
  for (int i = 0; i < samples; ++i) {
    double t = rng.uniform(-outer - 1.0, outer + 1.0);
    double v = h.eval(t).coords[0];
    ++out.checked;
    if (v < 0.0 || v > 1.0)
      out.add_violation("h(" + std::to_string(t) + ") = " + std::to_string(v) +
                        " outside [0,1]");
    if (std::fabs(t) <= a && v != 1.0)
      out.add_violation("plateau: h(" + std::to_string(t) + ") = " + std::to_string(v));
    if (std::fabs(t) >= outer && v != 0.0)
      out.add_violation("support: h(" + std::to_string(t) + ") = " + std::to_string(v));
    // evenness of the defining product
    double w = h.eval(-t).coords[0];
    if (std::fabs(v - w) > 1e-15)
      out.add_violation("h not even at t=" + std::to_string(t));
  }
  return out;
}

std::vector<Rational> centers(const RealGlueSpec& spec) {
  std::vector<Rational> t;
  Rational acc(0);
  Rational prev(0);  // r_0 = 0
  for (size_t i = 0; i < spec.r.size(); ++i) {
    acc = acc + spec.r[i] + prev;
    prev = spec.r[i];
    t.push_back(acc);
  }
  return t;
}

GluedCurveRE GluedCurveRE::build(RealGlueSpec raw) {
  RealGlueSpec spec = normalize_spec(std::move(raw));
  GluedCurveRE g;
  g.dim_ = spec.pieces.empty() ? 1 : spec.pieces.front().dim();
  g.t_ = centers(spec);

  for (size_t i = 0; i < spec.pieces.size(); ++i) {
    long n = static_cast<long>(i) + 1;
    double s_n = spec.s[i].to_double();
    double bump_width = 1.0 / static_cast<double>(n * n);
    Curve<double> h = cutoff(s_n, bump_width);
    double r_n = spec.r[i].to_double();
    auto dom = Domain<double>::interval(-r_n, r_n);
    Curve<double> zeta = Curve<double>::product(h.restricted(dom), spec.pieces[i]);
    g.zetas_.push_back(zeta);
    g.etas_.push_back(zeta.translated(-g.t_[i].to_double()).extended_by_zero());
  }
  // impossible for specs built from the center recursion, but load paths
  // should never hand out a curve with overlapping supports
  for (size_t n = 0; n + 1 < g.t_.size(); ++n)
    if (g.t_[n] + spec.r[n] > g.t_[n + 1] - spec.r[n + 1])
      throw std::logic_error("GluedCurveRE: overlapping supports");
  g.spec_ = std::move(spec);
  return g;
}

std::optional<int> GluedCurveRE::locate(double x) const {
  for (int n = 1; n <= piece_count(); ++n) {
    double tn = t_[static_cast<size_t>(n - 1)].to_double();
    double rn = spec_.r[static_cast<size_t>(n - 1)].to_double();
    if (x > tn - rn && x < tn + rn) return n;
  }
  return std::nullopt;
}

VectorT<double> GluedCurveRE::eval(double x) const {
  auto n = locate(x);
  if (!n) return VectorT<double>::zero(dim_, 0.0);
  return zetas_[static_cast<size_t>(*n - 1)].eval(x - t_[static_cast<size_t>(*n - 1)].to_double());
}

Curve<double> GluedCurveRE::as_curve() const {
  GluedCurveRE copy = *this;
  return Curve<double>::from_callback(
      Domain<double>::whole(), dim_, 0.0,
      [copy](const double& x) { return copy.eval(x); }, "glued_re");
}

CheckOutcome GluedCurveRE::check_center_increments() const {
  CheckOutcome out;
  for (size_t n = 0; n + 1 < t_.size(); ++n) {
    ++out.checked;
    if (t_[n + 1] - t_[n] != spec_.r[n + 1] + spec_.r[n])
      out.add_violation("t_{n+1} - t_n != r_{n+1} + r_n at n=" + std::to_string(n + 1));
  }
  return out;
}

CheckOutcome GluedCurveRE::check_disjoint_supports() const {
  CheckOutcome out;
  for (size_t m = 0; m < t_.size(); ++m)
    for (size_t n = m + 1; n < t_.size(); ++n) {
      ++out.checked;
      // open intervals ]t-r, t+r[ disjoint iff right end of the earlier
      // does not pass the left end of the later (exact rationals)
      if (t_[m] + spec_.r[m] > t_[n] - spec_.r[n])
        out.add_violation("supports " + std::to_string(m + 1) + ", " + std::to_string(n + 1) +
                          " overlap");
    }
  return out;
}

CheckOutcome GluedCurveRE::check_center_bound() const {
  CheckOutcome out;
  Rational bound(0);
  for (size_t j = 0; j < spec_.s.size(); ++j) {
    long n = static_cast<long>(j) + 1;
    bound = bound + Rational(2) * spec_.s[j] + Rational(4) / Rational(n * n);
  }
  Rational prev(-1);
  for (const auto& tn : t_) {
    ++out.checked;
    if (!(tn > prev)) out.add_violation("centers not increasing");
    if (tn > bound)
      out.add_violation("t_n = " + tn.to_string() + " exceeds bound " + bound.to_string());
    prev = tn;
  }
  return out;
}

CheckOutcome GluedCurveRE::check_glue_identity(int samples, double rel_slack, Rng& rng) const {
  CheckOutcome out;
  if (piece_count() == 0) return out;
  for (int i = 0; i < samples; ++i) {
    int n = static_cast<int>(rng.uniform_int(1, piece_count()));
    double s_n = spec_.s[static_cast<size_t>(n - 1)].to_double();
    double t = rng.uniform(-s_n, s_n);
    double x = t_[static_cast<size_t>(n - 1)].to_double() + t;
    VectorT<double> lhs = eval(x);
    VectorT<double> rhs = spec_.pieces[static_cast<size_t>(n - 1)].eval(t);
    ++out.checked;
    for (int c = 0; c < dim_; ++c) {
      double a = lhs.coords[static_cast<size_t>(c)];
      double b = rhs.coords[static_cast<size_t>(c)];
      if (std::fabs(a - b) > rel_slack * std::max({std::fabs(a), std::fabs(b), 1.0})) {
        out.add_violation("piece " + std::to_string(n) + " at t=" + std::to_string(t) +
                          ": " + std::to_string(a) + " != " + std::to_string(b));
        break;
      }
    }
  }
  return out;
}

CheckOutcome GluedCurveRE::check_off_support_zero(int samples, Rng& rng) const {
  CheckOutcome out;
  double t_inf = t_.empty() ? 0.0 : t_.back().to_double() + 1.0;
  int found = 0;
  int attempts = 0;
  while (found < samples && attempts < samples * 50) {
    ++attempts;
    double x = attempts % 4 == 0 ? rng.uniform(t_inf, t_inf + 10.0)
                                 : rng.uniform(-5.0, t_inf + 5.0);
    if (locate(x)) continue;
    ++found;
    ++out.checked;
    if (!eval(x).is_zero())
      out.add_violation("gamma(" + std::to_string(x) + ") != 0 off support");
  }
  return out;
}

CheckOutcome check_morkll(const Curve<double>& zeta, double alpha, double beta,
                          const Calibration& cal, int k_max, const SamplerConfig& cfg,
                          Rng& rng, double rel_slack, bool strong_variant) {
  const auto& dom = zeta.domain();
  if (dom.kind != Domain<double>::Kind::interval)
    throw std::invalid_argument("check_morkll: piece domain must be an interval");
  if (strong_variant && cal.kind() != Calibration::Kind::strong)
    throw std::invalid_argument("check_morkll: strong variant needs a strong calibration");
  double a = dom.center_or_lo;
  double b = dom.hi;
  if (!(a < alpha && alpha < beta && beta < b))
    throw std::invalid_argument("check_morkll: need a < alpha < beta < b");
  double r = std::min(alpha - a, b - beta);
  double step = (strong_variant ? 1.0 : 2.0) / r;

  CheckOutcome out;
  Curve<double> eta = zeta.extended_by_zero();

  // mixed pool over a window strictly larger than [a, b]
  double pad = 0.5 * (b - a) + 0.5;
  auto window = Domain<double>::interval(a - pad, b + pad);
  auto pool = sample_points(window, cfg, rng);

  for (int k = 0; k <= k_max; ++k) {
    auto lhs_tuples = tuples_from_points(pool, k, cfg.tuple_budget, rng, cfg.min_gap);

    // sub-tuples of left tuples that stay inside [a, b], per order
    std::vector<std::vector<std::vector<double>>> rhs_tuples(static_cast<size_t>(k) + 1);
    for (const auto& t : lhs_tuples) {
      for (long mask = 1; mask < (1L << t.size()); ++mask) {
        std::vector<double> sub;
        bool inside = true;
        for (size_t bit = 0; bit < t.size(); ++bit)
          if (mask & (1L << bit)) {
            if (t[bit] < a || t[bit] > b) {
              inside = false;
              break;
            }
            sub.push_back(t[bit]);
          }
        if (inside && !sub.empty()) rhs_tuples[sub.size() - 1].push_back(std::move(sub));
      }
    }
    // direct in-domain tuples for density
    auto inner_pool = sample_points(dom, cfg, rng);
    for (int j = 0; j <= k; ++j) {
      auto extra = tuples_from_points(inner_pool, j, cfg.tuple_budget / 2, rng, cfg.min_gap);
      auto& dst = rhs_tuples[static_cast<size_t>(j)];
      dst.insert(dst.end(), extra.begin(), extra.end());
    }

    auto lhs = sup_gauge(eta, k, cal.at(0), lhs_tuples);
    Magnitude rhs = Magnitude::zero();
    for (int j = 0; j <= k; ++j) {
      auto est = sup_gauge(zeta, j, cal.at(k - j), rhs_tuples[static_cast<size_t>(j)]);
      Magnitude scaled = Magnitude::approx(std::pow(step, k - j)) * est.lower;
      rhs = Magnitude::max(rhs, scaled);
    }
    out.checked += lhs.sample_count;
    if (!lhs.lower.leq_with_slack(rhs, rel_slack))
      out.add_violation("k=" + std::to_string(k) + ": sampled ||eta^<k>|| = " +
                        std::to_string(lhs.lower.as_double()) + " > bound " +
                        std::to_string(rhs.as_double()));
  }
  return out;
}

std::vector<PieceTableRow> piece_table(const GluedCurveRE& glued, int k_max,
                                       const SamplerConfig& cfg, Rng& rng) {
  const auto& spec = glued.spec();
  MnTable mn = estimate_Mn(k_max, cfg);
  std::vector<long> C(static_cast<size_t>(k_max) + 1, 1);
  if (k_max >= 1) C = constants(expand(k_max)).C;

  std::vector<PieceTableRow> rows;
  for (int n = 1; n <= glued.piece_count(); ++n) {
    PieceTableRow row;
    row.n = n;
    row.t_n = glued.t()[static_cast<size_t>(n - 1)];
    row.s_n = spec.s[static_cast<size_t>(n - 1)];
    row.r_n = spec.r[static_cast<size_t>(n - 1)];
    const auto& piece = spec.pieces[static_cast<size_t>(n - 1)];
    Gauge q = spec.calibration.base();
    for (int k = 0; k <= k_max; ++k) {
      auto tuples = sample_tuples(piece.domain(), k, cfg, rng);
      row.gamma_sups.push_back(sup_gauge(piece, k, q, tuples).lower.as_double());
    }
    double n2 = static_cast<double>(n) * n;
    for (int k = 0; k <= k_max; ++k) {
      double bound = 0.0;
      for (int i = 0; i <= k; ++i)
        bound += static_cast<double>(C[static_cast<size_t>(i)]) *
                 mn.inflated[static_cast<size_t>(i)] * std::pow(n2, i) *
                 row.gamma_sups[static_cast<size_t>(k - i)];
      row.zeta_bounds.push_back(bound);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string piece_table_csv(const std::vector<PieceTableRow>& rows) {
  std::string csv = "n,t_n,s_n,r_n";
  size_t k_max = rows.empty() ? 0 : rows.front().gamma_sups.size();
  for (size_t k = 0; k < k_max; ++k) csv += ",gamma_sup_" + std::to_string(k);
  for (size_t k = 0; k < k_max; ++k) csv += ",zeta_bound_" + std::to_string(k);
  csv += "\n";
  char buf[32];
  for (const auto& row : rows) {
    csv += std::to_string(row.n) + "," + row.t_n.to_string() + "," + row.s_n.to_string() +
           "," + row.r_n.to_string();
    for (double v : row.gamma_sups) {
      std::snprintf(buf, sizeof buf, "%.12g", v);
      csv += std::string(",") + buf;
    }
    for (double v : row.zeta_bounds) {
      std::snprintf(buf, sizeof buf, "%.12g", v);
      csv += std::string(",") + buf;
    }
    csv += "\n";
  }
  return csv;
}

HypothesisReport check_hypothesis_real(const RealGlueSpec& spec, const SamplerConfig& cfg,
                                       Rng& rng) {
  HypothesisReport rep;
  bool any_fail = false;
  bool any_open = false;
  int count = static_cast<int>(spec.pieces.size());

  for (int k = 0; k <= spec.probe.k_max; ++k) {
    for (int l = 0; l <= spec.probe.l_max; ++l) {
      for (int m = 0; m <= spec.probe.m_max; ++m) {
        std::vector<double> v;
        for (int n = 1; n <= count; ++n) {
          const auto& piece = spec.pieces[static_cast<size_t>(n - 1)];
          Gauge q = spec.calibration.at(n + m);
          auto tuples = sample_tuples(piece.domain(), k, cfg, rng);
          auto est = sup_gauge(piece, k, q, tuples);
          v.push_back(std::pow(static_cast<double>(n), l) * est.lower.as_double());
        }
        std::string tag = "k=" + std::to_string(k) + " l=" + std::to_string(l) +
                          " m=" + std::to_string(m);
        if (v.size() < 3) {
          any_open = true;
          rep.records.push_back(tag + ": prefix too short (inconclusive)");
          continue;
        }
        bool tail_dec = true;
        for (size_t i = v.size() / 2; i + 1 < v.size(); ++i)
          if (v[i + 1] > v[i]) tail_dec = false;
        bool below = v.back() <= spec.probe.C.to_double();
        if (tail_dec && below) {
          rep.records.push_back(tag + ": decaying over prefix, last=" +
                                std::to_string(v.back()));
        } else if (!tail_dec && v.back() > std::max(v.front(), spec.probe.C.to_double())) {
          any_fail = true;
          rep.records.push_back(tag + ": growing over prefix, last=" +
                                std::to_string(v.back()) + " (fail)");
        } else {
          any_open = true;
          rep.records.push_back(tag + ": prefix inconclusive, last=" +
                                std::to_string(v.back()));
        }
      }
    }
  }
  rep.verdict = any_fail ? Verdict::fail : (any_open ? Verdict::inconclusive : Verdict::pass);
  rep.probe_verdict = rep.verdict;
  rep.probe_lines.push_back("finite prefix: verdicts are prefix statements, not limits");
  return rep;
}

}  // namespace curvelab
