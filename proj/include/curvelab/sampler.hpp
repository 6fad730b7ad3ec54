#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "curvelab/diffquot.hpp"

namespace curvelab {

/// Deterministic random source. Doubles are derived from raw bits so that
/// streams are reproducible independent of the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  long uniform_int(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  /// Random reduced rational with |num| <= num_bound, 1 <= den <= den_bound.
  Rational rational(long num_bound, long den_bound) {
    return Rational(uniform_int(-num_bound, num_bound), uniform_int(1, den_bound));
  }

  /// Nonzero variant.
  Rational nonzero_rational(long num_bound, long den_bound) {
    for (;;) {
      Rational r = rational(num_bound, den_bound);
      if (!r.is_zero()) return r;
    }
  }

 private:
  std::mt19937_64 eng_;
};

struct SamplerConfig {
  uint64_t seed = 42;
  int padic_depth = 3;       // ball grid = center + R * {0 .. p^(depth+1)-1}
  int point_budget = 64;     // 1-d sample points per set
  int tuple_budget = 160;    // tuples per sup estimate
  double min_gap = 1e-6;     // pairwise gap floor for real tuples
  long rat_num_bound = 40;   // random rational numerators
  long rat_den_bound = 12;
};

/// Exponent e of the effective ball radius: the largest p-adic magnitude
/// p^-e that does not exceed the declared radius. (Magnitudes of field
/// elements are integer powers of p, so the two balls coincide.)
inline long ball_radius_exponent(const Domain<ExactScalar>& dom) {
  if (dom.kind != Domain<ExactScalar>::Kind::ball)
    throw std::invalid_argument("ball_radius_exponent: domain is not a ball");
  unsigned long p = dom.center_or_lo.context().prime;
  const Rational& radius = dom.radius.exact_value();
  long e = -radius.valuation(p);
  if (prime_power(p, -e) > radius) ++e;
  return e;
}

/// Points of the deterministic grid inside a p-adic ball: center + p^e * u
/// for u = 0 .. p^(depth+1)-1 (capped); |p^e u| = p^-e |u| <= radius.
inline std::vector<ExactScalar> padic_ball_grid(const Domain<ExactScalar>& dom,
                                                int depth, int cap) {
  unsigned long p = dom.center_or_lo.context().prime;
  long count = 1;
  for (int i = 0; i <= depth; ++i) {
    count *= static_cast<long>(p);
    if (count > cap) {
      count = cap;
      break;
    }
  }
  Rational scale = prime_power(p, ball_radius_exponent(dom));
  std::vector<ExactScalar> pts;
  pts.reserve(static_cast<size_t>(count));
  for (long u = 0; u < count; ++u)
    pts.push_back(dom.center_or_lo +
                  ExactScalar(scale * Rational(u), dom.center_or_lo.context()));
  return pts;
}

/// Points outside a p-adic ball at magnitudes R p^j: center + w p^(e-j)
/// with w prime to p.
inline std::vector<ExactScalar> padic_outside_points(const Domain<ExactScalar>& dom,
                                                     int levels, Rng& rng) {
  unsigned long p = dom.center_or_lo.context().prime;
  long e = ball_radius_exponent(dom);
  std::vector<ExactScalar> pts;
  for (int j = 1; j <= levels; ++j) {
    Rational scale = prime_power(p, e - j);  // |w * scale| = p^(j-e) = R p^j
    for (int rep = 0; rep < 3; ++rep) {
      long w = rng.uniform_int(1, static_cast<long>(p) - 1) +
               static_cast<long>(p) * rng.uniform_int(0, 3);
      if (w % static_cast<long>(p) == 0) w += 1;
      pts.push_back(dom.center_or_lo +
                    ExactScalar(scale * Rational(w), dom.center_or_lo.context()));
    }
  }
  return pts;
}

/// 1-d sample points of a domain. Exact contexts get grid/lattice points
/// plus random rationals; real intervals get Chebyshev plus uniform points.
inline std::vector<ExactScalar> sample_points(const Domain<ExactScalar>& dom,
                                              const SamplerConfig& cfg, Rng& rng) {
  std::set<Rational> seen;
  std::vector<ExactScalar> out;
  auto push = [&](const ExactScalar& x) {
    if (seen.insert(x.value()).second) out.push_back(x);
  };
  switch (dom.kind) {
    case Domain<ExactScalar>::Kind::ball:
      for (const auto& x : padic_ball_grid(dom, cfg.padic_depth, cfg.point_budget)) push(x);
      break;
    case Domain<ExactScalar>::Kind::interval: {
      const Rational lo = dom.center_or_lo.value();
      const Rational hi = dom.hi.value();
      const Rational width = hi - lo;
      int lattice = std::min(cfg.point_budget / 2, 16);
      for (int i = 0; i <= lattice; ++i)
        push(ExactScalar(lo + width * Rational(i, lattice == 0 ? 1 : lattice),
                         dom.center_or_lo.context()));
      while (static_cast<int>(out.size()) < cfg.point_budget) {
        Rational t = Rational(rng.uniform_int(0, 1000), 1000);
        push(ExactScalar(lo + width * t, dom.center_or_lo.context()));
      }
      break;
    }
    case Domain<ExactScalar>::Kind::whole: {
      FieldContext ctx = dom.center_or_lo.context();
      for (long v : {0L, 1L, -1L, 2L}) push(ExactScalar(Rational(v), ctx));
      while (static_cast<int>(out.size()) < cfg.point_budget)
        push(ExactScalar(rng.rational(cfg.rat_num_bound, cfg.rat_den_bound), ctx));
      break;
    }
  }
  return out;
}

inline std::vector<double> sample_points(const Domain<double>& dom, const SamplerConfig& cfg,
                                         Rng& rng) {
  double lo, hi;
  if (dom.kind == Domain<double>::Kind::interval) {
    lo = dom.center_or_lo;
    hi = dom.hi;
  } else {
    lo = -2.0;  // default window for whole-line curves
    hi = 2.0;
  }
  std::vector<double> out;
  double mid = 0.5 * (lo + hi);
  double half = 0.5 * (hi - lo);
  int n_cheb = std::max(4, cfg.point_budget / 2);
  for (int i = 0; i < n_cheb; ++i)
    out.push_back(mid + half * std::cos(M_PI * (2.0 * i + 1.0) / (2.0 * n_cheb)));
  out.push_back(lo);
  out.push_back(hi);
  while (static_cast<int>(out.size()) < cfg.point_budget) out.push_back(rng.uniform(lo, hi));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

inline bool gap_ok(const std::vector<double>& tuple, double min_gap) {
  for (size_t i = 0; i < tuple.size(); ++i)
    for (size_t j = i + 1; j < tuple.size(); ++j)
      if (std::fabs(tuple[i] - tuple[j]) < min_gap) return false;
  return true;
}

inline bool gap_ok(const std::vector<ExactScalar>& tuple, double) {
  for (size_t i = 0; i < tuple.size(); ++i)
    for (size_t j = i + 1; j < tuple.size(); ++j)
      if (tuple[i] == tuple[j]) return false;
  return true;
}

}  // namespace detail

/// Builds (k+1)-tuples of distinct points drawn from a point pool:
/// sliding windows first, then random combinations, respecting the pairwise
/// gap floor for doubles.
template <class K>
std::vector<std::vector<K>> tuples_from_points(const std::vector<K>& pts, int k, int budget,
                                               Rng& rng, double min_gap = 1e-6) {
  std::vector<std::vector<K>> tuples;
  size_t width = static_cast<size_t>(k) + 1;
  if (pts.size() < width) return tuples;
  for (size_t i = 0; i + width <= pts.size() && static_cast<int>(tuples.size()) < budget / 2;
       ++i) {
    std::vector<K> t(pts.begin() + static_cast<long>(i),
                     pts.begin() + static_cast<long>(i + width));
    if (detail::gap_ok(t, min_gap)) tuples.push_back(std::move(t));
  }
  int attempts = 0;
  while (static_cast<int>(tuples.size()) < budget && attempts < budget * 20) {
    ++attempts;
    std::vector<K> t;
    std::set<size_t> used;
    while (t.size() < width) {
      size_t idx = static_cast<size_t>(rng.uniform_int(0, static_cast<long>(pts.size()) - 1));
      if (used.insert(idx).second) t.push_back(pts[idx]);
    }
    if (detail::gap_ok(t, min_gap)) tuples.push_back(std::move(t));
  }
  return tuples;
}

/// Default tuple sampler for a curve domain: pool points, then tuples.
/// Real domains additionally get short arithmetic progressions at safe
/// spacings, which probe near-coincident behaviour without catastrophic
/// cancellation.
template <class K>
std::vector<std::vector<K>> sample_tuples(const Domain<K>& dom, int k,
                                          const SamplerConfig& cfg, Rng& rng) {
  auto pts = sample_points(dom, cfg, rng);
  auto tuples = tuples_from_points(pts, k, cfg.tuple_budget, rng, cfg.min_gap);
  if constexpr (std::is_same_v<K, double>) {
    for (double delta : {1e-2, 1e-3}) {
      for (int rep = 0; rep < 8; ++rep) {
        size_t idx = static_cast<size_t>(rng.uniform_int(0, static_cast<long>(pts.size()) - 1));
        std::vector<double> t;
        for (int j = 0; j <= k; ++j) t.push_back(pts[idx] + delta * j);
        bool inside = true;
        for (double x : t)
          if (!dom.contains(x)) inside = false;
        if (inside) tuples.push_back(std::move(t));
      }
    }
  }
  return tuples;
}

/// ||gamma^<k>||_{q,inf} estimated under the default sampling policy for
/// the curve's own domain.
template <class K>
SupGaugeEstimate sup_gauge_sampled(const Curve<K>& c, int k, const Gauge& q,
                                   const SamplerConfig& cfg, Rng& rng) {
  return sup_gauge(c, k, q, sample_tuples(c.domain(), k, cfg, rng));
}

/// Random vectors with exact rational coordinates.
inline VectorT<ExactScalar> random_vector(int dim, FieldContext ctx, const SamplerConfig& cfg,
                                          Rng& rng) {
  VectorT<ExactScalar> v;
  for (int i = 0; i < dim; ++i)
    v.coords.push_back(ExactScalar(rng.rational(cfg.rat_num_bound, cfg.rat_den_bound), ctx));
  return v;
}

inline VectorT<double> random_real_vector(int dim, double bound, Rng& rng) {
  VectorT<double> v;
  for (int i = 0; i < dim; ++i) v.coords.push_back(rng.uniform(-bound, bound));
  return v;
}

}  // namespace curvelab
