#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "curvelab/curve.hpp"
#include "curvelab/gauge.hpp"

namespace curvelab {

/// Complete homogeneous symmetric polynomial values h_0..h_max_deg of the
/// given points. h_d(x,...,x) over k+1 repeats of x equals C(d+k,k) x^d.
template <class K>
std::vector<K> complete_homogeneous(std::span<const K> points, int max_deg, const K& like) {
  std::vector<K> h(static_cast<size_t>(max_deg) + 1, zero_like(like));
  h[0] = scalar_from_rational(Rational(1), like);
  for (const K& x : points)
    for (int d = 1; d <= max_deg; ++d)
      h[static_cast<size_t>(d)] = h[static_cast<size_t>(d)] + x * h[static_cast<size_t>(d - 1)];
  return h;
}

namespace detail {

template <class K>
bool all_distinct(std::span<const K> pts) {
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) return false;
  return true;
}

}  // namespace detail

/// Evaluation session for higher difference quotients of one curve.
/// Values are cached per (order, sorted tuple), which is sound because
/// gamma^<k> is symmetric in its k+1 variables.
template <class K>
class DiffQuotSession {
 public:
  explicit DiffQuotSession(Curve<K> curve, bool use_memo = true)
      : curve_(std::move(curve)), memo_(use_memo), poly_(curve_.as_polynomial()) {}

  const Curve<K>& curve() const { return curve_; }

  /// gamma^<k>(x_0,...,x_k). Exact over exact scalars. Polynomial-backed
  /// rules take the symbolic route (monomial difference quotients are
  /// complete homogeneous symmetric polynomials), which also admits
  /// coincident points; other rules require pairwise distinct points.
  VectorT<K> diff_quot(int k, std::span<const K> points) {
    check_entry(k, points);
    if (poly_) return poly_path(k, points);
    if (!detail::all_distinct(points))
      throw std::invalid_argument("diff_quot: coincident points on a non-polynomial rule");
    std::vector<K> key(points.begin(), points.end());
    std::sort(key.begin(), key.end());
    if (memo_) {
      auto it = cache_.find({k, key});
      if (it != cache_.end()) return it->second;
    }
    VectorT<K> result = newton_table(points);
    if (memo_) cache_.emplace(CacheKey{k, std::move(key)}, result);
    return result;
  }

  /// The literal defining recursion
  ///   gamma^<k>(x_0,..,x_k) =
  ///     (gamma^<k-1>(x_k,x_1,..,x_{k-1}) - gamma^<k-1>(x_0,..,x_{k-1})) / (x_k - x_0),
  /// evaluated on the arguments as given. Used to cross-check the fast
  /// paths and to exercise permutation symmetry.
  VectorT<K> diff_quot_recursive(int k, std::span<const K> points) {
    check_entry(k, points);
    if (!detail::all_distinct(points))
      throw std::invalid_argument("diff_quot: coincident points on the recursive path");
    return recurse(k, std::vector<K>(points.begin(), points.end()));
  }

  void clear_cache() { cache_.clear(); }

 private:
  struct CacheKey {
    int order;
    std::vector<K> sorted_points;
    bool operator<(const CacheKey& other) const {
      if (order != other.order) return order < other.order;
      return std::lexicographical_compare(sorted_points.begin(), sorted_points.end(),
                                          other.sorted_points.begin(),
                                          other.sorted_points.end());
    }
  };

  void check_entry(int k, std::span<const K> points) const {
    if (k < 0) throw std::invalid_argument("diff_quot: negative order");
    if (points.size() != static_cast<size_t>(k) + 1)
      throw std::invalid_argument("diff_quot: need k+1 points");
    for (const K& x : points)
      if (!curve_.domain().contains(x))
        throw std::domain_error("diff_quot: point outside curve domain");
  }

  VectorT<K> poly_path(int k, std::span<const K> points) {
    const auto& coeffs = *poly_;
    int max_deg = 0;
    for (const auto& cs : coeffs)
      max_deg = std::max(max_deg, static_cast<int>(cs.size()) - 1);
    VectorT<K> out;
    out.coords.reserve(coeffs.size());
    if (max_deg < k) {
      for (size_t i = 0; i < coeffs.size(); ++i)
        out.coords.push_back(zero_like(curve_.exemplar()));
      return out;
    }
    auto h = complete_homogeneous<K>(points, max_deg - k, curve_.exemplar());
    for (const auto& cs : coeffs) {
      K acc = zero_like(curve_.exemplar());
      for (int m = k; m < static_cast<int>(cs.size()); ++m)
        acc = acc + cs[static_cast<size_t>(m)] * h[static_cast<size_t>(m - k)];
      out.coords.push_back(std::move(acc));
    }
    return out;
  }

  VectorT<K> newton_table(std::span<const K> points) {
    size_t n = points.size();
    std::vector<VectorT<K>> table;
    table.reserve(n);
    for (const K& x : points) table.push_back(curve_.eval(x));
    for (size_t level = 1; level < n; ++level)
      for (size_t i = 0; i + level < n; ++i)
        table[i] = (table[i + 1] - table[i]) / (points[i + level] - points[i]);
    return table[0];
  }

  VectorT<K> recurse(int k, const std::vector<K>& pts) {
    if (k == 0) return curve_.eval(pts[0]);
    if (memo_) {
      std::vector<K> key = pts;
      std::sort(key.begin(), key.end());
      auto it = rec_cache_.find({k, key});
      if (it != rec_cache_.end()) return it->second;
    }
    std::vector<K> left(pts.begin(), pts.end() - 1);   // (x_0, x_1, .., x_{k-1})
    std::vector<K> right = left;
    right[0] = pts.back();                             // (x_k, x_1, .., x_{k-1})
    VectorT<K> value =
        (recurse(k - 1, right) - recurse(k - 1, left)) / (pts.back() - pts.front());
    if (memo_) {
      std::vector<K> key = pts;
      std::sort(key.begin(), key.end());
      rec_cache_.emplace(CacheKey{k, std::move(key)}, value);
    }
    return value;
  }

  Curve<K> curve_;
  bool memo_;
  std::optional<typename Curve<K>::Coeffs> poly_;
  std::map<CacheKey, VectorT<K>> cache_;
  std::map<CacheKey, VectorT<K>> rec_cache_;
};

/// One-shot difference quotient (fresh session).
template <class K>
VectorT<K> diff_quot(const Curve<K>& c, int k, std::span<const K> points) {
  DiffQuotSession<K> session(c);
  return session.diff_quot(k, points);
}

template <class K>
VectorT<K> diff_quot(const Curve<K>& c, int k, const std::vector<K>& points) {
  return diff_quot(c, k, std::span<const K>(points));
}

/// gamma^<k>(x,...,x) = gamma^(k)(x) / k!, through symbolic differentiation
/// of the coefficient list. Polynomial-backed rules only.
template <class K>
VectorT<K> diff_quot_coincident(const Curve<K>& c, int k, const K& x) {
  auto poly = c.as_polynomial();
  if (!poly) throw std::invalid_argument("diff_quot_coincident: rule is not polynomial");
  if (k < 0) throw std::invalid_argument("diff_quot_coincident: negative order");
  if (!c.domain().contains(x))
    throw std::domain_error("diff_quot_coincident: point outside curve domain");
  VectorT<K> out;
  for (const auto& cs : *poly) {
    // sum_{m >= k} C(m,k) a_m x^{m-k}, Horner on the reduced list
    K acc = zero_like(x);
    for (int m = static_cast<int>(cs.size()) - 1; m >= k; --m) {
      Rational binom(1);
      for (int i = 0; i < k; ++i) binom = binom * Rational(m - i) / Rational(i + 1);
      acc = acc * x + scalar_from_rational(binom, x) * cs[static_cast<size_t>(m)];
    }
    out.coords.push_back(std::move(acc));
  }
  return out;
}

/// Symbolic k-th derivative of a polynomial curve (repeated single
/// differentiation of the coefficient list), evaluated at x. Independent of
/// the binomial route above.
template <class K>
VectorT<K> polynomial_derivative(const Curve<K>& c, int k, const K& x) {
  auto poly = c.as_polynomial();
  if (!poly) throw std::invalid_argument("polynomial_derivative: rule is not polynomial");
  VectorT<K> out;
  for (auto cs : *poly) {
    for (int round = 0; round < k; ++round) {
      std::vector<K> d;
      for (size_t m = 1; m < cs.size(); ++m)
        d.push_back(scalar_from_rational(Rational(static_cast<long>(m)), x) * cs[m]);
      cs = std::move(d);
    }
    K acc = zero_like(x);
    for (size_t m = cs.size(); m-- > 0;) acc = acc * x + cs[m];
    out.coords.push_back(std::move(acc));
  }
  return out;
}

/// Sampled-lower / certified-upper bracket for ||gamma^<k>||_{q,inf}.
struct SupGaugeEstimate {
  Magnitude lower;
  std::optional<Magnitude> upper;
  long sample_count = 0;
};

namespace detail {

/// Combines per-coordinate sup bounds through a gauge rule tree. Sound for
/// rules monotone in the coordinate magnitudes.
inline std::optional<Magnitude> combine_coord_bounds(const Gauge& q,
                                                     const std::vector<Magnitude>& bounds) {
  switch (q.rule()) {
    case Gauge::Rule::abs: {
      Magnitude m = Magnitude::zero();
      for (const auto& b : bounds) m = Magnitude::max(m, b);
      return m;
    }
    case Gauge::Rule::p_norm: {
      if (q.exponent() == Rational(1)) {
        Magnitude s = Magnitude::zero();
        for (const auto& b : bounds) s = s + b;
        return s;
      }
      double r = q.exponent().to_double();
      double s = 0.0;
      bool all_zero = true;
      for (const auto& b : bounds) {
        if (!b.is_zero()) all_zero = false;
        s += std::pow(b.as_double(), r);
      }
      if (all_zero) return Magnitude::zero();
      return Magnitude::approx(std::pow(s, 1.0 / r));
    }
    case Gauge::Rule::scaled: {
      auto inner = combine_coord_bounds(q.base(), bounds);
      if (!inner) return std::nullopt;
      return q.factor() * *inner;
    }
    case Gauge::Rule::sum: {
      Magnitude s = Magnitude::zero();
      for (const auto& g : q.parts()) {
        auto inner = combine_coord_bounds(g, bounds);
        if (!inner) return std::nullopt;
        s = s + *inner;
      }
      return s;
    }
    case Gauge::Rule::sup:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

/// Certified upper bound for ||gamma^<k>||_{q,inf} where available:
/// for a polynomial sum a_m x^m on an ultrametric ball of radius R the
/// coordinatewise bound is max_{m>=k} |a_m| R^{m-k} (the monomial
/// difference quotient is h_{m-k}, and every monomial of h_{m-k} has
/// absolute value <= R^{m-k} on the ball). Transform rules reduce to the
/// inner curve; sums of curves need a seminorm gauge.
template <class K>
std::optional<Magnitude> certified_sup_bound(const Curve<K>& c, int k, const Gauge& q) {
  if constexpr (!std::is_same_v<K, ExactScalar>) {
    (void)c;
    (void)k;
    (void)q;
    return std::nullopt;
  } else {
    using RK = Curve<ExactScalar>::RuleKind;
    switch (c.rule_kind()) {
      case RK::translate:
        return certified_sup_bound(c.inner(), k, q);
      case RK::scale: {
        auto inner = certified_sup_bound(c.inner(), k, q);
        if (!inner) return std::nullopt;
        Magnitude a = abs_value(c.scale_factor());
        return a.pow(k) * *inner;
      }
      case RK::restrict:
        return certified_sup_bound(c.inner(), k, q);
      case RK::sum: {
        if (!q.is_seminorm()) return std::nullopt;
        Magnitude s = Magnitude::zero();
        for (const auto& part : c.sum_parts()) {
          auto b = certified_sup_bound(part, k, q);
          if (!b) return std::nullopt;
          s = s + *b;
        }
        return s;
      }
      default:
        break;
    }
    auto poly = c.as_polynomial();
    if (!poly) return std::nullopt;
    const auto& dom = c.domain();

    if (dom.kind == Domain<ExactScalar>::Kind::whole) {
      // bounded on all of K only when the degree does not exceed k
      std::vector<Magnitude> bounds;
      for (const auto& cs_raw : *poly) {
        std::vector<ExactScalar> cs = cs_raw;
        while (cs.size() > 1 && cs.back().is_zero()) cs.pop_back();
        if (static_cast<int>(cs.size()) - 1 > k) return std::nullopt;
        bounds.push_back(static_cast<int>(cs.size()) - 1 == k
                             ? abs_value(cs[static_cast<size_t>(k)])
                             : Magnitude::zero());
      }
      return detail::combine_coord_bounds(q, bounds);
    }

    if (dom.kind != Domain<ExactScalar>::Kind::ball) return std::nullopt;
    if (!dom.center_or_lo.context().is_ultrametric()) return std::nullopt;
    if (!dom.radius.is_exact()) return std::nullopt;

    std::vector<Magnitude> bounds;
    for (const auto& cs_raw : *poly) {
      std::vector<ExactScalar> cs = cs_raw;
      while (cs.size() > 1 && cs.back().is_zero()) cs.pop_back();
      std::vector<ExactScalar> recentered = cs;
      if (!dom.center_or_lo.is_zero()) {
        // coefficients of p(y + center), so y runs over the centered ball
        Curve<ExactScalar> shifted =
            Curve<ExactScalar>::polynomial(Domain<ExactScalar>::whole(), {cs});
        recentered = (*shifted.translated(dom.center_or_lo).as_polynomial())[0];
      }
      Magnitude m = Magnitude::zero();
      Rational rpow(1);
      for (int deg = k; deg < static_cast<int>(recentered.size()); ++deg) {
        Magnitude term = abs_value(recentered[static_cast<size_t>(deg)]) *
                         Magnitude::exact(rpow);
        m = Magnitude::max(m, term);
        rpow = rpow * dom.radius.exact_value();
      }
      bounds.push_back(m);
    }
    return detail::combine_coord_bounds(q, bounds);
  }
}

/// Sampled sup of ||gamma^<k>||_q over the given tuples, bracketed by the
/// certified bound when one exists.
template <class K>
SupGaugeEstimate sup_gauge(const Curve<K>& c, int k, const Gauge& q,
                           const std::vector<std::vector<K>>& tuples) {
  SupGaugeEstimate est;
  est.upper = certified_sup_bound(c, k, q);
  DiffQuotSession<K> session(c);
  for (const auto& t : tuples) {
    est.lower = Magnitude::max(est.lower, q.eval(session.diff_quot(k, t)));
    ++est.sample_count;
  }
  return est;
}

/// Evaluates a sup-rule gauge descriptor on a curve over the given tuples
/// (the sampled-lower reading of ||gamma^<j>||_{q,inf}).
template <class K>
Magnitude eval_curve_gauge(const Gauge& g, const Curve<K>& c,
                           const std::vector<std::vector<K>>& tuples) {
  if (g.rule() == Gauge::Rule::scaled)
    return g.factor() * eval_curve_gauge(g.base(), c, tuples);
  if (g.rule() != Gauge::Rule::sup)
    throw std::invalid_argument("eval_curve_gauge: gauge has no sup rule");
  return sup_gauge(c, g.sup_order(), g.base(), tuples).lower;
}

}  // namespace curvelab
