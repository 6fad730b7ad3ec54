#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "curvelab/outcome.hpp"
#include "curvelab/vector.hpp"

namespace curvelab {

/// Homogeneous map q : E -> [0,inf[. Built from a small rule tree; values
/// are exact whenever no real root enters (abs coordinates, l^1 sums,
/// rational scalings).
class Gauge {
 public:
  enum class Rule { abs, p_norm, scaled, sum, sup };

  /// Coordinatewise sup of |.|; on one coordinate this is the field's
  /// absolute value itself.
  static Gauge abs_on_K() { return Gauge(std::make_shared<Node>(Node{Rule::abs})); }

  /// ||x||_r = (sum |x_i|^r)^(1/r) for r in (0,1]. r = 1 stays exact.
  static Gauge p_norm(Rational r) {
    if (!(r > Rational(0)) || r > Rational(1))
      throw std::invalid_argument("Gauge::p_norm: exponent must lie in (0,1]");
    Node n{Rule::p_norm};
    n.r = std::move(r);
    return Gauge(std::make_shared<Node>(std::move(n)));
  }

  static Gauge scaled(Gauge base, Magnitude factor) {
    if (factor < Magnitude::zero())
      throw std::invalid_argument("Gauge::scaled: negative factor");
    Node n{Rule::scaled};
    n.factor = std::move(factor);
    n.base = base.node_;
    return Gauge(std::make_shared<Node>(std::move(n)));
  }

  static Gauge sum(std::vector<Gauge> parts) {
    if (parts.empty()) throw std::invalid_argument("Gauge::sum: empty part list");
    Node n{Rule::sum};
    n.parts = std::move(parts);
    return Gauge(std::make_shared<Node>(std::move(n)));
  }

  /// Descriptor of the sup-gauge ||gamma^<j>||_{q,inf} on a space of curves.
  /// Evaluated through the difference-quotient engine, not on vectors.
  static Gauge sup_on_curves(int order, Gauge base) {
    if (order < 0) throw std::invalid_argument("Gauge::sup_on_curves: negative order");
    Node n{Rule::sup};
    n.sup_order = order;
    n.base = base.node_;
    return Gauge(std::make_shared<Node>(std::move(n)));
  }

  Rule rule() const { return node_->rule; }
  const Rational& exponent() const { return node_->r; }
  const Magnitude& factor() const { return node_->factor; }
  Gauge base() const { return Gauge(node_->base); }
  const std::vector<Gauge>& parts() const { return node_->parts; }
  int sup_order() const { return node_->sup_order; }

  template <class K>
  Magnitude eval(const VectorT<K>& x) const {
    if constexpr (std::is_same_v<K, ExactScalar>) {
      for (size_t i = 1; i < x.coords.size(); ++i)
        if (x.coords[i].context() != x.coords[0].context())
          throw std::invalid_argument("Gauge: mixed contexts in one vector");
    }
    return eval_node(*node_, x);
  }

  /// True when the plain triangle inequality holds for this rule tree
  /// (abs, l^1, and their nonnegative combinations).
  bool is_seminorm() const { return node_seminorm(*node_); }

 private:
  struct Node {
    Rule rule = Rule::abs;
    Rational r = Rational(1);
    Magnitude factor = Magnitude::zero();
    std::shared_ptr<const Node> base = nullptr;
    std::vector<Gauge> parts = {};
    int sup_order = 0;
  };

  explicit Gauge(std::shared_ptr<const Node> n) : node_(std::move(n)) {
    if (!node_) throw std::invalid_argument("Gauge: null rule");
  }

  template <class K>
  static Magnitude eval_node(const Node& n, const VectorT<K>& x) {
    switch (n.rule) {
      case Rule::abs: {
        Magnitude m = Magnitude::zero();
        for (const auto& c : x.coords) m = Magnitude::max(m, abs_value(c));
        return m;
      }
      case Rule::p_norm: {
        if (n.r == Rational(1)) {
          Magnitude s = Magnitude::zero();
          for (const auto& c : x.coords) s = s + abs_value(c);
          return s;
        }
        double r = n.r.to_double();
        double s = 0.0;
        bool all_zero = true;
        for (const auto& c : x.coords) {
          Magnitude a = abs_value(c);
          if (!a.is_zero()) all_zero = false;
          s += std::pow(a.as_double(), r);
        }
        if (all_zero) return Magnitude::zero();
        return Magnitude::approx(std::pow(s, 1.0 / r));
      }
      case Rule::scaled:
        return n.factor * eval_node(*n.base, x);
      case Rule::sum: {
        Magnitude s = Magnitude::zero();
        for (const auto& g : n.parts) s = s + g.eval(x);
        return s;
      }
      case Rule::sup:
        throw std::logic_error("Gauge: sup-gauge requires a curve argument");
    }
    throw std::logic_error("Gauge: unknown rule");
  }

  static bool node_seminorm(const Node& n) {
    switch (n.rule) {
      case Rule::abs:
        return true;
      case Rule::p_norm:
        return n.r == Rational(1);
      case Rule::scaled:
        return node_seminorm(*n.base);
      case Rule::sum:
        for (const auto& g : n.parts)
          if (!g.is_seminorm()) return false;
        return true;
      case Rule::sup:
        return false;
    }
    return false;
  }

  std::shared_ptr<const Node> node_;

  friend class Calibration;
};

/// Balanced neighbourhood of 0 described by a gauge sublevel set.
struct BallDescriptor {
  Gauge gauge;
  Magnitude radius;
  bool open = true;

  BallDescriptor(Gauge g, Magnitude r, bool is_open)
      : gauge(std::move(g)), radius(std::move(r)), open(is_open) {
    if (radius.is_zero()) throw std::invalid_argument("BallDescriptor: radius must be positive");
  }

  /// x in t*U, decided through homogeneity: q(x) < |t| * radius (open)
  /// resp. <= (closed).
  template <class K>
  bool contains_scaled(const VectorT<K>& x, const Magnitude& abs_t) const {
    Magnitude lim = abs_t * radius;
    Magnitude q = gauge.eval(x);
    return open ? q < lim : q <= lim;
  }
};

/// Indexed gauge sequence (q_n) with the fake triangle inequality
/// q_n(x+y) <= q_{n+1}(x) + q_{n+1}(y) (ordinary) or with max instead of
/// the sum (strong).
class Calibration {
 public:
  enum class Kind { ordinary, strong };
  enum class Law { constant, pow2_over_r, shifted };

  /// Defaults to the constant calibration of the coordinatewise sup of |.|.
  Calibration() = default;

  static Calibration constant(Gauge q, Kind kind) {
    Calibration c;
    c.law_ = Law::constant;
    c.kind_ = kind;
    c.base_ = std::move(q);
    return c;
  }

  /// q_n = 2^(n/r) q for an r-seminorm q.
  static Calibration pow2_over_r(Gauge q, Rational r, Kind kind = Kind::strong) {
    if (!(r > Rational(0)) || r > Rational(1))
      throw std::invalid_argument("Calibration: exponent must lie in (0,1]");
    Calibration c;
    c.law_ = Law::pow2_over_r;
    c.kind_ = kind;
    c.base_ = std::move(q);
    c.r_ = std::move(r);
    return c;
  }

  /// q_n = scale * base_{n+n0}; stays a calibration of the same kind.
  static Calibration shifted(Calibration base, int n0, Magnitude scale) {
    if (n0 < 0) throw std::invalid_argument("Calibration::shifted: negative shift");
    Calibration c;
    c.law_ = Law::shifted;
    c.kind_ = base.kind_;
    c.shift_base_ = std::make_shared<Calibration>(std::move(base));
    c.n0_ = n0;
    c.scale_ = std::move(scale);
    return c;
  }

  Gauge at(int n) const {
    if (n < 0) throw std::invalid_argument("Calibration: negative index");
    switch (law_) {
      case Law::constant:
        return *base_;
      case Law::pow2_over_r:
        return Gauge::scaled(*base_, pow2_factor(n));
      case Law::shifted:
        return Gauge::scaled(shift_base_->at(n + n0_), scale_);
    }
    throw std::logic_error("Calibration: unknown law");
  }

  Kind kind() const { return kind_; }
  Law law() const { return law_; }
  const Gauge& base() const {
    if (!base_) throw std::logic_error("Calibration: no base gauge");
    return *base_;
  }
  const Rational& exponent() const { return r_; }
  const Calibration& shift_base() const { return *shift_base_; }
  int shift_n0() const { return n0_; }
  const Magnitude& shift_scale() const { return scale_; }

  /// 2^(n/r), exact whenever n/r is an integer.
  Magnitude pow2_factor(int n) const {
    Rational e = Rational(n) / r_;
    if (e.is_integer()) {
      double d = e.to_double();
      return Magnitude::exact(Rational(2).pow(static_cast<long>(d)));
    }
    return Magnitude::approx(std::pow(2.0, e.to_double()));
  }

 private:
  Law law_ = Law::constant;
  Kind kind_ = Kind::ordinary;
  std::optional<Gauge> base_ = Gauge::abs_on_K();
  Rational r_ = Rational(1);
  std::shared_ptr<Calibration> shift_base_;
  int n0_ = 0;
  Magnitude scale_ = Magnitude::exact(Rational(1));
};

/// min{|t| : t in candidates, x in tU}, an upper approximation of the
/// Minkowski functional restricted to the candidate set. Empty optional
/// when no candidate works.
template <class K>
std::optional<Magnitude> minkowski(const BallDescriptor& U, const VectorT<K>& x,
                                   const std::vector<K>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("minkowski: empty candidate list");
  std::optional<Magnitude> best;
  for (const auto& t : candidates) {
    Magnitude at = abs_value(t);
    if (at.is_zero()) throw std::invalid_argument("minkowski: zero candidate");
    if (U.contains_scaled(x, at) && (!best || at < *best)) best = at;
  }
  return best;
}

/// Verifies q(x) <= min-candidate Minkowski value on every sample; assumes
/// the caller arranged U inside the unit ball of q. Samples without a
/// candidate witness are skipped, not failed.
template <class K>
CheckOutcome check_sandwich(const Gauge& q, const BallDescriptor& U,
                            const std::vector<VectorT<K>>& samples,
                            const std::vector<K>& candidates, double rel_slack) {
  CheckOutcome out;
  for (const auto& x : samples) {
    auto mu = minkowski(U, x, candidates);
    if (!mu) {
      ++out.skipped;
      continue;
    }
    ++out.checked;
    Magnitude qx = q.eval(x);
    if (!qx.leq_with_slack(*mu, rel_slack))
      out.add_violation("q" + x.to_string() + " = " + qx.to_string() + " > " +
                        mu->to_string());
  }
  return out;
}

/// Gauge p with q(x+y) <= max{p(x), p(y)}: the gauge itself in the
/// ultrametric abs case, 2^(1/r) q for an r-seminorm.
Gauge triangle_companion(const Gauge& q, bool ultrametric_field);

/// Strong calibration q_n = 2^(n/r) q extending an r-seminorm q.
Calibration calibration_from_rseminorm(Gauge q, Rational r);

/// Fake triangle (ordinary) / fake ultrametric (strong) inequality plus
/// monotonicity q_n <= q_{n+1}, on the given pairs for n = 0..n_max.
template <class K>
CheckOutcome check_fake_triangle(const Calibration& c,
                                 const std::vector<std::pair<VectorT<K>, VectorT<K>>>& pairs,
                                 int n_max, double rel_slack) {
  CheckOutcome out;
  if (pairs.empty()) throw std::invalid_argument("check_fake_triangle: no pairs");
  for (int n = 0; n <= n_max; ++n) {
    Gauge qn = c.at(n);
    Gauge qn1 = c.at(n + 1);
    for (const auto& [x, y] : pairs) {
      ++out.checked;
      Magnitude lhs = qn.eval(x + y);
      Magnitude qx = qn1.eval(x);
      Magnitude qy = qn1.eval(y);
      Magnitude rhs = c.kind() == Calibration::Kind::strong ? Magnitude::max(qx, qy) : qx + qy;
      if (!lhs.leq_with_slack(rhs, rel_slack))
        out.add_violation("n=" + std::to_string(n) + " q_n(x+y)=" + lhs.to_string() +
                          " > " + rhs.to_string() + " at x=" + x.to_string() +
                          ", y=" + y.to_string());
      if (!qn.eval(x).leq_with_slack(qn1.eval(x), rel_slack))
        out.add_violation("monotonicity fails at n=" + std::to_string(n) +
                          ", x=" + x.to_string());
    }
  }
  return out;
}

/// || sum_{k=m..n} x_k ||_{q_0} <= sum_{k=m..n} ||x_k||_{q_k} (1-based m, n).
template <class K>
CheckOutcome partial_sum_bound(const std::vector<VectorT<K>>& terms, const Calibration& c,
                               int m, int n, double rel_slack) {
  if (m < 1 || n < m || n > static_cast<int>(terms.size()))
    throw std::out_of_range("partial_sum_bound: indices out of range");
  CheckOutcome out;
  out.checked = 1;
  VectorT<K> acc = terms[static_cast<size_t>(m - 1)];
  for (int k = m + 1; k <= n; ++k) acc = acc + terms[static_cast<size_t>(k - 1)];
  Magnitude lhs = c.at(0).eval(acc);
  Magnitude rhs = Magnitude::zero();
  for (int k = m; k <= n; ++k) rhs = rhs + c.at(k).eval(terms[static_cast<size_t>(k - 1)]);
  if (!lhs.leq_with_slack(rhs, rel_slack))
    out.add_violation("||sum||_{q0}=" + lhs.to_string() + " > " + rhs.to_string() +
                      " for m=" + std::to_string(m) + ", n=" + std::to_string(n));
  return out;
}

}  // namespace curvelab
