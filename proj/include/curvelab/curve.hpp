#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "curvelab/vector.hpp"

namespace curvelab {

inline ExactScalar scalar_from_rational(const Rational& r, const ExactScalar& like) {
  return ExactScalar(r, like.context());
}
inline double scalar_from_rational(const Rational& r, double) { return r.to_double(); }

/// Smooth nonincreasing step: 1 on ]-inf,0], 0 on [1,inf[, built from
/// phi(t) = exp(-1/t) on t > 0.
inline double bump_phi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
inline double smooth_step(double t) {
  double a = bump_phi(1.0 - t);
  double b = bump_phi(t);
  if (b == 0.0) return 1.0;
  if (a == 0.0) return 0.0;
  return a / (a + b);
}

/// Parameter domain of a curve: a closed p-adic ball, a real interval, or
/// the whole field.
template <class K>
struct Domain {
  enum class Kind { whole, ball, interval };

  Kind kind = Kind::whole;
  K center_or_lo{};
  K hi{};
  Magnitude radius;

  static Domain whole() { return Domain{}; }

  static Domain ball(K center, Magnitude r) {
    static_assert(std::is_same_v<K, ExactScalar>, "balls live in ultrametric fields");
    if (r.is_zero()) throw std::invalid_argument("Domain: ball radius must be positive");
    Domain d;
    d.kind = Kind::ball;
    d.center_or_lo = std::move(center);
    d.radius = std::move(r);
    return d;
  }

  static Domain interval(K lo, K hi_) {
    if (!(lo < hi_)) throw std::invalid_argument("Domain: interval needs lo < hi");
    Domain d;
    d.kind = Kind::interval;
    d.center_or_lo = std::move(lo);
    d.hi = std::move(hi_);
    return d;
  }

  bool contains(const K& x) const {
    switch (kind) {
      case Kind::whole:
        return true;
      case Kind::ball:
        if constexpr (std::is_same_v<K, ExactScalar>)
          return in_closed_ball(x, center_or_lo, radius);
        else
          return false;
      case Kind::interval:
        return !(x < center_or_lo) && !(hi < x);
    }
    return false;
  }

  /// Conservative subset test used to validate restrictions.
  bool subset_of(const Domain& other) const {
    if (other.kind == Kind::whole) return true;
    if (kind != other.kind) return false;
    if (kind == Kind::interval)
      return !(center_or_lo < other.center_or_lo) && !(other.hi < hi);
    if constexpr (std::is_same_v<K, ExactScalar>) {
      // ultrametric balls nest iff radii nest and centers are close
      return radius <= other.radius &&
             in_closed_ball(center_or_lo, other.center_or_lo, other.radius);
    }
    return false;
  }
};

/// A curve over K: a domain plus an evaluation rule. Immutable; cheap to
/// copy; identity (for caching) is the underlying node pointer.
template <class K>
class Curve {
 public:
  using Coeffs = std::vector<std::vector<K>>;  // coeffs[coord][power]

  static Curve polynomial(Domain<K> dom, Coeffs coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("Curve: polynomial needs >= 1 coordinate");
    K exemplar{};
    bool found = false;
    for (const auto& c : coeffs)
      if (!c.empty()) {
        exemplar = c.front();
        found = true;
        break;
      }
    if (!found && dom.kind != Domain<K>::Kind::whole) exemplar = dom.center_or_lo;
    for (auto& c : coeffs)
      if (c.empty()) c.push_back(zero_like(exemplar));
    int dim = static_cast<int>(coeffs.size());
    return Curve(std::make_shared<Node>(
        Node{std::move(dom), dim, exemplar, PolyRule{std::move(coeffs)}}));
  }

  static Curve constant(Domain<K> dom, VectorT<K> value) {
    Coeffs coeffs;
    for (auto& c : value.coords) coeffs.push_back({c});
    return polynomial(std::move(dom), std::move(coeffs));
  }

  /// eta(t) = gamma(t + t0) on U - t0.
  Curve translated(const K& t0) const {
    Domain<K> dom = node_->domain;
    switch (dom.kind) {
      case Domain<K>::Kind::whole:
        break;
      case Domain<K>::Kind::ball:
        dom.center_or_lo = dom.center_or_lo - t0;
        break;
      case Domain<K>::Kind::interval:
        dom.center_or_lo = dom.center_or_lo - t0;
        dom.hi = dom.hi - t0;
        break;
    }
    return Curve(std::make_shared<Node>(
        Node{std::move(dom), node_->dim, node_->exemplar, TranslateRule{*this, t0}}));
  }

  /// eta(t) = gamma(a t) on a^{-1} U, a != 0.
  Curve scaled_arg(const K& a) const {
    if (a == zero_like(a)) throw std::invalid_argument("Curve: scale factor must be nonzero");
    Domain<K> dom = node_->domain;
    switch (dom.kind) {
      case Domain<K>::Kind::whole:
        break;
      case Domain<K>::Kind::ball:
        if constexpr (std::is_same_v<K, ExactScalar>) {
          dom.center_or_lo = dom.center_or_lo / a;
          dom.radius = dom.radius * abs_value(a).pow(-1);
        }
        break;
      case Domain<K>::Kind::interval: {
        K lo = dom.center_or_lo / a;
        K hi = dom.hi / a;
        if (hi < lo) std::swap(lo, hi);
        dom.center_or_lo = lo;
        dom.hi = hi;
        break;
      }
    }
    return Curve(std::make_shared<Node>(
        Node{std::move(dom), node_->dim, node_->exemplar, ScaleRule{*this, a}}));
  }

  Curve restricted(Domain<K> sub) const {
    if (!sub.subset_of(node_->domain))
      throw std::invalid_argument("Curve: restriction domain is not a subset");
    return Curve(std::make_shared<Node>(
        Node{std::move(sub), node_->dim, node_->exemplar, RestrictRule{*this}}));
  }

  /// Zero outside the original domain; new domain is the whole field.
  Curve extended_by_zero() const {
    return Curve(std::make_shared<Node>(
        Node{Domain<K>::whole(), node_->dim, node_->exemplar, ExtendRule{*this}}));
  }

  /// Pointwise scalar multiplication t -> f(t) * g(t), f scalar-valued.
  static Curve product(Curve scalar_curve, Curve vector_curve) {
    if (scalar_curve.dim() != 1)
      throw std::invalid_argument("Curve: product needs a scalar first factor");
    Domain<K> dom = scalar_curve.domain();
    return Curve(std::make_shared<Node>(
        Node{std::move(dom), vector_curve.dim(), vector_curve.node_->exemplar,
             ProductRule{std::move(scalar_curve), std::move(vector_curve)}}));
  }

  static Curve sum(std::vector<Curve> parts) {
    if (parts.empty()) throw std::invalid_argument("Curve: empty sum");
    int dim = parts.front().dim();
    for (const auto& p : parts)
      if (p.dim() != dim) throw std::invalid_argument("Curve: sum dimension mismatch");
    Domain<K> dom = parts.front().domain();
    K exemplar = parts.front().node_->exemplar;
    return Curve(std::make_shared<Node>(
        Node{std::move(dom), dim, exemplar, SumRule{std::move(parts)}}));
  }

  /// h(t) = g((t-a)/b) g((-t-a)/b): 1 on [-a,a], 0 outside [-(a+b), a+b].
  static Curve cutoff(double a, double b) {
    static_assert(std::is_same_v<K, double>, "cutoff curves are real");
    if (!(a > 0.0) || !(b > 0.0))
      throw std::invalid_argument("Curve: cutoff needs a, b > 0");
    return Curve(std::make_shared<Node>(
        Node{Domain<K>::whole(), 1, 0.0, CutoffRule{a, b}}));
  }

  static Curve from_callback(Domain<K> dom, int dim, K exemplar,
                             std::function<VectorT<K>(const K&)> fn, std::string tag) {
    return Curve(std::make_shared<Node>(
        Node{std::move(dom), dim, exemplar, CallbackRule{std::move(fn), std::move(tag)}}));
  }

  const Domain<K>& domain() const { return node_->domain; }
  int dim() const { return node_->dim; }
  const K& exemplar() const { return node_->exemplar; }
  const void* id() const { return node_.get(); }

  VectorT<K> eval(const K& t) const {
    const Node& n = *node_;
    if (std::holds_alternative<PolyRule>(n.rule)) {
      const auto& coeffs = std::get<PolyRule>(n.rule).coeffs;
      VectorT<K> out;
      out.coords.reserve(coeffs.size());
      for (const auto& cs : coeffs) {
        K acc = zero_like(t);
        for (size_t m = cs.size(); m-- > 0;) acc = acc * t + cs[m];
        out.coords.push_back(std::move(acc));
      }
      return out;
    }
    if (std::holds_alternative<TranslateRule>(n.rule)) {
      const auto& r = std::get<TranslateRule>(n.rule);
      return r.inner.eval(t + r.t0);
    }
    if (std::holds_alternative<ScaleRule>(n.rule)) {
      const auto& r = std::get<ScaleRule>(n.rule);
      return r.inner.eval(r.a * t);
    }
    if (std::holds_alternative<RestrictRule>(n.rule)) {
      if (!n.domain.contains(t))
        throw std::domain_error("Curve: point outside restricted domain");
      return std::get<RestrictRule>(n.rule).inner.eval(t);
    }
    if (std::holds_alternative<ExtendRule>(n.rule)) {
      const auto& inner = std::get<ExtendRule>(n.rule).inner;
      if (inner.domain().contains(t)) return inner.eval(t);
      return VectorT<K>::zero(n.dim, n.exemplar);
    }
    if (std::holds_alternative<ProductRule>(n.rule)) {
      const auto& r = std::get<ProductRule>(n.rule);
      K s = r.scalar.eval(t).coords[0];
      return s * r.vec.eval(t);
    }
    if (std::holds_alternative<SumRule>(n.rule)) {
      const auto& parts = std::get<SumRule>(n.rule).parts;
      VectorT<K> acc = parts.front().eval(t);
      for (size_t i = 1; i < parts.size(); ++i) acc = acc + parts[i].eval(t);
      return acc;
    }
    if (std::holds_alternative<CutoffRule>(n.rule)) {
      if constexpr (std::is_same_v<K, double>) {
        const auto& r = std::get<CutoffRule>(n.rule);
        double v = smooth_step((t - r.a) / r.b) * smooth_step((-t - r.a) / r.b);
        return VectorT<K>{{v}};
      } else {
        throw std::logic_error("Curve: cutoff rule on a non-real curve");
      }
    }
    return std::get<CallbackRule>(n.rule).fn(t);
  }

  /// Exact polynomial coefficients when the rule tree flattens to one
  /// (polynomial, translate, scale, restrict, sum, product of such).
  std::optional<Coeffs> as_polynomial() const { return flatten(*node_); }

  bool is_cutoff() const { return std::holds_alternative<CutoffRule>(node_->rule); }
  std::pair<double, double> cutoff_params() const {
    const auto& r = std::get<CutoffRule>(node_->rule);
    return {r.a, r.b};
  }

  enum class RuleKind { polynomial, translate, scale, restrict, extend, product, sum, cutoff, callback };
  RuleKind rule_kind() const {
    return static_cast<RuleKind>(node_->rule.index());
  }
  Curve inner() const {
    const Node& n = *node_;
    if (std::holds_alternative<TranslateRule>(n.rule)) return std::get<TranslateRule>(n.rule).inner;
    if (std::holds_alternative<ScaleRule>(n.rule)) return std::get<ScaleRule>(n.rule).inner;
    if (std::holds_alternative<RestrictRule>(n.rule)) return std::get<RestrictRule>(n.rule).inner;
    if (std::holds_alternative<ExtendRule>(n.rule)) return std::get<ExtendRule>(n.rule).inner;
    throw std::logic_error("Curve: rule has no single inner curve");
  }
  K scale_factor() const { return std::get<ScaleRule>(node_->rule).a; }
  K translate_shift() const { return std::get<TranslateRule>(node_->rule).t0; }
  const std::vector<Curve>& sum_parts() const { return std::get<SumRule>(node_->rule).parts; }
  std::pair<Curve, Curve> product_parts() const {
    const auto& r = std::get<ProductRule>(node_->rule);
    return {r.scalar, r.vec};
  }

 private:
  struct PolyRule {
    Coeffs coeffs;
  };
  struct TranslateRule {
    Curve inner;
    K t0;
  };
  struct ScaleRule {
    Curve inner;
    K a;
  };
  struct RestrictRule {
    Curve inner;
  };
  struct ExtendRule {
    Curve inner;
  };
  struct ProductRule {
    Curve scalar;
    Curve vec;
  };
  struct SumRule {
    std::vector<Curve> parts;
  };
  struct CutoffRule {
    double a, b;
  };
  struct CallbackRule {
    std::function<VectorT<K>(const K&)> fn;
    std::string tag;
  };

  struct Node {
    Domain<K> domain;
    int dim;
    K exemplar;
    std::variant<PolyRule, TranslateRule, ScaleRule, RestrictRule, ExtendRule, ProductRule,
                 SumRule, CutoffRule, CallbackRule>
        rule;
  };

  explicit Curve(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::optional<Coeffs> flatten(const Node& n) {
    if (std::holds_alternative<PolyRule>(n.rule)) return std::get<PolyRule>(n.rule).coeffs;
    if (std::holds_alternative<TranslateRule>(n.rule)) {
      const auto& r = std::get<TranslateRule>(n.rule);
      auto inner = r.inner.as_polynomial();
      if (!inner) return std::nullopt;
      Coeffs out;
      for (const auto& cs : *inner) out.push_back(shift_coeffs(cs, r.t0));
      return out;
    }
    if (std::holds_alternative<ScaleRule>(n.rule)) {
      const auto& r = std::get<ScaleRule>(n.rule);
      auto inner = r.inner.as_polynomial();
      if (!inner) return std::nullopt;
      Coeffs out;
      for (const auto& cs : *inner) {
        std::vector<K> scaled;
        K pw = zero_like(r.a) + scalar_from_rational(Rational(1), r.a);
        for (const auto& c : cs) {
          scaled.push_back(c * pw);
          pw = pw * r.a;
        }
        out.push_back(std::move(scaled));
      }
      return out;
    }
    if (std::holds_alternative<RestrictRule>(n.rule))
      return std::get<RestrictRule>(n.rule).inner.as_polynomial();
    if (std::holds_alternative<SumRule>(n.rule)) {
      const auto& parts = std::get<SumRule>(n.rule).parts;
      Coeffs acc;
      for (const auto& p : parts) {
        auto c = p.as_polynomial();
        if (!c) return std::nullopt;
        if (acc.empty()) {
          acc = *c;
          continue;
        }
        for (size_t i = 0; i < acc.size(); ++i) {
          auto& a = acc[i];
          const auto& b = (*c)[i];
          if (b.size() > a.size()) a.resize(b.size(), zero_like(a.front()));
          for (size_t m = 0; m < b.size(); ++m) a[m] = a[m] + b[m];
        }
      }
      return acc;
    }
    if (std::holds_alternative<ProductRule>(n.rule)) {
      const auto& r = std::get<ProductRule>(n.rule);
      auto f = r.scalar.as_polynomial();
      auto g = r.vec.as_polynomial();
      if (!f || !g) return std::nullopt;
      const auto& fc = (*f)[0];
      Coeffs out;
      for (const auto& gc : *g) {
        std::vector<K> conv(fc.size() + gc.size() - 1, zero_like(fc.front()));
        for (size_t i = 0; i < fc.size(); ++i)
          for (size_t j = 0; j < gc.size(); ++j) conv[i + j] = conv[i + j] + fc[i] * gc[j];
        out.push_back(std::move(conv));
      }
      return out;
    }
    return std::nullopt;
  }

  /// Coefficients of p(x + t0) from those of p.
  static std::vector<K> shift_coeffs(const std::vector<K>& cs, const K& t0) {
    // Horner-style synthetic shift
    std::vector<K> out(cs.size(), zero_like(t0));
    for (size_t m = cs.size(); m-- > 0;) {
      for (size_t j = out.size() - 1; j > 0; --j) out[j] = out[j] * t0 + out[j - 1];
      out[0] = out[0] * t0 + cs[m];
    }
    return out;
  }

  std::shared_ptr<const Node> node_;
};

using CurveQ = Curve<ExactScalar>;
using CurveR = Curve<double>;

}  // namespace curvelab
