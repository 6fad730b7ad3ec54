#pragma once

#include <map>
#include <string>
#include <vector>

#include "curvelab/diffquot.hpp"
#include "curvelab/outcome.hpp"

namespace curvelab {

/// Index pair (i, j) of a product-expansion term: strictly increasing lists
/// with entries in {0..n}. Sizes satisfy #i + #j = n with #(i_0..i_k) := k.
struct IndexPair {
  std::vector<int> i;
  std::vector<int> j;

  friend bool operator<(const IndexPair& a, const IndexPair& b) {
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
  friend bool operator==(const IndexPair& a, const IndexPair& b) {
    return a.i == b.i && a.j == b.j;
  }
};

/// (beta(gamma,eta))^<n> = sum N_{i,j} beta(gamma^<k>(x_i...), eta^<l>(x_j...)).
/// Terms are kept in canonical (map) order, so expansion is deterministic.
struct LeibnizFormula {
  int order = 0;
  std::map<IndexPair, long> terms;

  long coefficient_sum() const {
    long s = 0;
    for (const auto& [ip, c] : terms) s += c;
    return s;
  }

  std::string to_text() const;
};

/// Per-order constants C_k = sum of N_{i,j} over #i = k, #j = n-k.
struct ProductConstants {
  int order = 0;
  std::vector<long> C;  // C[0..order]

  long sum() const {
    long s = 0;
    for (long c : C) s += c;
    return s;
  }
};

/// Builds the order-n product expansion by iterating the inductive case
/// analysis from the two-term n = 1 base. New indices are appended (they
/// exceed all existing entries, so lists stay strictly increasing) and like
/// terms are merged by adding coefficients.
LeibnizFormula expand(int n);

/// C_k sums for a formula; the total is asserted against 2^n.
ProductConstants constants(const LeibnizFormula& f);

namespace detail {

template <class K>
std::vector<K> select(const std::vector<K>& points, const std::vector<int>& idx) {
  std::vector<K> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(points[static_cast<size_t>(i)]);
  return out;
}

}  // namespace detail

/// Evaluates the expansion's right side with beta = scalar multiplication
/// and compares it with the direct difference quotient of the pointwise
/// product. Exact over exact scalars; doubles compare with relative slack.
/// When permute_args is set, each term's argument tuples are additionally
/// fed in a rotated order as a cross-check of the symmetry normalization.
template <class K>
CheckOutcome verify_numeric(const LeibnizFormula& f, const Curve<K>& gamma,
                            const Curve<K>& eta, const std::vector<K>& points,
                            double rel_slack = 0.0, bool permute_args = false) {
  CheckOutcome out;
  if (gamma.dim() != 1)
    throw std::invalid_argument("verify_numeric: first factor must be scalar-valued");
  if (points.size() != static_cast<size_t>(f.order) + 1)
    throw std::invalid_argument("verify_numeric: need n+1 points");

  DiffQuotSession<K> sg(gamma);
  DiffQuotSession<K> se(eta);

  VectorT<K> rhs = VectorT<K>::zero(eta.dim(), eta.exemplar());
  for (const auto& [ip, coeff] : f.terms) {
    auto gi = detail::select(points, ip.i);
    auto ej = detail::select(points, ip.j);
    if (permute_args && gi.size() > 1) std::rotate(gi.begin(), gi.begin() + 1, gi.end());
    if (permute_args && ej.size() > 1) std::rotate(ej.begin(), ej.begin() + 1, ej.end());
    K g = sg.diff_quot(static_cast<int>(gi.size()) - 1, gi).coords[0];
    VectorT<K> e = se.diff_quot(static_cast<int>(ej.size()) - 1, ej);
    K weighted = scalar_from_rational(Rational(coeff), g) * g;
    rhs = rhs + weighted * e;
  }

  Curve<K> prod = Curve<K>::product(gamma, eta);
  VectorT<K> lhs = diff_quot(prod, f.order, points);

  ++out.checked;
  bool ok = true;
  if (rel_slack == 0.0) {
    ok = (lhs == rhs);
  } else {
    for (int c = 0; c < lhs.dim(); ++c) {
      double a = scalar_to_double(lhs.coords[static_cast<size_t>(c)]);
      double b = scalar_to_double(rhs.coords[static_cast<size_t>(c)]);
      if (std::fabs(a - b) > rel_slack * std::max({std::fabs(a), std::fabs(b), 1.0})) ok = false;
    }
  }
  if (!ok)
    out.add_violation("product rule mismatch: lhs=" + lhs.to_string() +
                      " rhs=" + rhs.to_string());
  return out;
}

/// ||(gamma.eta)^<n>||_{q_0,inf} <= sum_k C_k ||gamma^<k>||_inf ||eta^<n-k>||_{q_n,inf}.
/// The left side is a sampled lower estimate on lhs_tuples. The right side
/// uses certified bounds where available; otherwise sampled sups over
/// rhs point sets that are closed under taking sub-tuples of every left
/// tuple, which makes the sampled inequality a true consequence of the
/// expansion rather than a sampling artifact.
template <class K>
CheckOutcome product_estimate_check(const Curve<K>& gamma, const Curve<K>& eta, int n,
                                    const Calibration& cal,
                                    const std::vector<std::vector<K>>& lhs_tuples,
                                    double rel_slack) {
  if (gamma.dim() != 1)
    throw std::invalid_argument("product_estimate_check: first factor must be scalar-valued");
  CheckOutcome out;
  ProductConstants cs = constants(expand(n));

  // sub-tuple closure of the left sample set, per order
  std::vector<std::vector<std::vector<K>>> sub_tuples(static_cast<size_t>(n) + 1);
  for (const auto& t : lhs_tuples) {
    for (long mask = 1; mask < (1L << t.size()); ++mask) {
      std::vector<K> sub;
      for (size_t b = 0; b < t.size(); ++b)
        if (mask & (1L << b)) sub.push_back(t[b]);
      size_t k = sub.size() - 1;
      if (k <= static_cast<size_t>(n)) sub_tuples[k].push_back(std::move(sub));
    }
  }

  Gauge q0 = cal.at(0);
  Gauge qn = cal.at(n);
  Gauge abs = Gauge::abs_on_K();

  Magnitude rhs = Magnitude::zero();
  for (int k = 0; k <= n; ++k) {
    auto g_est = sup_gauge(gamma, k, abs, sub_tuples[static_cast<size_t>(k)]);
    auto e_est = sup_gauge(eta, n - k, qn, sub_tuples[static_cast<size_t>(n - k)]);
    Magnitude g_sup = g_est.upper ? *g_est.upper : g_est.lower;
    Magnitude e_sup = e_est.upper ? *e_est.upper : e_est.lower;
    rhs = rhs + Magnitude::exact(Rational(cs.C[static_cast<size_t>(k)])) * g_sup * e_sup;
  }

  Curve<K> prod = Curve<K>::product(gamma, eta);
  auto lhs_est = sup_gauge(prod, n, q0, lhs_tuples);
  out.checked = lhs_est.sample_count;
  if (!lhs_est.lower.leq_with_slack(rhs, rel_slack))
    out.add_violation("||(gamma.eta)^<n>|| sampled " + lhs_est.lower.to_string() +
                      " exceeds bound " + rhs.to_string());
  return out;
}

}  // namespace curvelab
