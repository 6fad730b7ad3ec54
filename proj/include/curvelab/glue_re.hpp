#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvelab/glue_um.hpp"  // HypothesisProbe, Verdict, HypothesisReport

namespace curvelab {

/// Data of the real gluing construction: positive s_n with finite listed
/// prefix (zero tail), r_n >= s_n + 2/n^2, pieces on [-r_n, r_n]. Loading
/// normalizes r_n down to s_n + 2/n^2 (restriction only shrinks sup
/// gauges); the flag records whether anything was shrunk.
struct RealGlueSpec {
  std::vector<Rational> s;
  std::vector<Rational> r;
  std::vector<Curve<double>> pieces;
  Calibration calibration;
  HypothesisProbe probe;
  bool r_normalized = false;
};

/// Validates sizes and positivity, checks r_n >= s_n + 2/n^2 exactly, then
/// normalizes r_n to that value (restricting pieces when needed).
RealGlueSpec normalize_spec(RealGlueSpec spec);

/// The fixed smooth step g with g = 1 on ]-inf, 0], g = 0 on [1, inf[,
/// g(t) = phi(1-t) / (phi(1-t) + phi(t)) for phi(t) = exp(-1/t) on t > 0.
Curve<double> base_bump();

/// h(t) = g((t-a)/b) g((-t-a)/b): 1 on [-a,a], 0 outside [-(a+b), a+b].
Curve<double> cutoff(double a, double b);

/// M_n = sum_k C_k ||g^<k>||_inf ||g^<n-k>||_inf from sampled sups of the
/// base bump, reported raw and inflated by the safety factor. Downstream
/// inequalities that consume these values are empirical, not certified.
struct MnTable {
  std::vector<double> raw;
  std::vector<double> inflated;
  double safety = 1.5;
  std::vector<double> g_sups;  // sampled ||g^<k>||_inf
};

MnTable estimate_Mn(int n_max, const SamplerConfig& cfg, double safety = 1.5);

/// Sampled ||h^<n>||_inf <= M_n b^-n for h = cutoff(a, b), n <= n_max.
CheckOutcome check_cutoff_bound(double a, double b, const MnTable& mn, int n_max,
                                const SamplerConfig& cfg, Rng& rng);

/// Plateau h = 1 on [-a,a], support in [-(a+b), a+b], range in [0,1].
CheckOutcome check_cutoff_shape(double a, double b, int samples, Rng& rng);

/// Exact centers t_n = sum_{j<=n} (r_j + r_{j-1}), r_0 = 0.
std::vector<Rational> centers(const RealGlueSpec& spec);

/// The glued real curve: zeta_n(t) = h_n(t - t_n) gamma_n(t - t_n) with
/// h_n = cutoff(s_n, 1/n^2), each extended by zero; supports are pairwise
/// disjoint open intervals ]t_n - r_n, t_n + r_n[.
class GluedCurveRE {
 public:
  static GluedCurveRE build(RealGlueSpec spec);

  const RealGlueSpec& spec() const { return spec_; }
  int piece_count() const { return static_cast<int>(spec_.pieces.size()); }
  int dim() const { return dim_; }

  const std::vector<Rational>& t() const { return t_; }

  /// Local piece zeta_n on [-r_n, r_n] (1-based).
  const Curve<double>& zeta(int n) const { return zetas_[static_cast<size_t>(n - 1)]; }

  /// The piece whose open support interval contains x, if any.
  std::optional<int> locate(double x) const;

  VectorT<double> eval(double x) const;

  Curve<double> as_curve() const;

  /// t_{n+1} - t_n = r_{n+1} + r_n, exact rational arithmetic.
  CheckOutcome check_center_increments() const;

  /// Open support intervals pairwise disjoint (they touch at endpoints),
  /// exact rational arithmetic.
  CheckOutcome check_disjoint_supports() const;

  /// t_n increasing and below the closed-form tail bound
  /// 2 sum s_j + 4 sum 1/j^2 over the listed prefix.
  CheckOutcome check_center_bound() const;

  /// gamma(t_n + t) = gamma_n(t) for |t| <= s_n, within relative slack.
  CheckOutcome check_glue_identity(int samples, double rel_slack, Rng& rng) const;

  /// gamma = 0 outside every support, including beyond t_inf.
  CheckOutcome check_off_support_zero(int samples, Rng& rng) const;

 private:
  GluedCurveRE() = default;

  RealGlueSpec spec_;
  std::vector<Rational> t_;
  std::vector<Curve<double>> zetas_;
  std::vector<Curve<double>> etas_;
  int dim_ = 1;
};

/// ||eta^<k>||_{q_0,inf} <= max_j (2/r)^{k-j} ||zeta^<j>||_{q_{k-j},inf}
/// for a piece zeta on [a,b] vanishing outside the inner interval
/// [alpha,beta], r = min(alpha-a, b-beta); eta is the zero extension.
/// Sampled on both sides; the right side's sample sets contain every
/// sub-tuple of every left tuple that stays inside [a,b]. With
/// strong_variant set (strong calibrations only) the factor 2^{k-j} is
/// dropped.
CheckOutcome check_morkll(const Curve<double>& zeta, double alpha, double beta,
                          const Calibration& cal, int k_max, const SamplerConfig& cfg,
                          Rng& rng, double rel_slack, bool strong_variant = false);

/// Per-piece table row for the CSV export: center, radii, sampled sups of
/// gamma_n^<k> and the cut-off product bounds for zeta_n^<k>.
struct PieceTableRow {
  int n = 0;
  Rational t_n;
  Rational s_n;
  Rational r_n;
  std::vector<double> gamma_sups;  // k = 0..k_max
  std::vector<double> zeta_bounds;
};

/// Rows (n, t_n, s_n, r_n, sampled sups, bounds) for every piece; the bound
/// column is sum_i C_i M_i n^(2i) sup(gamma_n^<k-i>), the product estimate
/// for the cut-off piece.
std::vector<PieceTableRow> piece_table(const GluedCurveRE& glued, int k_max,
                                       const SamplerConfig& cfg, Rng& rng);

std::string piece_table_csv(const std::vector<PieceTableRow>& rows);

/// Finite-prefix probe of n^l ||gamma_n^<k>||_{q_{n+m},inf} -> 0 over the
/// probe grid. Verdicts are prefix statements only.
HypothesisReport check_hypothesis_real(const RealGlueSpec& spec, const SamplerConfig& cfg,
                                       Rng& rng);

}  // namespace curvelab
