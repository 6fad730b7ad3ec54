#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvelab/diffquot.hpp"
#include "curvelab/sampler.hpp"

namespace curvelab {

/// Finite probe grid for the smallness hypotheses of the gluing theorems:
/// geometric weights a^n (ultrametric case), polynomial weights n^l (real
/// case), gauge index offsets m, and the threshold constant C.
struct HypothesisProbe {
  std::vector<Rational> a_values;
  int k_max = 3;
  int m_max = 2;
  int l_max = 3;
  Rational C = Rational(1);
};

/// Data of an ultrametric gluing construction at desk scale: finitely many
/// pieces, zero tail. Piece n (1-based) lives on the ball of radius
/// |rho|^n about 0.
struct UltrametricGlueSpec {
  FieldContext context;
  ExactScalar rho;
  std::vector<Curve<ExactScalar>> pieces;
  Calibration calibration;
  HypothesisProbe probe;
};

enum class Verdict { pass, fail, inconclusive };

std::string verdict_name(Verdict v);

/// Outcome of the hypothesis checks for one spec: the threshold criterion
/// ||gamma_n^<k>||_{p_2n,inf} <= C n^-n decided through certified upper /
/// sampled lower brackets, plus finite-prefix decay probes of the
/// geometric-weight condition.
struct HypothesisReport {
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> records;      // one line per (n, k) decision
  std::vector<std::string> probe_lines;  // one line per (a, k, m) decay probe
  Verdict probe_verdict = Verdict::inconclusive;
};

/// The glued curve gamma = sum eta_n with
/// eta_n(t) = gamma_n(t - rho^{n-1}) on the ball of radius |rho|^n about
/// rho^{n-1} and 0 elsewhere. Supports are pairwise disjoint, so evaluation
/// is exact and locally a single piece.
class GluedCurveUM {
 public:
  static GluedCurveUM build(UltrametricGlueSpec spec);

  const UltrametricGlueSpec& spec() const { return spec_; }
  int dim() const { return dim_; }
  int piece_count() const { return static_cast<int>(spec_.pieces.size()); }

  /// Center rho^{n-1} and radius |rho|^n of piece n's support ball.
  const ExactScalar& center(int n) const { return centers_[static_cast<size_t>(n - 1)]; }
  const Magnitude& radius(int n) const { return radii_[static_cast<size_t>(n - 1)]; }

  /// eta_n as a curve on all of K.
  const Curve<ExactScalar>& eta(int n) const { return etas_[static_cast<size_t>(n - 1)]; }

  /// The unique piece index n with |x - rho^{n-1}| <= |rho|^n, if any.
  /// Shortlists n through |x| (every point of ball n has |x| = |rho|^{n-1}),
  /// then confirms with the exact ball test.
  std::optional<int> locate(const ExactScalar& x) const;

  /// gamma(x): the located piece's value, else 0. Exact.
  VectorT<ExactScalar> eval(const ExactScalar& x) const;

  /// The glued map as a curve on the whole field, usable by the
  /// difference-quotient engine.
  Curve<ExactScalar> as_curve() const;

  /// Exact pairwise disjointness of the support balls, witnessed through
  /// |rho^{m-1} - rho^{n-1}| > max radius.
  CheckOutcome check_disjoint_supports() const;

  /// gamma(rho^{n-1} + t) = gamma_n(t) at sampled t, exact.
  CheckOutcome check_defining_identity(int samples_per_piece, const SamplerConfig& cfg,
                                       Rng& rng) const;

  /// gamma(x) = 0 at sampled points outside every support ball, exact.
  CheckOutcome check_off_support_zero(int count, const SamplerConfig& cfg, Rng& rng) const;

 private:
  GluedCurveUM() = default;

  UltrametricGlueSpec spec_;
  std::vector<ExactScalar> centers_;
  std::vector<Magnitude> radii_;
  std::vector<Curve<ExactScalar>> etas_;
  int dim_ = 1;
};

/// Extension by zero with the gluing lemma's precondition (closed ball
/// about 0) made explicit.
Curve<ExactScalar> extend_by_zero(const Curve<ExactScalar>& c);

/// ||eta^<k>||_{q_0,inf} <= max_j (2/r)^{k-j} ||gamma^<j>||_{q_{k-j},inf}
/// for eta the extension by zero of a polynomial piece on a ball of radius
/// r. Left side sampled over mixed inside/outside tuples, right side built
/// from certified bounds; comparisons exact. With strong_variant set (only
/// valid for a strong calibration) the factor 2^{k-j} is dropped and the
/// sharper bound max_j (1/r)^{k-j} ||gamma^<j>||_{q_{k-j},inf} is checked.
CheckOutcome check_resestim(const Curve<ExactScalar>& c, int k_max, const Calibration& cal,
                            const SamplerConfig& cfg, Rng& rng,
                            int tuples_per_order = 120, bool strong_variant = false);

/// Threshold criterion over the piece list plus decay probes; see
/// HypothesisReport. Accept decisions use certified upper bounds, reject
/// decisions use sampled lower bounds, anything in between is inconclusive.
HypothesisReport check_hypothesis(const UltrametricGlueSpec& spec, const SamplerConfig& cfg,
                                  Rng& rng);

}  // namespace curvelab
