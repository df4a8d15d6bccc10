#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "herzlab/grid.hpp"

namespace herzlab {

/// A variable exponent sampled at cell centers, together with its essential
/// bounds and its limiting values at the origin and at infinity.  The same
/// type carries smoothness exponents alpha(.) for shell weights; class
/// membership checks are only meaningful for integrability exponents.
struct ExponentFunction {
  GridSpec spec;
  std::vector<double> values;
  double q_minus = 0.0;
  double q_plus = 0.0;
  double value_at_origin = 0.0;
  double value_at_infinity = 0.0;
  /// true when value_at_infinity was not supplied analytically and had to be
  /// estimated as the mean over the outermost shell.
  bool infinity_estimated = false;

  bool in_class_p() const { return q_minus > 1.0 && std::isfinite(q_plus); }
  bool in_class_p0() const { return q_minus > 0.0 && std::isfinite(q_plus); }
};

/// Builds an exponent from an analytic evaluator.  When at_origin/at_infinity
/// are not given they are estimated from samples (innermost cells / mean over
/// the outermost shell) and flagged.
ExponentFunction exponent_from_callable(const GridSpec& spec,
                                        const std::function<double(double, double)>& eval,
                                        std::optional<double> at_origin = std::nullopt,
                                        std::optional<double> at_infinity = std::nullopt);

/// Named presets: "const:p", "log-perturbed:a0,a_inf,c" where the perturbed
/// profile is a(x) = a_inf + (a0 - a_inf)/log(e + c|x|).
ExponentFunction exponent_preset(const GridSpec& spec, const std::string& preset);

/// Pointwise conjugate q' = q/(q-1).  Throws std::domain_error unless
/// q_minus > 1.
ExponentFunction conjugate_exponent(const ExponentFunction& q);

/// A nonnegative weight on the grid.  `power` records gamma for |x|^gamma
/// presets so closed-form cross-checks can recognize them.
struct Weight {
  GridSpec spec;
  std::vector<double> values;
  std::optional<double> power;
};

Weight weight_from_callable(const GridSpec& spec,
                            const std::function<double(double, double)>& eval);
/// Presets: "const:c", "power:gamma" (w = |x|^gamma).
Weight weight_preset(const GridSpec& spec, const std::string& preset);
/// Pointwise 1/w; zero cells map to +inf and are rejected by norm evaluation.
Weight inverse_weight(const Weight& w);
/// Pointwise w^e with a constant exponent e.
Weight pow_weight(const Weight& w, double e);
/// Pointwise w(x)^(1/q(x)) (variable exponent).
Weight pow_weight(const Weight& w, const ExponentFunction& inv_q);

/// Worst observed continuity constants sup |a(x)-a(y)| log(e + 1/|x-y|) (local,
/// pair distance < 1/2), and the matching decay constants at the origin and at
/// infinity.  Diagnostics only; nothing downstream gates on them.
struct LogHolderDiagnostics {
  double c_local = 0.0;
  double c_origin = 0.0;
  double c_infinity = 0.0;
  double a_origin_used = 0.0;
  double a_infinity_used = 0.0;
  bool infinity_estimated = false;
};

LogHolderDiagnostics log_holder_diagnostics(const ExponentFunction& a);

/// One ball of the evaluation family: cells are kept as contiguous flat-index
/// ranges (one per grid row) so restricted norms run without indirection.
struct BallSpec {
  double center_x = 0.0;
  double center_y = 0.0;
  double radius = 0.0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges;  // [begin,end)
  std::size_t cell_count = 0;
  bool covers_grid = false;
};

/// Default family: centers on every `center_stride`-th grid point per axis
/// plus the origin; radii 2^j h for j = 2 .. K + 7 - log2 h.  Balls that
/// cover the whole grid are emitted once (they are center-independent).
std::vector<BallSpec> make_ball_family(const GridSpec& spec, int center_stride = 64);

/// Ball around an arbitrary center (cells whose centers lie within radius).
BallSpec make_ball(const GridSpec& spec, double cx, double cy, double radius);

/// Result of scanning the Muckenhoupt-type quantity
///   (1/|B|) ||w chi_B||_{q(.)} ||w^{-1} chi_B||_{q'(.)}
/// over a ball family, together with the variant that splits the weight as
/// w^{1/q(.)} / w^{-1/q(.)}.  |B| is the grid measure of the ball (cell
/// count times h^n) so the constant-weight case is exact by construction.
struct MuckenhouptReport {
  double constant = 0.0;        // sup over the family, plain variant
  double tilde_constant = 0.0;  // sup over the family, exponent-split variant
  double witness_center = 0.0;  // 1-D center (x) of the argmax ball
  double witness_radius = 0.0;
  /// (radius, quantity) along origin-centered balls, ascending radius.
  std::vector<std::pair<double, double>> origin_trace;
  /// Set when the quantity blows up on small origin balls or exceeds the
  /// finiteness threshold anywhere on the family.
  bool divergence_detected = false;
  double divergence_threshold = 1.0e3;
};

MuckenhouptReport muckenhoupt_constant(const Weight& w, const ExponentFunction& q,
                                       const std::vector<BallSpec>& family);

/// Decay exponents delta1/delta2 fitted from norm ratios of nested indicator
/// pairs S = B(c, 2^-m R) inside B(c, R):  ||chi_S||/||chi_B|| vs |S|/|B| in
/// log-log.  Pairs come from origin-centered chains (the population the
/// nested-shell estimates consume); off-origin chains can be mixed in via
/// center_stride > 0 for diagnostics.  Primary estimate is the least-squares
/// slope; if the fitted prefactor exceeds 10 the slope is lowered to the
/// largest value feasible with prefactor 10.  delta1 uses (q, w), delta2
/// uses (q', w^{-1}).
struct DeltaFit {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double residual1 = 0.0;  // rms log-log residual
  double residual2 = 0.0;
  double prefactor1 = 0.0;
  double prefactor2 = 0.0;
  bool degenerate1 = false;  // flat/invalid fit; delta clamped to 1
  bool degenerate2 = false;
  int pairs_used = 0;
};

DeltaFit estimate_delta_exponents(const Weight& w, const ExponentFunction& q,
                                  int center_stride = 0);

/// Convenience bundle assembled from the two scans above.
struct WeightClassReport {
  double constant = 0.0;
  double tilde_constant = 0.0;
  double witness_center = 0.0;
  double witness_radius = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double fit_residual = 0.0;
  bool divergence_detected = false;
  bool degenerate_fit = false;
};

WeightClassReport classify_weight(const Weight& w, const ExponentFunction& q);

}  // namespace herzlab
