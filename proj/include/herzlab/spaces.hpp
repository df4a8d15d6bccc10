#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "herzlab/grid.hpp"
#include "herzlab/herz.hpp"
#include "herzlab/littlewood_paley.hpp"
#include "herzlab/operators.hpp"

namespace herzlab {

/// Parameters of the Peetre-type maximal comparisons.
struct PeetreParams {
  double a = 4.0;               // spatial decay exponent of the sup weight
  double t_integrability = 0.5; // inner exponent for the maximal sandwich
  double m = 2.0;               // eta-kernel decay order, > dimension
};

/// Scale-decomposition space parameters: smoothness s, inner aggregation
/// beta in (0, inf], the outer shell-norm parameters, and the resolution of
/// the continuous-scale quadrature (points per octave on the t-grid).
struct TLParams {
  HerzParams herz;
  double s = 0.0;
  double beta = 2.0;
  int t_per_octave = 4;
};

/// Norm through a dyadic resolution of unity:
///   || ( sum_j 2^{j s beta} |phi_j * f|^beta )^{1/beta} ||_Herz
/// (max over levels when beta = inf).
double tl_norm(const SampledFunction& f, const FilterBank& resolution, const TLParams& params);

/// Same display through an admissible band/low-pass pair.
double tl_norm_admissible(const SampledFunction& f, const FilterBank& pair,
                          const TLParams& params);

struct FlaggedValue {
  double value = 0.0;
  bool hypothesis_ok = true;  // a * t_integrability > dimension
};

/// Same display with Peetre-type maximal functions in place of the
/// convolutions.  The value is always computed; the flag records whether the
/// equivalence hypothesis a*t > n held.
FlaggedValue tl_norm_peetre(const SampledFunction& f, const FilterBank& bank,
                            const TLParams& params, const PeetreParams& peetre);

/// The five kernel-family norms evaluated side by side on one function:
///   n1  low-pass term + continuous-scale integral of |k_t * f|
///   n2  low-pass Peetre term + continuous-scale integral of the Peetre sup
///   n3  low-pass term + local means over |z| < t (measure dz dt / t^{n+1})
///   n4  discrete levels of the Peetre sup
///   n5  discrete levels of |k_j * f|
/// The t-integrals run over the dyadic-refined grid t = 2^{-j - i/tpo} with
/// trapezoid weights in log t.
struct NormComparison {
  std::map<std::string, double> values;  // keys n1..n5
  double pairwise_ratio(const std::string& a, const std::string& b) const;
  double max_spread() const;  // worst pairwise max/min
  /// Largest violation of the pointwise orderings that back the comparison
  /// (n4 >= n5 and n2 >= n1 integrands); exact zero up to roundoff.
  double ordering_violation = 0.0;
  bool quadrature_ok = true;  // t-grid had >= 4 points per octave
};

NormComparison kernel_norms(const SampledFunction& f, const FilterBank& kernel_family,
                            const TLParams& params, const PeetreParams& peetre);

/// Exact area of the intersection of the open disk |z - c| < r with the
/// axis-aligned box [x0, x1] x [y0, y1]; the fractional-overlap weight used
/// by the two-dimensional local means.
double disk_box_overlap(double r, double cx, double cy, double x0, double x1, double y0,
                        double y1);

/// One corpus member's contribution to an equivalence experiment.
struct EquivalenceRow {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool skipped = false;  // both sides vanished
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  double spread = 0.0;  // max/min over non-skipped rows
  int skipped = 0;
};

using NormFunctional = std::function<double(const SampledFunction&)>;

/// Evaluates two norm functionals across a corpus and reports the empirical
/// equivalence constants.  Members where both sides vanish are skipped and
/// counted.
EquivalenceReport equivalence_experiment(const std::vector<SampledFunction>& corpus,
                                         const NormFunctional& lhs, const NormFunctional& rhs);

}  // namespace herzlab
