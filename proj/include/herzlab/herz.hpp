#pragma once

#include <string>
#include <vector>

#include "herzlab/exponents_weights.hpp"
#include "herzlab/grid.hpp"
#include "herzlab/lebesgue.hpp"

#include "json.hpp"

namespace herzlab {

/// Log-spaced evaluation grid for the outer scale parameter delta.
struct DeltaGrid {
  double log2_min = -24.0;
  double log2_max = 24.0;
  int points = 97;

  std::vector<double> values() const;
};

/// Parameters of the weighted grand shell-decomposition norm
///   sup_{delta} sup_{k0} 2^{-k0 lambda} ( delta^theta
///       sum_{k <= k0} ||2^{k alpha(.)} f chi_k||^{p(1+delta)} )^{1/(p(1+delta))}
/// with shells truncated to the grid's [k_min, k_max] range.
struct HerzParams {
  ExponentFunction alpha;  // shell smoothness exponent alpha(.)
  double p = 2.0;          // outer integrability, > 1
  ExponentFunction q;      // inner variable exponent
  Weight w;                // norm weight
  double lambda = 0.0;     // Morrey scaling, >= 0
  double theta = 1.0;      // grand aggregation exponent, > 0
  DeltaGrid delta_grid;
  int k0_min = 0;          // evaluation range for the outer index
  int k0_max = 0;

  void validate(const GridSpec& spec) const;  // throws std::invalid_argument
};

/// Convenience constructor: defaults the k0 range to the grid shell range.
HerzParams make_herz_params(const GridSpec& spec, ExponentFunction alpha,
                            double p, ExponentFunction q, Weight w,
                            double lambda = 0.0, double theta = 1.0);

/// Weighted shell norms s_k = ||2^{k alpha(.)} f chi_{D_k}||_{q(.),w}, indexed
/// k_min..k_max.  When `apply_alpha` is false the plain norms ||f chi_k|| are
/// returned (used by the split form, which moves the factor outside).
std::vector<double> shell_norms(const SampledFunction& f, const HerzParams& params,
                                bool apply_alpha = true);

/// Where and how the sup was attained, with the per-shell data.
struct HerzNormBreakdown {
  double value = 0.0;
  double argmax_delta = 0.0;
  int argmax_k0 = 0;
  std::vector<double> shell_values;  // alpha-weighted shell norms, k_min..k_max
  int k_min = 0;
};

/// Direct evaluation of the norm display above.  The sup over delta and k0 is
/// a max over the finite delta grid and the k0 range (ties resolved toward
/// the smallest delta, then the smallest k0).  The inner sum is accumulated
/// in log space with a running max shift, so exponents p(1+delta) of order
/// 1e7 are handled exactly as written.
HerzNormBreakdown grand_herz_morrey_norm(const SampledFunction& f, const HerzParams& params);

/// The two-branch split form: the origin branch keeps k0 <= 0 with constant
/// factor 2^{k alpha(0)}, the far branch keeps k0 > 0 and splits its sum at
/// k = 0 using alpha(0) below and alpha(infinity) above.  Shares the delta
/// grid with the direct form.
struct SplitBreakdown {
  double value = 0.0;         // max of the two branches
  double origin_branch = 0.0;
  double infinity_branch = 0.0;
  double argmax_delta = 0.0;
  int argmax_k0 = 0;
};

SplitBreakdown split_norm(const SampledFunction& f, const HerzParams& params);

/// Flat JSON record (scalar fields plus shell_norm_<k> keys).
nlohmann::json breakdown_to_json(const HerzNormBreakdown& b, const SplitBreakdown& s);

}  // namespace herzlab
