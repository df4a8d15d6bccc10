#pragma once

#include <string>
#include <vector>

#include "herzlab/fft.hpp"
#include "herzlab/grid.hpp"

#include "json.hpp"

namespace herzlab {

enum class BankKind { resolution_of_unity, admissible_pair, admissible_dual, kernel_family };

/// A family of radial spectral filters stored per level on the full frequency
/// lattice.  Level 0 is the low-pass member; level j >= 1 samples the dilated
/// band profile at 2^{-j} xi.  j_max = floor(log2(pi/h)) - 1, the largest
/// level whose band [2^{j-1}, 2^{j+1}] fits under Nyquist; identities are
/// asserted on the resolved band |xi| <= 2^{j_max}.
struct FilterBank {
  BankKind kind = BankKind::resolution_of_unity;
  GridSpec spec;
  int j_max = 0;
  std::vector<std::vector<double>> level_profiles;  // [level][lattice bin]

  // metadata
  std::string profile_name;
  double epsilon = 0.0;            // kernel families: spectral scale
  int vanishing_moments = -1;      // kernel families: moment order achieved
  double lower_bound_constant = 0.0;  // admissible pairs / duals: plateau floor
  double resolved_band() const;    // 2^j_max
  int levels() const { return static_cast<int>(level_profiles.size()); }
};

int bank_level_cap(const GridSpec& spec);  // floor(log2(pi/h)) - 1

/// Smooth dyadic resolution of unity: level 0 equals a radial bump that is 1
/// on |xi| <= lo*2^0? (see b below), levels telescope so that
/// sum_{j<=J} profile_j = b(2^{-J}|xi|) = 1 on the resolved band exactly.
/// The transition of the generating bump runs on [lo, hi] (defaults [1, 2]);
/// passing a different window yields a genuinely different resolution.
FilterBank build_resolution_of_unity(const GridSpec& spec, double lo = 1.0, double hi = 2.0);

/// Admissible band/low-pass pair with plateau profiles: the band member is
/// supported in [1/2, 2] and equals 1 on [3/5, 5/3]; the low-pass member is
/// supported in |xi| <= 2 and equals 1 on |xi| <= 5/3 (floor constant 1).
FilterBank build_admissible_pair(const GridSpec& spec);

/// Dual family for the reproducing identity: with G = sum_j A_j^2 (bounded
/// below on the resolved band), level j of the dual is A_j / G, so
/// sum_j conj(A_j) . dual_j = 1 holds exactly wherever G is positive.
/// Throws std::domain_error when G degenerates inside the band.
FilterBank build_admissible_dual(const FilterBank& pair);

/// Convolution against one level: out = IFFT(profile_j .* FFT(f)).
SampledFunction filter_convolve(const SampledFunction& f, const FilterBank& bank, int level);

/// Evaluates the reproducing sum  sum_j (conj A_j * dual_j * f)  level by
/// level through both filters (no multiplier collapsing).
SampledFunction calderon_reconstruct(const SampledFunction& f, const FilterBank& pair,
                                     const FilterBank& dual);

struct ReconstructionReport {
  double rel_l2_error = 0.0;  // ||recon - f||_2 / ||f||_2
  double spillover = 0.0;     // fraction of spectral energy outside the band
};

ReconstructionReport calderon_check(const SampledFunction& f, const FilterBank& pair,
                                    const FilterBank& dual);

/// Same identity through sampled coefficients: level k is sampled on the
/// dyadic sublattice of spacing 2^{-k} (offset by the half-cell shift of the
/// grid) and resynthesized through the dual filter.  Exact for band-limited
/// inputs; the report carries the residual.
ReconstructionReport calderon_check_sampled(const SampledFunction& f, const FilterBank& pair,
                                            const FilterBank& dual);

/// Scale-weighted sup over lattice points,
///   out(x) = sup_y |u(y)| (1 + |x-y|/t)^{-a},
/// computed exactly over the grid by pruned descent of a range-max tree.
std::vector<double> weighted_sup(const GridSpec& spec, const std::vector<double>& amplitudes,
                                 double t, double a);

/// Peetre-type maximal function of the level-j piece: scale t = 2^{-j}
/// (t = 1 at level 0), weight (1 + 2^j |x-y|)^{-a}.
SampledFunction peetre_maximal(const SampledFunction& f, const FilterBank& bank, int level,
                               double a);

/// Majorization check for smoothing a level-j piece through a level-jp
/// filter: with u = (level j) * f, R = 2^{jp}, N = 2^j, compares
/// |(level jp) * u| against max(1, (N/R)^m) (eta_{N,m} * |u|^r)^{1/r},
/// eta_{N,m} = N^n (1 + N|x|)^{-m}.  Returns the worst pointwise ratio over
/// all levels jp.
struct EtaMajorizationReport {
  double max_ratio = 0.0;
  int level_j = 0;
  int worst_level_jp = 0;
  double worst_x = 0.0;
};

EtaMajorizationReport eta_majorization_check(const SampledFunction& f, const FilterBank& bank,
                                             int j, double r, double m);

/// Spectral kernel family with positivity on the calibration annulus and
/// S + 1 vanishing moments: level 0 has transfer exp(-(|xi|/eps)^2) (positive
/// on every ball), levels j >= 1 dilate T(rho) = (rho/eps)^{2 m0}
/// exp(1 - (rho/eps)^2) with m0 = ceil((S+1)/2), which vanishes to order
/// 2 m0 >= S + 1 at 0.  Throws when eps pushes the top level past Nyquist.
FilterBank build_kernel_family(const GridSpec& spec, double eps = 0.5, int moments = 1);

/// Transfer profile of the band kernel at a continuous scale t in (0, 1]:
/// T(t |xi|).
std::vector<double> kernel_transfer_at_scale(const FilterBank& family, double t);

/// k_t * f via the continuous-scale transfer above.
SampledFunction kernel_convolve_scale(const SampledFunction& f, const FilterBank& family,
                                      double t);

/// Peetre-type maximal of k_t * f, weight (1 + |x-y|/t)^{-a}.
SampledFunction kernel_peetre(const SampledFunction& f, const FilterBank& family, double t,
                              double a);

/// Peetre-type maximal of the low-pass piece k_0 * f at scale 1.
SampledFunction kernel_peetre_base(const SampledFunction& f, const FilterBank& family, double a);

/// Spatial samples of one level's kernel (inverse transform / h^n), used by
/// the moment quadrature oracle.
std::vector<std::complex<double>> kernel_space_samples(const FilterBank& family, int level);

/// Unit-mass Gaussian mollifier at dilation N: transfer exp(-|xi|^2/(4 N^2)).
SampledFunction mollify(const SampledFunction& f, double n_dilation);

nlohmann::json bank_to_json(const FilterBank& bank);
FilterBank bank_from_json(const nlohmann::json& j);

}  // namespace herzlab
