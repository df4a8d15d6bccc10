#pragma once

#include <utility>
#include <vector>

#include "herzlab/grid.hpp"
#include "herzlab/herz.hpp"

namespace herzlab {

/// Exact integral of the cellwise-constant extension of a real array over
/// arbitrary intervals (1-D) or axis-aligned rectangles (2-D), including
/// fractional end cells.  Outside the domain the function is zero.
class PrefixIntegral {
 public:
  PrefixIntegral(const GridSpec& spec, const std::vector<double>& values);

  double integral(double a, double b) const;                      // 1-D
  double integral(double ax, double bx, double ay, double by) const;  // 2-D

 private:
  GridSpec spec_;
  std::vector<double> values_;
  std::vector<double> prefix_;       // 1-D cumulative (cells)
  std::vector<double> sat_;          // 2-D summed-area table, (N+1)^2
  double axis_integral_bound(double t, int axis_cells) const;
};

/// Uncentered window family: each (u, v) pair averages over [x-u, x+v] per
/// axis.  The canonical family is dyadic offsets {0, h, 2h, 4h, ...} capped
/// at the domain width, plus the single-cell window (h/2, h/2) so that the
/// maximal average always dominates |f| itself.  Families must be closed
/// under swapping u and v and contain no (0, 0) window.
struct WindowFamily {
  std::vector<std::pair<double, double>> offsets;

  static WindowFamily dyadic(const GridSpec& spec);
  void validate() const;  // throws std::invalid_argument
};

/// Uncentered dyadic-window maximal average of |f|.
SampledFunction maximal(const SampledFunction& f, const WindowFamily& family);

/// Power variant M_t f = (M(|f|^t))^{1/t}, t > 0.
SampledFunction maximal_t(const SampledFunction& f, const WindowFamily& family, double t);

/// Maximal average at one point for an explicit window (test oracle).
double maximal_at(const SampledFunction& f, const WindowFamily& family, double x, double y = 0.0);

enum class SizeKernel {
  riesz_truncated,  // (x-y)/|x-y|^{n+1} outside |x-y| <= eps (first component in 2-D)
  kernel_power,     // |x-y|^{-n} outside |x-y| <= eps
};

/// Singular-type convolution with the principal-value core removed below
/// eps = 2h (the grid cannot resolve it; two cells are excluded).  Evaluated
/// as an exact linear convolution via zero-padded FFT.
SampledFunction size_condition_operator(const SampledFunction& f, SizeKernel kind,
                                        double eps = -1.0);

/// Direct quadrature sum of the same operator at an arbitrary point; used as
/// an oracle and for symmetry checks at points off the lattice.
double size_condition_at(const SampledFunction& f, SizeKernel kind, double x,
                         double y = 0.0, double eps = -1.0);

/// A finite family {f_j} with an inner aggregation exponent r.
struct VectorFunction {
  std::vector<SampledFunction> members;
  double r = 2.0;
};

/// Pointwise (sum_j |f_j|^r)^{1/r}.  Throws std::invalid_argument for r <= 1
/// (the aggregation used by the operator experiments requires r > 1);
/// `pointwise_ell_norm` below is the unrestricted engine.
SampledFunction vector_ell_r(const VectorFunction& vf);

/// Unrestricted pointwise l^beta aggregation, beta in (0, inf]; beta = inf
/// takes the pointwise max.  Weights (one scalar per member) are optional.
SampledFunction pointwise_ell_norm(const std::vector<SampledFunction>& members, double beta,
                                   const std::vector<double>& scales = {});

/// Applies the maximal operator memberwise and aggregates:
/// (sum_j (M f_j)^r)^{1/r}.
SampledFunction vector_maximal_ell_r(const VectorFunction& vf, const WindowFamily& family);

/// Shell-index smoothing G_j = sum_k 2^{-|k-j| delta'} g_k over a finite
/// family, the discrete convolution against the two-sided geometric kernel.
std::vector<SampledFunction> geometric_shift_sums(const std::vector<SampledFunction>& g,
                                                  double delta_prime);

struct ConvolutionBoundReport {
  double lhs = 0.0;   // || ||{G_j}||_{l^beta} ||_Herz
  double rhs = 0.0;   // || ||{g_k}||_{l^beta} ||_Herz
  double ratio = 0.0;
};

/// Compares the aggregated norms of {G_j} and {g_k}; delta' > 0, beta in
/// (0, inf].
ConvolutionBoundReport discrete_convolution_bound(const std::vector<SampledFunction>& g,
                                                  double delta_prime, double beta,
                                                  const HerzParams& params);

}  // namespace herzlab
