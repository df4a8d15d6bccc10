#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace herzlab {

/// Dyadic sampling lattice on the cube [-2^K, 2^K)^n, n in {1, 2}.
///
/// Cells are half-open, cell-centered: the i-th coordinate along an axis is
/// x_i = -2^K + (i + 1/2) h with h = 2^(K+1) / N.  The origin is never a
/// sample point and every integer (and every dyadic multiple of h) falls on
/// a cell boundary, so indicators of dyadic intervals have exact measure.
struct GridSpec {
  int dimension = 1;         // 1 or 2
  int halfwidth_log2 = 6;    // K
  int samples_per_axis = 0;  // N, a power of two
  int k_min = 0;             // smallest dyadic shell index kept in truncations
  int k_max = 0;             // largest shell index, 2^k_max <= 2^K

  double step() const;       // h = 2^(K+1)/N
  double halfwidth() const;  // 2^K
  double cell_measure() const;        // h^n
  std::size_t point_count() const;    // N^n
  double coordinate(int i) const;     // axis coordinate of cell i
  int shell_count() const { return k_max - k_min + 1; }

  /// Flat index of the 2-D cell (ix, iy); row-major, iy * N + ix.
  std::size_t flat_index(int ix, int iy) const;
  /// Euclidean |x| of the cell with the given flat index.
  double radius(std::size_t flat) const;

  bool operator==(const GridSpec&) const = default;
};

/// Validates and builds a GridSpec.  Throws std::invalid_argument when the
/// dimension is not 1 or 2, N is not a power of two, the shell range is
/// empty or inverted, or 2^k_max exceeds the domain halfwidth.
GridSpec make_grid(int dimension, int halfwidth_log2, int samples_per_axis,
                   int k_min, int k_max);

/// A complex-valued function sampled at the cell centers of a grid.
struct SampledFunction {
  GridSpec spec;
  std::vector<std::complex<double>> values;  // size spec.point_count()
  std::string label;
};

/// Samples an evaluator at every cell center.  The evaluator receives (x, y);
/// y is 0 for 1-D grids.
SampledFunction make_function(const GridSpec& spec,
                              const std::function<std::complex<double>(double, double)>& eval,
                              std::string label = {});

SampledFunction zero_function(const GridSpec& spec, std::string label = {});

/// Pointwise |f| as a plain real array (the workhorse for norm evaluation).
std::vector<double> absolute_values(const SampledFunction& f);
double max_abs(const SampledFunction& f);

enum class MaskKind { annulus, ball, modified };

/// Indicator of a dyadic region, stored as the sorted list of member cells.
///   annulus  D_k = { 2^(k-1) < |x| <= 2^k }
///   ball     B_k = { |x| <= 2^k }
///   modified D_k for k >= 1, B_0 for k = 0 (the inhomogeneous bottom shell)
struct DyadicMask {
  GridSpec spec;
  MaskKind kind = MaskKind::annulus;
  int k = 0;
  std::vector<std::uint32_t> cells;  // ascending flat indices
};

DyadicMask annulus_mask(const GridSpec& spec, int k);
DyadicMask ball_mask(const GridSpec& spec, int k);
DyadicMask modified_mask(const GridSpec& spec, int k);

/// Rectangle-rule integral h^n * sum over cells of Re f (optionally only the
/// cells of a mask).  All measurements in this library are real; imaginary
/// parts are diagnostic only.
double integrate(const SampledFunction& f);
double integrate(const SampledFunction& f, const DyadicMask& mask);

/// Rectangle-rule integral of a raw real array over the full grid.
double integrate_values(const GridSpec& spec, const std::vector<double>& values);

}  // namespace herzlab
