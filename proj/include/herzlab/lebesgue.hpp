#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "herzlab/exponents_weights.hpp"
#include "herzlab/grid.hpp"

namespace herzlab {

/// Precomputed per-cell data for evaluating the modular
///   rho(lambda) = h^n * sum (|g(x)| / lambda)^{q(x)}
/// restricted to an index set.  Zero cells are dropped (0^q = 0); all sums
/// run through exp/log so large exponents neither overflow nor lose the
/// bracketing direction.
class ModularTerms {
 public:
  ModularTerms(const GridSpec& spec, std::vector<double> log_abs,
               std::vector<double> exponents);

  /// Builds terms for |f|, |f.w|, or an explicit real magnitude array,
  /// optionally restricted to mask cells or to row ranges.
  static ModularTerms from_function(const SampledFunction& f, const ExponentFunction& q);
  static ModularTerms from_weighted(const SampledFunction& f, const Weight& w,
                                    const ExponentFunction& q);
  static ModularTerms from_values(const GridSpec& spec, const std::vector<double>& abs_values,
                                  const ExponentFunction& q);
  static ModularTerms from_values_masked(const GridSpec& spec,
                                         const std::vector<double>& abs_values,
                                         const ExponentFunction& q,
                                         const std::vector<std::uint32_t>& cells);
  static ModularTerms from_values_ranges(
      const GridSpec& spec, const std::vector<double>& abs_values, const ExponentFunction& q,
      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& ranges);

  bool empty() const { return log_abs_.empty(); }
  double max_abs() const { return max_abs_; }
  /// Modular at lambda > 0 (capped at a huge finite value on overflow).
  double evaluate(double lambda) const;

 private:
  std::vector<double> log_abs_;
  std::vector<double> exponents_;
  double log_measure_ = 0.0;  // log h^n
  double max_abs_ = 0.0;
};

/// Modular of f at a given lambda.  Throws std::invalid_argument for
/// lambda <= 0 or non-finite samples.
double modular(const SampledFunction& f, const ExponentFunction& q, double lambda);

/// Result of the norm bracketing: the infimum over lambda of modular <= 1.
struct LuxemburgResult {
  double norm = 0.0;
  int iterations = 0;           // bracketing + bisection steps
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double modular_at_norm = 0.0;
};

/// Norm from precomputed terms; the core root finder.  Doubling/halving from
/// lambda0 = max |g| brackets the root, then geometric bisection runs to
/// relative tolerance `rel_tol` (iteration cap 200).
LuxemburgResult luxemburg_from_terms(const ModularTerms& terms, double rel_tol = 1.0e-12);

LuxemburgResult luxemburg_norm(const SampledFunction& f, const ExponentFunction& q);
LuxemburgResult luxemburg_norm(const SampledFunction& f, const ExponentFunction& q,
                               const DyadicMask& mask);

/// Weighted norm ||f||_{q(.),w} = || f . w ||_{q(.)}.
LuxemburgResult weighted_norm(const SampledFunction& f, const Weight& w,
                              const ExponentFunction& q);
LuxemburgResult weighted_norm(const SampledFunction& f, const Weight& w,
                              const ExponentFunction& q, const DyadicMask& mask);

/// Two-function product bound: lhs = integral |f g|, rhs = C ||f||_q ||g||_q'.
struct HolderCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs; <= 1 when the bound holds
  double constant_used = 2.0;
  double norm_f = 0.0;
  double norm_g = 0.0;
};

HolderCheck holder_check(const SampledFunction& f, const SampledFunction& g,
                         const ExponentFunction& q, double constant = 2.0);

}  // namespace herzlab
