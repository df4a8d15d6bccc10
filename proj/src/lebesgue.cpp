#include "herzlab/lebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace herzlab {

namespace {

// exp() overflows a double a little above 709; clamping each term's exponent
// keeps the modular finite and monotone, which is all bracketing needs.
constexpr double kExpClamp = 700.0;

void check_sample(double a) {
  if (a < 0.0 || !std::isfinite(a))
    throw std::invalid_argument("ModularTerms: samples must be finite and >= 0");
}

void check_exponent(const ExponentFunction& q, const GridSpec& spec) {
  if (!(spec == q.spec))
    throw std::invalid_argument("ModularTerms: exponent sampled on a different grid");
  if (!q.in_class_p0())
    throw std::invalid_argument("ModularTerms: exponent must be positive and bounded");
}

}  // namespace

ModularTerms::ModularTerms(const GridSpec& spec, std::vector<double> log_abs,
                           std::vector<double> exponents)
    : log_abs_(std::move(log_abs)), exponents_(std::move(exponents)) {
  if (log_abs_.size() != exponents_.size())
    throw std::invalid_argument("ModularTerms: size mismatch");
  log_measure_ = std::log(spec.cell_measure());
  max_abs_ = 0.0;
  for (double l : log_abs_) max_abs_ = std::max(max_abs_, std::exp(l));
}

ModularTerms ModularTerms::from_function(const SampledFunction& f, const ExponentFunction& q) {
  return from_values(f.spec, absolute_values(f), q);
}

ModularTerms ModularTerms::from_weighted(const SampledFunction& f, const Weight& w,
                                         const ExponentFunction& q) {
  if (!(f.spec == w.spec))
    throw std::invalid_argument("ModularTerms: weight sampled on a different grid");
  std::vector<double> vals = absolute_values(f);
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] *= w.values[i];
  return from_values(f.spec, vals, q);
}

ModularTerms ModularTerms::from_values(const GridSpec& spec, const std::vector<double>& abs_values,
                                       const ExponentFunction& q) {
  check_exponent(q, spec);
  std::vector<double> logs, exps;
  logs.reserve(abs_values.size());
  exps.reserve(abs_values.size());
  for (std::size_t i = 0; i < abs_values.size(); ++i) {
    double a = abs_values[i];
    check_sample(a);
    if (a == 0.0) continue;  // zero cells contribute nothing at any scale
    logs.push_back(std::log(a));
    exps.push_back(q.values[i]);
  }
  return ModularTerms(spec, std::move(logs), std::move(exps));
}

ModularTerms ModularTerms::from_values_masked(const GridSpec& spec,
                                              const std::vector<double>& abs_values,
                                              const ExponentFunction& q,
                                              const std::vector<std::uint32_t>& cells) {
  check_exponent(q, spec);
  std::vector<double> logs, exps;
  logs.reserve(cells.size());
  exps.reserve(cells.size());
  for (std::uint32_t idx : cells) {
    double a = abs_values[idx];
    check_sample(a);
    if (a == 0.0) continue;
    logs.push_back(std::log(a));
    exps.push_back(q.values[idx]);
  }
  return ModularTerms(spec, std::move(logs), std::move(exps));
}

ModularTerms ModularTerms::from_values_ranges(
    const GridSpec& spec, const std::vector<double>& abs_values, const ExponentFunction& q,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& ranges) {
  check_exponent(q, spec);
  std::vector<double> logs, exps;
  for (auto [lo, hi] : ranges) {
    for (std::uint32_t idx = lo; idx < hi; ++idx) {
      double a = abs_values[idx];
      check_sample(a);
      if (a == 0.0) continue;
      logs.push_back(std::log(a));
      exps.push_back(q.values[idx]);
    }
  }
  return ModularTerms(spec, std::move(logs), std::move(exps));
}

double ModularTerms::evaluate(double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("ModularTerms: scale must be positive");
  double log_lambda = std::log(lambda);
  double sum = 0.0;
  for (std::size_t i = 0; i < log_abs_.size(); ++i) {
    double e = log_measure_ + exponents_[i] * (log_abs_[i] - log_lambda);
    sum += std::exp(std::min(e, kExpClamp));
  }
  return sum;
}

double modular(const SampledFunction& f, const ExponentFunction& q, double lambda) {
  return ModularTerms::from_function(f, q).evaluate(lambda);
}

LuxemburgResult luxemburg_from_terms(const ModularTerms& terms, double rel_tol) {
  LuxemburgResult r;
  if (terms.empty()) return r;  // the zero function has norm 0

  // The modular is strictly decreasing in lambda.  Starting from the largest
  // sample magnitude, double or halve until the unit level is straddled, then
  // bisect geometrically (uniform relative accuracy across magnitudes).
  double lo = terms.max_abs(), hi = lo;
  int iters = 0;
  const int kMaxIters = 200;
  if (terms.evaluate(hi) > 1.0) {
    while (iters < kMaxIters && terms.evaluate(hi) > 1.0) {
      hi *= 2.0;
      ++iters;
      if (hi > 1e300) throw std::runtime_error("luxemburg_from_terms: no finite bracket");
    }
    lo = hi * 0.5;
  } else {
    while (iters < kMaxIters && lo > 1e-300 && terms.evaluate(lo * 0.5) <= 1.0) {
      lo *= 0.5;
      ++iters;
    }
    hi = lo;
    lo *= 0.5;
  }
  while (iters < kMaxIters && (hi - lo) > rel_tol * hi) {
    // Geometric mean as a product of roots: sqrt(lo*hi) would underflow to 0
    // for the ~1e-300 norms of far-tail shells.
    double mid = std::sqrt(lo) * std::sqrt(hi);
    if (terms.evaluate(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
    ++iters;
  }
  r.norm = hi;  // smallest scale seen whose modular is <= 1
  r.iterations = iters;
  r.bracket_lo = lo;
  r.bracket_hi = hi;
  r.modular_at_norm = terms.evaluate(hi);
  return r;
}

LuxemburgResult luxemburg_norm(const SampledFunction& f, const ExponentFunction& q) {
  return luxemburg_from_terms(ModularTerms::from_function(f, q));
}

LuxemburgResult luxemburg_norm(const SampledFunction& f, const ExponentFunction& q,
                               const DyadicMask& mask) {
  return luxemburg_from_terms(
      ModularTerms::from_values_masked(f.spec, absolute_values(f), q, mask.cells));
}

LuxemburgResult weighted_norm(const SampledFunction& f, const Weight& w,
                              const ExponentFunction& q) {
  return luxemburg_from_terms(ModularTerms::from_weighted(f, w, q));
}

LuxemburgResult weighted_norm(const SampledFunction& f, const Weight& w,
                              const ExponentFunction& q, const DyadicMask& mask) {
  if (!(f.spec == w.spec))
    throw std::invalid_argument("weighted_norm: weight sampled on a different grid");
  std::vector<double> vals = absolute_values(f);
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] *= w.values[i];
  return luxemburg_from_terms(ModularTerms::from_values_masked(f.spec, vals, q, mask.cells));
}

HolderCheck holder_check(const SampledFunction& f, const SampledFunction& g,
                         const ExponentFunction& q, double constant) {
  if (!(f.spec == g.spec)) throw std::invalid_argument("holder_check: grids differ");
  HolderCheck out;
  double lhs = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    lhs += std::abs(f.values[i]) * std::abs(g.values[i]);
  out.lhs = lhs * f.spec.cell_measure();
  out.norm_f = luxemburg_norm(f, q).norm;
  out.norm_g = luxemburg_norm(g, conjugate_exponent(q)).norm;
  out.constant_used = constant;
  out.rhs = constant * out.norm_f * out.norm_g;
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

}  // namespace herzlab
