// Averaging and convolution-type operators on sampled functions: exact
// interval/rectangle integrals of the cellwise model, the uncentered maximal
// average over a dyadic window family, truncated singular kernels evaluated
// as exact linear convolutions, and the shell-index smoothing bound used by
// the discrete convolution experiments.

#include "herzlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "herzlab/fft.hpp"

namespace herzlab {

namespace {

void check_real_values(const GridSpec& spec, const std::vector<double>& values,
                       const char* who) {
  if (values.size() != spec.point_count()) {
    throw std::invalid_argument(std::string(who) + ": value count does not match the grid");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(who) + ": values must be finite");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// PrefixIntegral
// ---------------------------------------------------------------------------

PrefixIntegral::PrefixIntegral(const GridSpec& spec, const std::vector<double>& values)
    : spec_(spec), values_(values) {
  check_real_values(spec, values, "PrefixIntegral");
  const int n = spec_.samples_per_axis;
  if (spec_.dimension == 1) {
    prefix_.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) {
      prefix_[static_cast<std::size_t>(i) + 1] = prefix_[i] + values_[static_cast<std::size_t>(i)];
    }
  } else {
    // Summed-area table over cell counts: sat(i, j) = sum of values over
    // cells with ix < i and iy < j, laid out row-major with pitch n + 1.
    const std::size_t pitch = static_cast<std::size_t>(n) + 1;
    sat_.assign(pitch * pitch, 0.0);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const std::size_t at = static_cast<std::size_t>(j + 1) * pitch + static_cast<std::size_t>(i + 1);
        sat_[at] = sat_[at - 1] + sat_[at - pitch] - sat_[at - pitch - 1] +
                   values_[spec_.flat_index(i, j)];
      }
    }
  }
}

// Cumulative integral (in cell units) of the 1-D model over [domain start, t],
// where t is a fractional cell coordinate already clamped to [0, axis_cells].
double PrefixIntegral::axis_integral_bound(double t, int axis_cells) const {
  int i = static_cast<int>(std::floor(t));
  double frac = t - i;
  if (i >= axis_cells) {
    i = axis_cells - 1;
    frac = 1.0;
  }
  if (i < 0) {
    i = 0;
    frac = 0.0;
  }
  return prefix_[static_cast<std::size_t>(i)] + frac * values_[static_cast<std::size_t>(i)];
}

double PrefixIntegral::integral(double a, double b) const {
  if (spec_.dimension != 1) {
    throw std::invalid_argument("PrefixIntegral: 1-D overload used on a 2-D grid");
  }
  if (!(b > a)) return 0.0;
  const int n = spec_.samples_per_axis;
  const double h = spec_.step();
  const double hw = spec_.halfwidth();
  const double ta = std::clamp((a + hw) / h, 0.0, static_cast<double>(n));
  const double tb = std::clamp((b + hw) / h, 0.0, static_cast<double>(n));
  return h * (axis_integral_bound(tb, n) - axis_integral_bound(ta, n));
}

double PrefixIntegral::integral(double ax, double bx, double ay, double by) const {
  if (spec_.dimension != 2) {
    throw std::invalid_argument("PrefixIntegral: 2-D overload used on a 1-D grid");
  }
  if (!(bx > ax) || !(by > ay)) return 0.0;
  const int n = spec_.samples_per_axis;
  const std::size_t pitch = static_cast<std::size_t>(n) + 1;
  const double h = spec_.step();
  const double hw = spec_.halfwidth();

  // Corner function F(tx, ty): integral (in cell units) over the rectangle
  // from the domain corner to the fractional cell coordinate (tx, ty).  The
  // two strip terms are partial column/row sums read off the table, the last
  // term is the doubly fractional corner cell.
  const auto corner = [&](double tx, double ty) {
    int ix = static_cast<int>(std::floor(tx));
    double fx = tx - ix;
    if (ix >= n) {
      ix = n - 1;
      fx = 1.0;
    }
    int iy = static_cast<int>(std::floor(ty));
    double fy = ty - iy;
    if (iy >= n) {
      iy = n - 1;
      fy = 1.0;
    }
    const std::size_t base = static_cast<std::size_t>(iy) * pitch + static_cast<std::size_t>(ix);
    const double full = sat_[base];
    const double col = sat_[base + 1] - full;          // cells (ix, y<iy)
    const double row = sat_[base + pitch] - full;      // cells (x<ix, iy)
    const double cell = values_[spec_.flat_index(ix, iy)];
    return full + fx * col + fy * row + fx * fy * cell;
  };

  const auto clamp_axis = [&](double x) {
    return std::clamp((x + hw) / h, 0.0, static_cast<double>(n));
  };
  const double txa = clamp_axis(ax), txb = clamp_axis(bx);
  const double tya = clamp_axis(ay), tyb = clamp_axis(by);
  return h * h *
         (corner(txb, tyb) - corner(txa, tyb) - corner(txb, tya) + corner(txa, tya));
}

// ---------------------------------------------------------------------------
// Window family and maximal averages
// ---------------------------------------------------------------------------

WindowFamily WindowFamily::dyadic(const GridSpec& spec) {
  WindowFamily family;
  const double h = spec.step();
  // Dyadic offsets 0, h, 2h, ..., capped at the domain width; beyond that a
  // wider window only dilutes the same total mass.
  std::vector<double> offsets{0.0};
  for (double s = h; s <= 2.0 * spec.halfwidth() + 0.5 * h; s *= 2.0) {
    offsets.push_back(s);
  }
  for (double u : offsets) {
    for (double v : offsets) {
      if (u + v > 0.0) family.offsets.emplace_back(u, v);
    }
  }
  // Single-cell window: the average over [x - h/2, x + h/2] is exactly the
  // cell value, so the maximal function dominates |f| pointwise.
  family.offsets.emplace_back(0.5 * h, 0.5 * h);
  family.validate();
  return family;
}

void WindowFamily::validate() const {
  if (offsets.empty()) {
    throw std::invalid_argument("WindowFamily: no windows");
  }
  for (const auto& [u, v] : offsets) {
    if (!(u >= 0.0) || !(v >= 0.0) || !std::isfinite(u) || !std::isfinite(v)) {
      throw std::invalid_argument("WindowFamily: offsets must be finite and nonnegative");
    }
    if (u + v <= 0.0) {
      throw std::invalid_argument("WindowFamily: the (0, 0) window is not allowed");
    }
    if (std::find(offsets.begin(), offsets.end(), std::make_pair(v, u)) == offsets.end()) {
      throw std::invalid_argument("WindowFamily: family is not closed under swapping (u, v)");
    }
  }
}

namespace {

// Largest window average of the nonnegative array behind `p` at the point
// (x, y).  Windows are products of per-axis intervals [x - u, x + v]; the
// function is zero outside the domain while the window measure is the full
// (u + v)^n, matching averages over ambient-space windows.
double best_window_average(const PrefixIntegral& p, const GridSpec& spec,
                           const WindowFamily& family, double x, double y) {
  double best = 0.0;
  for (const auto& [u, v] : family.offsets) {
    const double len = u + v;
    double avg;
    if (spec.dimension == 1) {
      avg = p.integral(x - u, x + v) / len;
    } else {
      avg = p.integral(x - u, x + v, y - u, y + v) / (len * len);
    }
    best = std::max(best, avg);
  }
  return best;
}

SampledFunction maximal_of_values(const GridSpec& spec, const std::vector<double>& values,
                                  const WindowFamily& family, std::string label) {
  family.validate();
  const PrefixIntegral p(spec, values);
  SampledFunction out;
  out.spec = spec;
  out.label = std::move(label);
  out.values.resize(spec.point_count());
  const int n = spec.samples_per_axis;
  if (spec.dimension == 1) {
    for (int i = 0; i < n; ++i) {
      out.values[static_cast<std::size_t>(i)] =
          best_window_average(p, spec, family, spec.coordinate(i), 0.0);
    }
  } else {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        out.values[spec.flat_index(i, j)] =
            best_window_average(p, spec, family, spec.coordinate(i), spec.coordinate(j));
      }
    }
  }
  return out;
}

}  // namespace

SampledFunction maximal(const SampledFunction& f, const WindowFamily& family) {
  return maximal_of_values(f.spec, absolute_values(f), family, "maximal(" + f.label + ")");
}

SampledFunction maximal_t(const SampledFunction& f, const WindowFamily& family, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("maximal_t: t must be positive and finite");
  }
  std::vector<double> powered = absolute_values(f);
  for (double& v : powered) v = std::pow(v, t);
  SampledFunction out = maximal_of_values(f.spec, powered, family, "maximal_t(" + f.label + ")");
  const double inv = 1.0 / t;
  for (auto& v : out.values) v = std::pow(v.real(), inv);
  return out;
}

double maximal_at(const SampledFunction& f, const WindowFamily& family, double x, double y) {
  family.validate();
  const PrefixIntegral p(f.spec, absolute_values(f));
  return best_window_average(p, f.spec, family, x, y);
}

// ---------------------------------------------------------------------------
// Truncated singular kernels
// ---------------------------------------------------------------------------

namespace {

double kernel_value(SizeKernel kind, int dimension, double dx, double dy, double eps) {
  const double r = (dimension == 1) ? std::abs(dx) : std::hypot(dx, dy);
  if (r <= eps) return 0.0;
  switch (kind) {
    case SizeKernel::riesz_truncated:
      // (x - y) / |x - y|^{n+1}; in 2-D the first component.
      return (dimension == 1) ? dx / (r * r) : dx / (r * r * r);
    case SizeKernel::kernel_power:
      return (dimension == 1) ? 1.0 / r : 1.0 / (r * r);
  }
  throw std::invalid_argument("size kernel: unknown kind");
}

double resolve_eps(const GridSpec& spec, double eps) {
  if (eps < 0.0) return 2.0 * spec.step();
  return eps;
}

}  // namespace

SampledFunction size_condition_operator(const SampledFunction& f, SizeKernel kind, double eps) {
  const double cut = resolve_eps(f.spec, eps);
  SampledFunction out = convolve_offset_kernel(
      f, [&](double dx, double dy) { return kernel_value(kind, f.spec.dimension, dx, dy, cut); });
  out.label = "T(" + f.label + ")";
  return out;
}

double size_condition_at(const SampledFunction& f, SizeKernel kind, double x, double y,
                         double eps) {
  const GridSpec& spec = f.spec;
  const double cut = resolve_eps(spec, eps);
  const int n = spec.samples_per_axis;
  std::complex<double> acc = 0.0;
  if (spec.dimension == 1) {
    for (int i = 0; i < n; ++i) {
      acc += f.values[static_cast<std::size_t>(i)] *
             kernel_value(kind, 1, x - spec.coordinate(i), 0.0, cut);
    }
  } else {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        acc += f.values[spec.flat_index(i, j)] *
               kernel_value(kind, 2, x - spec.coordinate(i), y - spec.coordinate(j), cut);
      }
    }
  }
  return (acc * spec.cell_measure()).real();
}

// ---------------------------------------------------------------------------
// Vector aggregation
// ---------------------------------------------------------------------------

namespace {

void check_members(const std::vector<SampledFunction>& members, const char* who) {
  if (members.empty()) {
    throw std::invalid_argument(std::string(who) + ": empty family");
  }
  for (const auto& m : members) {
    if (!(m.spec == members.front().spec)) {
      throw std::invalid_argument(std::string(who) + ": members sampled on different grids");
    }
  }
}

}  // namespace

SampledFunction pointwise_ell_norm(const std::vector<SampledFunction>& members, double beta,
                                   const std::vector<double>& scales) {
  check_members(members, "pointwise_ell_norm");
  if (!(beta > 0.0)) {
    throw std::invalid_argument("pointwise_ell_norm: beta must be positive");
  }
  if (!scales.empty() && scales.size() != members.size()) {
    throw std::invalid_argument("pointwise_ell_norm: one scale per member required");
  }
  const GridSpec& spec = members.front().spec;
  const std::size_t cells = spec.point_count();
  const bool take_max = std::isinf(beta);
  std::vector<double> acc(cells, 0.0);
  for (std::size_t j = 0; j < members.size(); ++j) {
    const double s = scales.empty() ? 1.0 : scales[j];
    for (std::size_t c = 0; c < cells; ++c) {
      const double term = s * std::abs(members[j].values[c]);
      if (take_max) {
        acc[c] = std::max(acc[c], term);
      } else {
        acc[c] += std::pow(term, beta);
      }
    }
  }
  SampledFunction out;
  out.spec = spec;
  out.label = "ell_norm";
  out.values.resize(cells);
  const double inv = take_max ? 1.0 : 1.0 / beta;
  for (std::size_t c = 0; c < cells; ++c) {
    out.values[c] = take_max ? acc[c] : std::pow(acc[c], inv);
  }
  return out;
}

SampledFunction vector_ell_r(const VectorFunction& vf) {
  if (!(vf.r > 1.0)) {
    throw std::invalid_argument("vector_ell_r: aggregation exponent must exceed 1");
  }
  return pointwise_ell_norm(vf.members, vf.r);
}

SampledFunction vector_maximal_ell_r(const VectorFunction& vf, const WindowFamily& family) {
  if (!(vf.r > 1.0)) {
    throw std::invalid_argument("vector_maximal_ell_r: aggregation exponent must exceed 1");
  }
  check_members(vf.members, "vector_maximal_ell_r");
  std::vector<SampledFunction> maximals;
  maximals.reserve(vf.members.size());
  for (const auto& m : vf.members) {
    maximals.push_back(maximal(m, family));
  }
  SampledFunction out = pointwise_ell_norm(maximals, vf.r);
  out.label = "vector_maximal";
  return out;
}

// ---------------------------------------------------------------------------
// Shell-index smoothing bound
// ---------------------------------------------------------------------------

std::vector<SampledFunction> geometric_shift_sums(const std::vector<SampledFunction>& g,
                                                  double delta_prime) {
  check_members(g, "geometric_shift_sums");
  if (!(delta_prime > 0.0)) {
    throw std::invalid_argument("geometric_shift_sums: delta' must be positive");
  }
  const std::size_t count = g.size();
  const std::size_t cells = g.front().spec.point_count();
  std::vector<SampledFunction> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    out[j].spec = g.front().spec;
    out[j].label = "shift_sum_" + std::to_string(j);
    out[j].values.assign(cells, 0.0);
    for (std::size_t k = 0; k < count; ++k) {
      const double weight =
          std::exp2(-std::abs(static_cast<double>(k) - static_cast<double>(j)) * delta_prime);
      for (std::size_t c = 0; c < cells; ++c) {
        out[j].values[c] += weight * g[k].values[c];
      }
    }
  }
  return out;
}

ConvolutionBoundReport discrete_convolution_bound(const std::vector<SampledFunction>& g,
                                                  double delta_prime, double beta,
                                                  const HerzParams& params) {
  check_members(g, "discrete_convolution_bound");
  const std::vector<SampledFunction> smoothed = geometric_shift_sums(g, delta_prime);
  const SampledFunction lhs_fn = pointwise_ell_norm(smoothed, beta);
  const SampledFunction rhs_fn = pointwise_ell_norm(g, beta);
  ConvolutionBoundReport report;
  report.lhs = grand_herz_morrey_norm(lhs_fn, params).value;
  report.rhs = grand_herz_morrey_norm(rhs_fn, params).value;
  report.ratio = (report.rhs > 0.0) ? report.lhs / report.rhs
                                    : (report.lhs > 0.0 ? std::numeric_limits<double>::infinity()
                                                        : 0.0);
  return report;
}

}  // namespace herzlab
