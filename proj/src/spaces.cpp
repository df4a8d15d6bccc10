// Scale-decomposition norm displays: the dyadic-resolution norm, its
// admissible-pair and Peetre-maximal variants, the five kernel-family
// characterizations evaluated side by side, and the corpus experiment that
// reports empirical equivalence constants.

#include "herzlab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace herzlab {

namespace {

void check_same_grid(const SampledFunction& f, const FilterBank& bank, const char* who) {
  if (!(f.spec == bank.spec)) {
    throw std::invalid_argument(std::string(who) + ": function and filter bank use different grids");
  }
}

// 2^{j s} level weights for the discrete displays.
std::vector<double> level_scales(int levels, double s) {
  std::vector<double> scales(static_cast<std::size_t>(levels));
  for (int j = 0; j < levels; ++j) {
    scales[static_cast<std::size_t>(j)] = std::exp2(j * s);
  }
  return scales;
}

double herz_of(const SampledFunction& g, const TLParams& params) {
  return grand_herz_morrey_norm(g, params.herz).value;
}

// Shared tail of the discrete displays: aggregate the level pieces in
// pointwise l^beta with 2^{j s} weights, then take the outer shell norm.
double discrete_display(const std::vector<SampledFunction>& pieces, const TLParams& params) {
  SampledFunction g =
      pointwise_ell_norm(pieces, params.beta, level_scales(static_cast<int>(pieces.size()), params.s));
  return herz_of(g, params);
}

// Quadrature grid for the continuous-scale displays: t = 2^{-j - i/per},
// j = 0..j_max, i = 0..per-1, listed in descending t, with trapezoid weights
// for the measure dt/t (uniform in log t by construction).
struct ScaleGrid {
  std::vector<double> t;
  std::vector<double> weight;
};

ScaleGrid make_scale_grid(int j_max, int per_octave) {
  ScaleGrid grid;
  const int count = (j_max + 1) * per_octave;
  grid.t.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j <= j_max; ++j) {
    for (int i = 0; i < per_octave; ++i) {
      grid.t.push_back(std::exp2(-j - static_cast<double>(i) / per_octave));
    }
  }
  const double step = std::log(2.0) / per_octave;
  grid.weight.assign(static_cast<std::size_t>(count), step);
  grid.weight.front() = 0.5 * step;
  grid.weight.back() = 0.5 * step;
  return grid;
}

// Per-member weights that realize  sum_i w_i t_i^{-s beta} |u_i|^beta  through
// the pointwise l^beta engine (weights fold into the scale factors); with
// beta = inf the quadrature weights drop out and the display is the
// essential sup of t^{-s} |u_t| over the scale grid.
std::vector<double> quadrature_scales(const ScaleGrid& grid, double s, double beta) {
  std::vector<double> scales(grid.t.size());
  const bool take_max = std::isinf(beta);
  for (std::size_t i = 0; i < grid.t.size(); ++i) {
    const double decay = std::pow(grid.t[i], -s);
    scales[i] = take_max ? decay : std::pow(grid.weight[i], 1.0 / beta) * decay;
  }
  return scales;
}

// Antiderivative of sqrt(1 - Y^2) on [-1, 1].
double circle_slice(double y) {
  y = std::clamp(y, -1.0, 1.0);
  return 0.5 * (y * std::sqrt(std::max(0.0, 1.0 - y * y)) + std::asin(y));
}

// Area of the unit disk to the upper-right of the corner (x, y):
// |{(X, Y) : X^2 + Y^2 <= 1, X >= x, Y >= y}|.  The slice width at height Y
// is max(0, s(Y) - max(x, -s(Y))) with s(Y) = sqrt(1 - Y^2); the integral
// splits at |Y| = sqrt(1 - x^2), where the vertical cut leaves the disk.
double unit_disk_quadrant(double x, double y) {
  if (x >= 1.0 || y >= 1.0) {
    return 0.0;
  }
  x = std::max(x, -1.0);
  y = std::max(y, -1.0);
  const double y_cut = std::sqrt(std::max(0.0, 1.0 - x * x));
  double area = 0.0;
  const double mid_lo = std::max(y, -y_cut);
  if (y_cut > mid_lo) {
    area += (circle_slice(y_cut) - circle_slice(mid_lo)) - x * (y_cut - mid_lo);
  }
  if (x < 0.0) {
    const double cap_lo = std::max(y, y_cut);
    if (1.0 > cap_lo) {
      area += 2.0 * (circle_slice(1.0) - circle_slice(cap_lo));
    }
    if (-y_cut > y) {
      area += 2.0 * (circle_slice(-y_cut) - circle_slice(y));
    }
  }
  return area;
}

// One-dimensional ball integral/sup of a cellwise-constant array:
//   finite beta ->  t^{-1} * integral over (x - t, x + t)
//   beta = inf ->  max over cells overlapping (x - t, x + t)
std::vector<double> interval_means(const GridSpec& spec, const std::vector<double>& u, double t,
                                   bool take_max) {
  const int n = spec.samples_per_axis;
  const double h = spec.step();
  const double hw = spec.halfwidth();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  if (take_max) {
    for (int ix = 0; ix < n; ++ix) {
      const double x = spec.coordinate(ix);
      const int lo = std::max(0, static_cast<int>(std::floor((x - t + hw) / h)));
      const int hi = std::min(n - 1, static_cast<int>(std::floor((x + t + hw) / h)) + 1);
      double best = 0.0;
      for (int j = lo; j <= hi; ++j) {
        const double c = spec.coordinate(j);
        if (c - 0.5 * h < x + t && c + 0.5 * h > x - t) {
          best = std::max(best, u[static_cast<std::size_t>(j)]);
        }
      }
      out[static_cast<std::size_t>(ix)] = best;
    }
    return out;
  }
  const PrefixIntegral prefix(spec, u);
  for (int ix = 0; ix < n; ++ix) {
    const double x = spec.coordinate(ix);
    out[static_cast<std::size_t>(ix)] = prefix.integral(x - t, x + t) / t;
  }
  return out;
}

// Two-dimensional ball integral/sup with exact fractional disk-cell overlap:
//   finite beta ->  t^{-2} * sum over cells of overlap-area * u
//   beta = inf ->  max over cells with positive overlap
std::vector<double> disk_means(const GridSpec& spec, const std::vector<double>& u, double t,
                               bool take_max) {
  const int n = spec.samples_per_axis;
  const double h = spec.step();
  const double half = 0.5 * h;
  std::vector<double> out(spec.point_count(), 0.0);
  const int reach = static_cast<int>(std::ceil(t / h)) + 1;
  for (int iy = 0; iy < n; ++iy) {
    const double y = spec.coordinate(iy);
    for (int ix = 0; ix < n; ++ix) {
      const double x = spec.coordinate(ix);
      double acc = 0.0;
      const int ylo = std::max(0, iy - reach);
      const int yhi = std::min(n - 1, iy + reach);
      const int xlo = std::max(0, ix - reach);
      const int xhi = std::min(n - 1, ix + reach);
      for (int jy = ylo; jy <= yhi; ++jy) {
        const double dy = spec.coordinate(jy) - y;
        const double near_y = std::max(0.0, std::abs(dy) - half);
        if (near_y >= t) {
          continue;
        }
        const double far_y = std::abs(dy) + half;
        for (int jx = xlo; jx <= xhi; ++jx) {
          const double dx = spec.coordinate(jx) - x;
          const double near_x = std::max(0.0, std::abs(dx) - half);
          if (near_x >= t) {
            continue;
          }
          if (near_x * near_x + near_y * near_y >= t * t) {
            continue;
          }
          const double value = u[spec.flat_index(jx, jy)];
          if (take_max) {
            acc = std::max(acc, value);
            continue;
          }
          const double far_x = std::abs(dx) + half;
          double area;
          if (far_x * far_x + far_y * far_y <= t * t) {
            area = h * h;  // cell fully inside the disk
          } else {
            area = disk_box_overlap(t, x, y, spec.coordinate(jx) - half, spec.coordinate(jx) + half,
                                    spec.coordinate(jy) - half, spec.coordinate(jy) + half);
          }
          acc += area * value;
        }
      }
      out[spec.flat_index(ix, iy)] = take_max ? acc : acc / (t * t);
    }
  }
  return out;
}

// Local means of the scale-t piece:  t^{-n} * integral over |z| < t of
// |piece(x + z)|^beta dz  (the inner factor of the third display), as a
// real-valued sampled function; beta = inf takes the sup over the ball.
SampledFunction local_means(const SampledFunction& piece, double t, double beta) {
  const GridSpec& spec = piece.spec;
  const bool take_max = std::isinf(beta);
  std::vector<double> powered(spec.point_count());
  for (std::size_t c = 0; c < powered.size(); ++c) {
    const double mag = std::abs(piece.values[c]);
    powered[c] = take_max ? mag : std::pow(mag, beta);
  }
  std::vector<double> means = spec.dimension == 1 ? interval_means(spec, powered, t, take_max)
                                                  : disk_means(spec, powered, t, take_max);
  SampledFunction out;
  out.spec = spec;
  out.label = "local_means";
  out.values.assign(means.begin(), means.end());
  return out;
}

// Worst pointwise failure of sup-dominates-convolution over a matched list
// of pieces; exact zero is expected (the sup includes the center point).
double domination_gap(const std::vector<SampledFunction>& convs,
                      const std::vector<SampledFunction>& sups) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < convs.size(); ++j) {
    for (std::size_t c = 0; c < convs[j].values.size(); ++c) {
      worst = std::max(worst, std::abs(convs[j].values[c]) - sups[j].values[c].real());
    }
  }
  return worst;
}

}  // namespace

double tl_norm(const SampledFunction& f, const FilterBank& resolution, const TLParams& params) {
  if (resolution.kind != BankKind::resolution_of_unity) {
    throw std::invalid_argument("tl_norm: bank must be a resolution of unity");
  }
  check_same_grid(f, resolution, "tl_norm");
  std::vector<SampledFunction> pieces;
  pieces.reserve(static_cast<std::size_t>(resolution.levels()));
  for (int j = 0; j < resolution.levels(); ++j) {
    pieces.push_back(filter_convolve(f, resolution, j));
  }
  return discrete_display(pieces, params);
}

double tl_norm_admissible(const SampledFunction& f, const FilterBank& pair,
                          const TLParams& params) {
  if (pair.kind != BankKind::admissible_pair) {
    throw std::invalid_argument("tl_norm_admissible: bank must be an admissible pair");
  }
  check_same_grid(f, pair, "tl_norm_admissible");
  std::vector<SampledFunction> pieces;
  pieces.reserve(static_cast<std::size_t>(pair.levels()));
  for (int j = 0; j < pair.levels(); ++j) {
    pieces.push_back(filter_convolve(f, pair, j));
  }
  return discrete_display(pieces, params);
}

FlaggedValue tl_norm_peetre(const SampledFunction& f, const FilterBank& bank,
                            const TLParams& params, const PeetreParams& peetre) {
  if (bank.kind != BankKind::resolution_of_unity && bank.kind != BankKind::admissible_pair) {
    throw std::invalid_argument("tl_norm_peetre: bank must be an analysis family");
  }
  check_same_grid(f, bank, "tl_norm_peetre");
  if (!(peetre.a > 0.0)) {
    throw std::invalid_argument("tl_norm_peetre: decay exponent must be positive");
  }
  std::vector<SampledFunction> pieces;
  pieces.reserve(static_cast<std::size_t>(bank.levels()));
  for (int j = 0; j < bank.levels(); ++j) {
    pieces.push_back(peetre_maximal(f, bank, j, peetre.a));
  }
  FlaggedValue out;
  out.value = discrete_display(pieces, params);
  out.hypothesis_ok = peetre.a * peetre.t_integrability > f.spec.dimension;
  return out;
}

double NormComparison::pairwise_ratio(const std::string& a, const std::string& b) const {
  const double va = values.at(a);
  const double vb = values.at(b);
  if (va == 0.0 && vb == 0.0) {
    return 1.0;  // both displays vanish; the pair carries no spread
  }
  return va / vb;
}

double NormComparison::max_spread() const {
  double worst = 1.0;
  for (auto i = values.begin(); i != values.end(); ++i) {
    for (auto j = std::next(i); j != values.end(); ++j) {
      const double hi = std::max(i->second, j->second);
      const double lo = std::min(i->second, j->second);
      if (hi == 0.0) {
        continue;  // both vanish
      }
      worst = std::max(worst, lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity());
    }
  }
  return worst;
}

NormComparison kernel_norms(const SampledFunction& f, const FilterBank& kernel_family,
                            const TLParams& params, const PeetreParams& peetre) {
  if (kernel_family.kind != BankKind::kernel_family) {
    throw std::invalid_argument("kernel_norms: bank must be a kernel family");
  }
  check_same_grid(f, kernel_family, "kernel_norms");
  if (!(peetre.a > 0.0)) {
    throw std::invalid_argument("kernel_norms: decay exponent must be positive");
  }
  if (params.t_per_octave < 1) {
    throw std::invalid_argument("kernel_norms: scale grid needs at least one point per octave");
  }
  if (!(params.s < kernel_family.vanishing_moments + 1.0)) {
    throw std::invalid_argument("kernel_norms: smoothness exceeds the kernel moment order");
  }

  NormComparison out;
  out.quadrature_ok = params.t_per_octave >= 4;

  // Discrete level pieces (the low-pass member is level 0 of both sums).
  std::vector<SampledFunction> conv_levels;
  std::vector<SampledFunction> sup_levels;
  conv_levels.reserve(static_cast<std::size_t>(kernel_family.levels()));
  sup_levels.reserve(static_cast<std::size_t>(kernel_family.levels()));
  for (int j = 0; j < kernel_family.levels(); ++j) {
    conv_levels.push_back(filter_convolve(f, kernel_family, j));
    sup_levels.push_back(peetre_maximal(f, kernel_family, j, peetre.a));
  }

  // Continuous-scale pieces on the quadrature grid.
  const ScaleGrid grid = make_scale_grid(kernel_family.j_max, params.t_per_octave);
  std::vector<SampledFunction> conv_scales;
  std::vector<SampledFunction> sup_scales;
  conv_scales.reserve(grid.t.size());
  sup_scales.reserve(grid.t.size());
  for (double t : grid.t) {
    conv_scales.push_back(kernel_convolve_scale(f, kernel_family, t));
    sup_scales.push_back(kernel_peetre(f, kernel_family, t, peetre.a));
  }

  // Shared building blocks of the five displays.
  const double low_pass_term = herz_of(conv_levels.front(), params);
  const SampledFunction low_pass_sup = kernel_peetre_base(f, kernel_family, peetre.a);
  const double low_pass_sup_term = herz_of(low_pass_sup, params);
  const std::vector<double> scales = quadrature_scales(grid, params.s, params.beta);

  out.values["n1"] =
      low_pass_term + herz_of(pointwise_ell_norm(conv_scales, params.beta, scales), params);
  out.values["n2"] =
      low_pass_sup_term + herz_of(pointwise_ell_norm(sup_scales, params.beta, scales), params);

  // Third display: local means over |z| < t.  The inner integrand is already
  // raised to the power beta, so the quadrature weights enter linearly.
  {
    const GridSpec& spec = f.spec;
    const bool take_max = std::isinf(params.beta);
    std::vector<double> acc(spec.point_count(), 0.0);
    for (std::size_t i = 0; i < grid.t.size(); ++i) {
      const SampledFunction means = local_means(conv_scales[i], grid.t[i], params.beta);
      const double factor = take_max ? std::pow(grid.t[i], -params.s)
                                     : grid.weight[i] * std::pow(grid.t[i], -params.s * params.beta);
      for (std::size_t c = 0; c < acc.size(); ++c) {
        const double term = factor * means.values[c].real();
        if (take_max) {
          acc[c] = std::max(acc[c], term);
        } else {
          acc[c] += term;
        }
      }
    }
    SampledFunction g;
    g.spec = spec;
    g.label = "local_means_display";
    g.values.resize(acc.size());
    const double inv = take_max ? 1.0 : 1.0 / params.beta;
    for (std::size_t c = 0; c < acc.size(); ++c) {
      g.values[c] = take_max ? acc[c] : std::pow(acc[c], inv);
    }
    out.values["n3"] = low_pass_term + herz_of(g, params);
  }

  out.values["n4"] = discrete_display(sup_levels, params);
  out.values["n5"] = discrete_display(conv_levels, params);

  double gap = domination_gap(conv_levels, sup_levels);
  gap = std::max(gap, domination_gap(conv_scales, sup_scales));
  gap = std::max(gap, domination_gap({conv_levels.front()}, {low_pass_sup}));
  out.ordering_violation = std::max(0.0, gap);
  return out;
}

double disk_box_overlap(double r, double cx, double cy, double x0, double x1, double y0,
                        double y1) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("disk_box_overlap: radius must be positive");
  }
  if (!(x1 >= x0) || !(y1 >= y0)) {
    throw std::invalid_argument("disk_box_overlap: box corners out of order");
  }
  const double inv = 1.0 / r;
  const auto corner = [&](double x, double y) {
    return unit_disk_quadrant((x - cx) * inv, (y - cy) * inv);
  };
  const double area =
      r * r * (corner(x0, y0) - corner(x1, y0) - corner(x0, y1) + corner(x1, y1));
  return std::max(0.0, area);
}

EquivalenceReport equivalence_experiment(const std::vector<SampledFunction>& corpus,
                                         const NormFunctional& lhs, const NormFunctional& rhs) {
  if (corpus.empty()) {
    throw std::invalid_argument("equivalence_experiment: corpus is empty");
  }
  if (!lhs || !rhs) {
    throw std::invalid_argument("equivalence_experiment: both norm functionals are required");
  }
  EquivalenceReport report;
  report.rows.reserve(corpus.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const SampledFunction& f : corpus) {
    EquivalenceRow row;
    row.label = f.label;
    row.lhs = lhs(f);
    row.rhs = rhs(f);
    if (row.lhs == 0.0 && row.rhs == 0.0) {
      row.skipped = true;
      ++report.skipped;
    } else {
      row.ratio =
          row.rhs == 0.0 ? std::numeric_limits<double>::infinity() : row.lhs / row.rhs;
      hi = std::max(hi, row.ratio);
      lo = std::min(lo, row.ratio);
    }
    report.rows.push_back(std::move(row));
  }
  if (hi >= lo) {
    report.max_ratio = hi;
    report.min_ratio = lo;
    report.spread = (!std::isfinite(hi) || !(lo > 0.0))
                        ? std::numeric_limits<double>::infinity()
                        : hi / lo;
  }
  return report;
}

}  // namespace herzlab
