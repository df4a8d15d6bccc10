#include "herzlab/grid.hpp"

#include <cmath>

namespace herzlab {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

double GridSpec::step() const {
  return std::exp2(static_cast<double>(halfwidth_log2 + 1)) / samples_per_axis;
}

double GridSpec::halfwidth() const { return std::exp2(static_cast<double>(halfwidth_log2)); }

double GridSpec::cell_measure() const {
  double h = step();
  return dimension == 1 ? h : h * h;
}

std::size_t GridSpec::point_count() const {
  std::size_t n = static_cast<std::size_t>(samples_per_axis);
  return dimension == 1 ? n : n * n;
}

double GridSpec::coordinate(int i) const {
  return -halfwidth() + (static_cast<double>(i) + 0.5) * step();
}

std::size_t GridSpec::flat_index(int ix, int iy) const {
  return static_cast<std::size_t>(iy) * samples_per_axis + ix;
}

double GridSpec::radius(std::size_t flat) const {
  if (dimension == 1) return std::fabs(coordinate(static_cast<int>(flat)));
  int ix = static_cast<int>(flat % samples_per_axis);
  int iy = static_cast<int>(flat / samples_per_axis);
  return std::hypot(coordinate(ix), coordinate(iy));
}

GridSpec make_grid(int dimension, int halfwidth_log2, int samples_per_axis, int k_min,
                   int k_max) {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("make_grid: dimension must be 1 or 2");
  if (!is_power_of_two(samples_per_axis) || samples_per_axis < 4)
    throw std::invalid_argument("make_grid: samples_per_axis must be a power of two >= 4");
  if (!(k_min < 0 && 0 < k_max))
    throw std::invalid_argument("make_grid: need k_min < 0 < k_max");
  if (k_max > halfwidth_log2)
    throw std::invalid_argument("make_grid: k_max exceeds the domain halfwidth");
  GridSpec spec;
  spec.dimension = dimension;
  spec.halfwidth_log2 = halfwidth_log2;
  spec.samples_per_axis = samples_per_axis;
  spec.k_min = k_min;
  spec.k_max = k_max;
  return spec;
}

SampledFunction make_function(const GridSpec& spec,
                              const std::function<std::complex<double>(double, double)>& eval,
                              std::string label) {
  SampledFunction f;
  f.spec = spec;
  f.label = std::move(label);
  f.values.resize(spec.point_count());
  int n = spec.samples_per_axis;
  if (spec.dimension == 1) {
    for (int i = 0; i < n; ++i) f.values[i] = eval(spec.coordinate(i), 0.0);
  } else {
    for (int iy = 0; iy < n; ++iy) {
      double y = spec.coordinate(iy);
      for (int ix = 0; ix < n; ++ix)
        f.values[spec.flat_index(ix, iy)] = eval(spec.coordinate(ix), y);
    }
  }
  return f;
}

SampledFunction zero_function(const GridSpec& spec, std::string label) {
  SampledFunction f;
  f.spec = spec;
  f.label = std::move(label);
  f.values.assign(spec.point_count(), {0.0, 0.0});
  return f;
}

std::vector<double> absolute_values(const SampledFunction& f) {
  std::vector<double> out(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) out[i] = std::abs(f.values[i]);
  return out;
}

double max_abs(const SampledFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

namespace {

// Shared mask builder; comparisons run on squared radii, which are exact
// dyadic rationals for cell centers, so membership is deterministic.
DyadicMask build_mask(const GridSpec& spec, MaskKind kind, int k,
                      double lo_sq, double hi_sq) {
  DyadicMask mask;
  mask.spec = spec;
  mask.kind = kind;
  mask.k = k;
  std::size_t count = spec.point_count();
  int n = spec.samples_per_axis;
  for (std::size_t flat = 0; flat < count; ++flat) {
    double r_sq;
    if (spec.dimension == 1) {
      double x = spec.coordinate(static_cast<int>(flat));
      r_sq = x * x;
    } else {
      double x = spec.coordinate(static_cast<int>(flat % n));
      double y = spec.coordinate(static_cast<int>(flat / n));
      r_sq = x * x + y * y;
    }
    if (r_sq > lo_sq && r_sq <= hi_sq) mask.cells.push_back(static_cast<std::uint32_t>(flat));
  }
  return mask;
}

void check_shell_index(const GridSpec& spec, int k, const char* who) {
  if (k < spec.k_min || k > spec.k_max)
    throw std::invalid_argument(std::string(who) + ": shell index outside the grid range");
}

}  // namespace

DyadicMask annulus_mask(const GridSpec& spec, int k) {
  check_shell_index(spec, k, "annulus_mask");
  double hi = std::exp2(static_cast<double>(k));
  double lo = 0.5 * hi;
  return build_mask(spec, MaskKind::annulus, k, lo * lo, hi * hi);
}

DyadicMask ball_mask(const GridSpec& spec, int k) {
  check_shell_index(spec, k, "ball_mask");
  double hi = std::exp2(static_cast<double>(k));
  return build_mask(spec, MaskKind::ball, k, -1.0, hi * hi);
}

DyadicMask modified_mask(const GridSpec& spec, int k) {
  if (k < 0) throw std::invalid_argument("modified_mask: defined for k >= 0 only");
  if (k == 0) {
    DyadicMask m = ball_mask(spec, 0);
    m.kind = MaskKind::modified;
    return m;
  }
  DyadicMask m = annulus_mask(spec, k);
  m.kind = MaskKind::modified;
  return m;
}

double integrate(const SampledFunction& f) {
  double sum = 0.0;
  for (const auto& v : f.values) sum += v.real();
  return sum * f.spec.cell_measure();
}

double integrate(const SampledFunction& f, const DyadicMask& mask) {
  if (!(mask.spec == f.spec))
    throw std::invalid_argument("integrate: mask belongs to a different grid");
  double sum = 0.0;
  for (auto idx : mask.cells) sum += f.values[idx].real();
  return sum * f.spec.cell_measure();
}

double integrate_values(const GridSpec& spec, const std::vector<double>& values) {
  if (values.size() != spec.point_count())
    throw std::invalid_argument("integrate_values: size mismatch");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * spec.cell_measure();
}

}  // namespace herzlab
