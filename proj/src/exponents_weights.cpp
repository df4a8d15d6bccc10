#include "herzlab/exponents_weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "herzlab/lebesgue.hpp"

namespace herzlab {

namespace {

constexpr double kE = 2.718281828459045235360287471353;

struct Preset {
  std::string name;
  std::vector<double> args;
};

Preset parse_preset(const std::string& text, const char* who) {
  Preset p;
  auto colon = text.find(':');
  p.name = text.substr(0, colon);
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        p.args.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw std::invalid_argument(std::string(who) + ": bad numeric argument in '" + text + "'");
      }
    }
  }
  return p;
}

void fill_bounds(ExponentFunction& e) {
  e.q_minus = std::numeric_limits<double>::infinity();
  e.q_plus = -std::numeric_limits<double>::infinity();
  for (double v : e.values) {
    e.q_minus = std::min(e.q_minus, v);
    e.q_plus = std::max(e.q_plus, v);
  }
}

// Mean of a over the innermost cells (the 2^n cells adjacent to the origin).
double innermost_mean(const GridSpec& spec, const std::vector<double>& values) {
  int n = spec.samples_per_axis;
  int lo = n / 2 - 1, hi = n / 2;
  if (spec.dimension == 1) return 0.5 * (values[lo] + values[hi]);
  return 0.25 * (values[spec.flat_index(lo, lo)] + values[spec.flat_index(hi, lo)] +
                 values[spec.flat_index(lo, hi)] + values[spec.flat_index(hi, hi)]);
}

double outer_shell_mean(const GridSpec& spec, const std::vector<double>& values) {
  DyadicMask outer = annulus_mask(spec, spec.k_max);
  if (outer.cells.empty()) return innermost_mean(spec, values);
  double sum = 0.0;
  for (auto idx : outer.cells) sum += values[idx];
  return sum / static_cast<double>(outer.cells.size());
}

}  // namespace

ExponentFunction exponent_from_callable(const GridSpec& spec,
                                        const std::function<double(double, double)>& eval,
                                        std::optional<double> at_origin,
                                        std::optional<double> at_infinity) {
  ExponentFunction e;
  e.spec = spec;
  e.values.resize(spec.point_count());
  int n = spec.samples_per_axis;
  if (spec.dimension == 1) {
    for (int i = 0; i < n; ++i) e.values[i] = eval(spec.coordinate(i), 0.0);
  } else {
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        e.values[spec.flat_index(ix, iy)] = eval(spec.coordinate(ix), spec.coordinate(iy));
  }
  for (double v : e.values)
    if (!std::isfinite(v))
      throw std::invalid_argument("exponent_from_callable: non-finite sample");
  fill_bounds(e);
  e.value_at_origin = at_origin ? *at_origin : innermost_mean(spec, e.values);
  if (at_infinity) {
    e.value_at_infinity = *at_infinity;
  } else {
    e.value_at_infinity = outer_shell_mean(spec, e.values);
    e.infinity_estimated = true;
  }
  return e;
}

ExponentFunction exponent_preset(const GridSpec& spec, const std::string& preset) {
  Preset p = parse_preset(preset, "exponent_preset");
  if (p.name == "const") {
    if (p.args.size() != 1)
      throw std::invalid_argument("exponent_preset: const:p takes one argument");
    double v = p.args[0];
    return exponent_from_callable(spec, [v](double, double) { return v; }, v, v);
  }
  if (p.name == "log-perturbed") {
    if (p.args.size() != 3)
      throw std::invalid_argument("exponent_preset: log-perturbed takes a0,a_inf,c");
    double a0 = p.args[0], ainf = p.args[1], c = p.args[2];
    if (!(c > 0)) throw std::invalid_argument("exponent_preset: log-perturbed needs c > 0");
    auto eval = [a0, ainf, c](double x, double y) {
      double r = std::hypot(x, y);
      return ainf + (a0 - ainf) / std::log(kE + c * r);
    };
    return exponent_from_callable(spec, eval, a0, ainf);
  }
  throw std::invalid_argument("exponent_preset: unknown preset '" + preset + "'");
}

ExponentFunction conjugate_exponent(const ExponentFunction& q) {
  if (!(q.q_minus > 1.0))
    throw std::domain_error("conjugate_exponent: requires q_minus > 1");
  if (!std::isfinite(q.q_plus))
    throw std::domain_error("conjugate_exponent: requires q_plus < infinity");
  ExponentFunction out = q;
  for (double& v : out.values) v = v / (v - 1.0);
  fill_bounds(out);
  out.value_at_origin = q.value_at_origin / (q.value_at_origin - 1.0);
  out.value_at_infinity = q.value_at_infinity / (q.value_at_infinity - 1.0);
  out.infinity_estimated = q.infinity_estimated;
  return out;
}

Weight weight_from_callable(const GridSpec& spec,
                            const std::function<double(double, double)>& eval) {
  Weight w;
  w.spec = spec;
  w.values.resize(spec.point_count());
  int n = spec.samples_per_axis;
  if (spec.dimension == 1) {
    for (int i = 0; i < n; ++i) w.values[i] = eval(spec.coordinate(i), 0.0);
  } else {
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        w.values[spec.flat_index(ix, iy)] = eval(spec.coordinate(ix), spec.coordinate(iy));
  }
  for (double v : w.values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("weight_from_callable: weights must be finite and >= 0");
  return w;
}

Weight weight_preset(const GridSpec& spec, const std::string& preset) {
  Preset p = parse_preset(preset, "weight_preset");
  if (p.name == "const") {
    if (p.args.size() != 1) throw std::invalid_argument("weight_preset: const:c takes one argument");
    double c = p.args[0];
    if (!(c > 0)) throw std::invalid_argument("weight_preset: const weight must be positive");
    Weight w = weight_from_callable(spec, [c](double, double) { return c; });
    return w;
  }
  if (p.name == "power") {
    if (p.args.size() != 1)
      throw std::invalid_argument("weight_preset: power:gamma takes one argument");
    double g = p.args[0];
    Weight w = weight_from_callable(
        spec, [g](double x, double y) { return std::pow(std::hypot(x, y), g); });
    w.power = g;
    return w;
  }
  throw std::invalid_argument("weight_preset: unknown preset '" + preset + "'");
}

Weight inverse_weight(const Weight& w) {
  Weight out;
  out.spec = w.spec;
  out.values.resize(w.values.size());
  for (std::size_t i = 0; i < w.values.size(); ++i)
    out.values[i] = w.values[i] > 0.0 ? 1.0 / w.values[i]
                                      : std::numeric_limits<double>::infinity();
  if (w.power) out.power = -*w.power;
  return out;
}

Weight pow_weight(const Weight& w, double e) {
  Weight out;
  out.spec = w.spec;
  out.values.resize(w.values.size());
  for (std::size_t i = 0; i < w.values.size(); ++i) out.values[i] = std::pow(w.values[i], e);
  if (w.power) out.power = *w.power * e;
  return out;
}

Weight pow_weight(const Weight& w, const ExponentFunction& inv_q) {
  if (!(inv_q.spec == w.spec))
    throw std::invalid_argument("pow_weight: exponent on a different grid");
  Weight out;
  out.spec = w.spec;
  out.values.resize(w.values.size());
  for (std::size_t i = 0; i < w.values.size(); ++i)
    out.values[i] = std::pow(w.values[i], 1.0 / inv_q.values[i]);
  return out;
}

LogHolderDiagnostics log_holder_diagnostics(const ExponentFunction& a) {
  const GridSpec& spec = a.spec;
  LogHolderDiagnostics d;
  d.a_origin_used = a.value_at_origin;
  d.a_infinity_used = a.value_at_infinity;
  d.infinity_estimated = a.infinity_estimated;
  double h = spec.step();
  int n = spec.samples_per_axis;

  if (spec.dimension == 1) {
    int max_off = static_cast<int>(std::floor(0.5 / h));
    for (int i = 0; i < n; ++i) {
      for (int off = 1; off <= max_off && i + off < n; ++off) {
        double dist = off * h;
        if (dist >= 0.5) break;
        double c = std::fabs(a.values[i] - a.values[i + off]) * std::log(kE + 1.0 / dist);
        d.c_local = std::max(d.c_local, c);
      }
    }
  } else {
    // Offsets within distance 1/2, upper half-plane to count each pair once.
    std::vector<std::pair<int, int>> offsets;
    int max_off = static_cast<int>(std::floor(0.5 / h));
    for (int dy = 0; dy <= max_off; ++dy)
      for (int dx = (dy == 0 ? 1 : -max_off); dx <= max_off; ++dx) {
        double dist = std::hypot(dx * h, dy * h);
        if (dist > 0.0 && dist < 0.5) offsets.emplace_back(dx, dy);
      }
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        for (auto [dx, dy] : offsets) {
          int jx = ix + dx, jy = iy + dy;
          if (jx < 0 || jx >= n || jy < 0 || jy >= n) continue;
          double dist = std::hypot(dx * h, dy * h);
          double c = std::fabs(a.values[spec.flat_index(ix, iy)] -
                               a.values[spec.flat_index(jx, jy)]) *
                     std::log(kE + 1.0 / dist);
          d.c_local = std::max(d.c_local, c);
        }
  }

  for (std::size_t flat = 0; flat < a.values.size(); ++flat) {
    double r = spec.radius(flat);
    d.c_origin = std::max(d.c_origin,
                          std::fabs(a.values[flat] - a.value_at_origin) * std::log(kE + 1.0 / r));
    d.c_infinity = std::max(
        d.c_infinity, std::fabs(a.values[flat] - a.value_at_infinity) * std::log(kE + r));
  }
  return d;
}

BallSpec make_ball(const GridSpec& spec, double cx, double cy, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("make_ball: radius must be positive");
  BallSpec b;
  b.center_x = cx;
  b.center_y = cy;
  b.radius = radius;
  int n = spec.samples_per_axis;
  double h = spec.step(), hw = spec.halfwidth();
  auto axis_range = [&](double c, double half) {
    // cells i with |coordinate(i) - c| <= half
    int lo = static_cast<int>(std::ceil((c - half + hw) / h - 0.5));
    int hi = static_cast<int>(std::floor((c + half + hw) / h - 0.5));
    lo = std::max(lo, 0);
    hi = std::min(hi, n - 1);
    return std::make_pair(lo, hi);
  };
  if (spec.dimension == 1) {
    auto [lo, hi] = axis_range(cx, radius);
    if (lo <= hi) {
      b.ranges.emplace_back(static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi + 1));
      b.cell_count = static_cast<std::size_t>(hi - lo + 1);
    }
  } else {
    auto [ylo, yhi] = axis_range(cy, radius);
    for (int iy = ylo; iy <= yhi; ++iy) {
      double dy = spec.coordinate(iy) - cy;
      double chord_sq = radius * radius - dy * dy;
      if (chord_sq < 0.0) continue;
      auto [xlo, xhi] = axis_range(cx, std::sqrt(chord_sq));
      if (xlo > xhi) continue;
      b.ranges.emplace_back(static_cast<std::uint32_t>(spec.flat_index(xlo, iy)),
                            static_cast<std::uint32_t>(spec.flat_index(xhi, iy) + 1));
      b.cell_count += static_cast<std::size_t>(xhi - xlo + 1);
    }
  }
  b.covers_grid = (b.cell_count == spec.point_count());
  return b;
}

std::vector<BallSpec> make_ball_family(const GridSpec& spec, int center_stride) {
  if (center_stride < 1) throw std::invalid_argument("make_ball_family: bad stride");
  double h = spec.step();
  int n = spec.samples_per_axis;
  int log2n = 0;
  while ((1 << log2n) < n) ++log2n;
  int j_hi = spec.halfwidth_log2 + 7 - (spec.halfwidth_log2 + 1 - log2n);  // K+7-log2(h)
  std::vector<std::pair<double, double>> centers;
  centers.emplace_back(0.0, 0.0);
  for (int i = 0; i < n; i += center_stride) {
    if (spec.dimension == 1) {
      centers.emplace_back(spec.coordinate(i), 0.0);
    } else {
      for (int jy = 0; jy < n; jy += center_stride)
        centers.emplace_back(spec.coordinate(i), spec.coordinate(jy));
    }
  }
  std::vector<BallSpec> family;
  bool have_full = false;
  for (int j = 2; j <= j_hi; ++j) {
    double radius = std::exp2(static_cast<double>(j)) * h;
    for (const auto& [cx, cy] : centers) {
      BallSpec b = make_ball(spec, cx, cy, radius);
      if (b.cell_count == 0) continue;
      if (b.covers_grid) {
        if (have_full) continue;  // identical to an already-emitted ball
        have_full = true;
      }
      family.push_back(std::move(b));
    }
  }
  return family;
}

namespace {

double ball_quantity(const GridSpec& spec, const std::vector<double>& lhs_vals,
                     const ExponentFunction& lhs_q, const std::vector<double>& rhs_vals,
                     const ExponentFunction& rhs_q, const BallSpec& ball) {
  double measure = static_cast<double>(ball.cell_count) * spec.cell_measure();
  auto t1 = ModularTerms::from_values_ranges(spec, lhs_vals, lhs_q, ball.ranges);
  auto t2 = ModularTerms::from_values_ranges(spec, rhs_vals, rhs_q, ball.ranges);
  double n1 = luxemburg_from_terms(t1).norm;
  double n2 = luxemburg_from_terms(t2).norm;
  return n1 * n2 / measure;
}

}  // namespace

MuckenhouptReport muckenhoupt_constant(const Weight& w, const ExponentFunction& q,
                                       const std::vector<BallSpec>& family) {
  if (!(w.spec == q.spec))
    throw std::invalid_argument("muckenhoupt_constant: weight and exponent grids differ");
  const GridSpec& spec = w.spec;
  ExponentFunction qc = conjugate_exponent(q);
  Weight winv = inverse_weight(w);
  Weight w_split = pow_weight(w, q);           // w^{1/q(.)}
  Weight winv_split = inverse_weight(w_split);  // w^{-1/q(.)}

  MuckenhouptReport report;
  double best = -1.0, best_tilde = -1.0;
  for (const BallSpec& ball : family) {
    double plain = ball_quantity(spec, w.values, q, winv.values, qc, ball);
    double tilde = ball_quantity(spec, w_split.values, q, winv_split.values, qc, ball);
    if (plain > best) {
      best = plain;
      report.witness_center = ball.center_x;
      report.witness_radius = ball.radius;
    }
    best_tilde = std::max(best_tilde, tilde);
    if (ball.center_x == 0.0 && ball.center_y == 0.0)
      report.origin_trace.emplace_back(ball.radius, plain);
  }
  report.constant = best;
  report.tilde_constant = best_tilde;
  std::sort(report.origin_trace.begin(), report.origin_trace.end());
  double trace_min = std::numeric_limits<double>::infinity(), trace_max = 0.0;
  for (auto& [r, v] : report.origin_trace) {
    trace_min = std::min(trace_min, v);
    trace_max = std::max(trace_max, v);
  }
  // Operational divergence rule: the sup escapes the finiteness threshold, or
  // the origin-centered quantities vary by more than the same factor (the
  // family's small balls cannot stabilize the quantity).
  report.divergence_detected = best > report.divergence_threshold ||
                               (trace_max > 0.0 && trace_max / trace_min > report.divergence_threshold);
  return report;
}

namespace {

struct Fit {
  double slope = 0.0, intercept = 0.0, residual = 0.0;
  bool degenerate = false;
};

Fit fit_loglog(const std::vector<double>& u, const std::vector<double>& v) {
  Fit f;
  std::size_t n = u.size();
  if (n < 2) {
    f.degenerate = true;
    return f;
  }
  double su = 0, sv = 0, suu = 0, suv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    su += u[i];
    sv += v[i];
    suu += u[i] * u[i];
    suv += u[i] * v[i];
  }
  double det = n * suu - su * su;
  if (std::fabs(det) < 1e-12) {
    f.degenerate = true;
    return f;
  }
  f.slope = (n * suv - su * sv) / det;
  f.intercept = (sv * suu - su * suv) / det;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = v[i] - (f.intercept + f.slope * u[i]);
    rss += e * e;
  }
  f.residual = std::sqrt(rss / n);
  // All ratios (essentially) equal: flat fit.
  double vmin = *std::min_element(v.begin(), v.end());
  double vmax = *std::max_element(v.begin(), v.end());
  if (vmax - vmin < 1e-12) f.degenerate = true;
  return f;
}

// Largest slope d with v_i <= log(10) + d u_i for all i (u_i < 0).
double cap_slope(const std::vector<double>& u, const std::vector<double>& v) {
  double d = std::numeric_limits<double>::infinity();
  double log10c = std::log(10.0);
  for (std::size_t i = 0; i < u.size(); ++i) d = std::min(d, (v[i] - log10c) / u[i]);
  return d;
}

}  // namespace

DeltaFit estimate_delta_exponents(const Weight& w, const ExponentFunction& q,
                                  int center_stride) {
  const GridSpec& spec = w.spec;
  ExponentFunction qc = conjugate_exponent(q);
  Weight winv = inverse_weight(w);
  double hw = spec.halfwidth();
  std::vector<double> radii = {hw / 4.0, hw / 2.0, hw};
  // Origin-centered chains are the population the shell estimates consume
  // (nested dyadic balls around 0), and for radial weights they carry the
  // extremal scaling.  Off-origin chains (center_stride > 0) mix a second,
  // shallower scaling law into the regression and are opt-in diagnostics.
  std::vector<std::pair<double, double>> centers;
  centers.emplace_back(0.0, 0.0);
  int n = spec.samples_per_axis;
  if (center_stride > 0) {
    for (int i = 0; i < n; i += center_stride) {
      if (spec.dimension == 1) {
        centers.emplace_back(spec.coordinate(i), 0.0);
      } else {
        for (int jy = 0; jy < n; jy += center_stride)
          centers.emplace_back(spec.coordinate(i), spec.coordinate(jy));
      }
    }
  }

  std::vector<double> u, v1, v2;
  for (const auto& [cx, cy] : centers) {
    for (double r_base : radii) {
      BallSpec big = make_ball(spec, cx, cy, r_base);
      if (big.cell_count < 16) continue;
      auto big1 = luxemburg_from_terms(
          ModularTerms::from_values_ranges(spec, w.values, q, big.ranges));
      auto big2 = luxemburg_from_terms(
          ModularTerms::from_values_ranges(spec, winv.values, qc, big.ranges));
      if (big1.norm <= 0.0 || big2.norm <= 0.0) continue;
      for (int m = 1; m <= 8; ++m) {
        BallSpec small = make_ball(spec, cx, cy, std::ldexp(r_base, -m));
        if (small.cell_count < 8) continue;
        auto s1 = luxemburg_from_terms(
            ModularTerms::from_values_ranges(spec, w.values, q, small.ranges));
        auto s2 = luxemburg_from_terms(
            ModularTerms::from_values_ranges(spec, winv.values, qc, small.ranges));
        if (s1.norm <= 0.0 || s2.norm <= 0.0) continue;
        u.push_back(std::log(static_cast<double>(small.cell_count) /
                             static_cast<double>(big.cell_count)));
        v1.push_back(std::log(s1.norm / big1.norm));
        v2.push_back(std::log(s2.norm / big2.norm));
      }
    }
  }

  DeltaFit out;
  out.pairs_used = static_cast<int>(u.size());
  auto finish = [&](const std::vector<double>& v, double& delta, double& residual,
                    double& prefactor, bool& degenerate) {
    Fit f = fit_loglog(u, v);
    if (f.degenerate || f.slope <= 0.0) {
      delta = 1.0;
      residual = f.residual;
      prefactor = 1.0;
      degenerate = true;
      return;
    }
    double d = f.slope, c = std::exp(f.intercept);
    if (c > 10.0) {
      d = cap_slope(u, v);
      c = 10.0;
    }
    if (d > 1.0) d = 1.0;  // contract range (0, 1]
    delta = d;
    residual = f.residual;
    prefactor = c;
    degenerate = false;
  };
  finish(v1, out.delta1, out.residual1, out.prefactor1, out.degenerate1);
  finish(v2, out.delta2, out.residual2, out.prefactor2, out.degenerate2);
  return out;
}

WeightClassReport classify_weight(const Weight& w, const ExponentFunction& q) {
  auto family = make_ball_family(w.spec);
  MuckenhouptReport mc = muckenhoupt_constant(w, q, family);
  DeltaFit fit = estimate_delta_exponents(w, q);
  WeightClassReport r;
  r.constant = mc.constant;
  r.tilde_constant = mc.tilde_constant;
  r.witness_center = mc.witness_center;
  r.witness_radius = mc.witness_radius;
  r.delta1 = fit.delta1;
  r.delta2 = fit.delta2;
  r.fit_residual = std::max(fit.residual1, fit.residual2);
  r.divergence_detected = mc.divergence_detected;
  r.degenerate_fit = fit.degenerate1 || fit.degenerate2;
  return r;
}

}  // namespace herzlab
