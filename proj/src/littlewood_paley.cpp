// Spectral filter banks and the machinery built on them: a smooth dyadic
// resolution of unity, plateau band/low-pass pairs with their reproducing
// duals, exact and comb-sampled reconstruction checks, scale-weighted maximal
// functions evaluated by pruned tree descent, the eta-majorization
// diagnostic, and a two-parameter kernel family with prescribed vanishing
// moments and positivity annulus.

#include "herzlab/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace herzlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Smooth 0 -> 1 glue on [0, 1]: s -> e^{-1/s} / (e^{-1/s} + e^{-1/(1-s)}).
double glue(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

// Radial bump: 1 on [0, lo], smooth descent on (lo, hi), 0 beyond hi.
double bump_down(double rho, double lo, double hi) {
  if (rho <= lo) return 1.0;
  if (rho >= hi) return 0.0;
  return 1.0 - glue((rho - lo) / (hi - lo));
}

// Plateau profile: 0 outside [lo, hi], 1 on [flat_lo, flat_hi], glued edges.
double plateau(double rho, double lo, double flat_lo, double flat_hi, double hi) {
  if (rho <= lo || rho >= hi) return 0.0;
  if (rho < flat_lo) return glue((rho - lo) / (flat_lo - lo));
  if (rho <= flat_hi) return 1.0;
  return 1.0 - glue((rho - flat_hi) / (hi - flat_hi));
}

void check_level(const FilterBank& bank, int level, const char* who) {
  if (level < 0 || level >= bank.levels()) {
    throw std::invalid_argument(std::string(who) + ": level out of range");
  }
}

void check_match(const FilterBank& bank, const GridSpec& spec, const char* who) {
  if (!(bank.spec == spec)) {
    throw std::invalid_argument(std::string(who) + ": bank and function use different grids");
  }
}

}  // namespace

double FilterBank::resolved_band() const { return std::exp2(j_max); }

int bank_level_cap(const GridSpec& spec) {
  return static_cast<int>(std::floor(std::log2(kPi / spec.step()))) - 1;
}

// ---------------------------------------------------------------------------
// Bank constructions
// ---------------------------------------------------------------------------

FilterBank build_resolution_of_unity(const GridSpec& spec, double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("build_resolution_of_unity: need 0 < lo < hi");
  }
  const int cap = bank_level_cap(spec);
  if (cap < 3) {
    throw std::invalid_argument("build_resolution_of_unity: grid too coarse for three levels");
  }
  FilterBank bank;
  bank.kind = BankKind::resolution_of_unity;
  bank.spec = spec;
  bank.j_max = cap;
  bank.profile_name = "glue-bump[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
  bank.lower_bound_constant = 1.0;
  const auto base = [lo, hi](double rho) { return bump_down(rho, lo, hi); };
  bank.level_profiles.push_back(radial_profile(spec, base));
  for (int j = 1; j <= cap; ++j) {
    const double scale = std::exp2(-j);
    bank.level_profiles.push_back(radial_profile(
        spec, [&](double rho) { return base(scale * rho) - base(2.0 * scale * rho); }));
  }
  return bank;
}

FilterBank build_admissible_pair(const GridSpec& spec) {
  const int cap = bank_level_cap(spec);
  if (cap < 3) {
    throw std::invalid_argument("build_admissible_pair: grid too coarse for three levels");
  }
  FilterBank bank;
  bank.kind = BankKind::admissible_pair;
  bank.spec = spec;
  bank.j_max = cap;
  bank.profile_name = "plateau[1/2,3/5,5/3,2]";
  bank.lower_bound_constant = 1.0;  // profiles equal one on their plateaus
  // Low-pass member: 1 on |xi| <= 5/3, supported in |xi| <= 2.
  bank.level_profiles.push_back(
      radial_profile(spec, [](double rho) { return bump_down(rho, 5.0 / 3.0, 2.0); }));
  // Band members: dilations of the plateau supported in [1/2, 2], flat on
  // [3/5, 5/3]; consecutive plateaus overlap (6/5 < 5/3), so the squared sum
  // stays bounded below across the whole resolved band.
  for (int j = 1; j <= cap; ++j) {
    const double scale = std::exp2(-j);
    bank.level_profiles.push_back(radial_profile(spec, [scale](double rho) {
      return plateau(scale * rho, 0.5, 0.6, 5.0 / 3.0, 2.0);
    }));
  }
  return bank;
}

FilterBank build_admissible_dual(const FilterBank& pair) {
  if (pair.level_profiles.empty()) {
    throw std::invalid_argument("build_admissible_dual: empty bank");
  }
  const std::size_t bins = pair.level_profiles.front().size();
  std::vector<double> g(bins, 0.0);
  for (const auto& profile : pair.level_profiles) {
    for (std::size_t m = 0; m < bins; ++m) g[m] += profile[m] * profile[m];
  }

  // The identity is asserted on the resolved band; G must stay bounded below
  // there.  Outside the band all profiles vanish together and the dual is 0.
  const double band = pair.resolved_band();
  double min_g = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < bins; ++m) {
    if (bin_frequency(pair.spec, m) <= band) min_g = std::min(min_g, g[m]);
  }
  if (!(min_g > 1e-6)) {
    throw std::domain_error("build_admissible_dual: squared sum degenerates on the band");
  }

  FilterBank dual;
  dual.kind = BankKind::admissible_dual;
  dual.spec = pair.spec;
  dual.j_max = pair.j_max;
  dual.profile_name = pair.profile_name + "/squared-sum";
  dual.epsilon = pair.epsilon;
  dual.lower_bound_constant = min_g;
  dual.level_profiles.resize(pair.level_profiles.size());
  for (std::size_t j = 0; j < pair.level_profiles.size(); ++j) {
    dual.level_profiles[j].assign(bins, 0.0);
    for (std::size_t m = 0; m < bins; ++m) {
      if (g[m] > 1e-8) {
        dual.level_profiles[j][m] = pair.level_profiles[j][m] / g[m];
      }
    }
  }
  return dual;
}

SampledFunction filter_convolve(const SampledFunction& f, const FilterBank& bank, int level) {
  check_level(bank, level, "filter_convolve");
  check_match(bank, f.spec, "filter_convolve");
  return apply_multiplier(f, bank.level_profiles[static_cast<std::size_t>(level)],
                          "level_" + std::to_string(level) + "(" + f.label + ")");
}

// ---------------------------------------------------------------------------
// Reconstruction
// ---------------------------------------------------------------------------

SampledFunction calderon_reconstruct(const SampledFunction& f, const FilterBank& pair,
                                     const FilterBank& dual) {
  check_match(pair, f.spec, "calderon_reconstruct");
  check_match(dual, f.spec, "calderon_reconstruct");
  if (pair.levels() != dual.levels()) {
    throw std::invalid_argument("calderon_reconstruct: level counts differ");
  }
  SampledFunction acc = zero_function(f.spec, "reconstruction(" + f.label + ")");
  for (int j = 0; j < pair.levels(); ++j) {
    SampledFunction piece = filter_convolve(filter_convolve(f, dual, j), pair, j);
    for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += piece.values[i];
  }
  return acc;
}

namespace {

double values_l2(const std::vector<std::complex<double>>& v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

double band_spillover(const SampledFunction& f, double band) {
  const std::vector<std::complex<double>> hat = fft_forward(f.spec, f.values);
  double total = 0.0, outside = 0.0;
  for (std::size_t m = 0; m < hat.size(); ++m) {
    const double e = std::norm(hat[m]);
    total += e;
    if (bin_frequency(f.spec, m) > band) outside += e;
  }
  return total > 0.0 ? outside / total : 0.0;
}

ReconstructionReport reconstruction_report(const SampledFunction& f,
                                           const SampledFunction& recon, double band) {
  ReconstructionReport report;
  std::vector<std::complex<double>> diff(f.values.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = recon.values[i] - f.values[i];
  const double denom = values_l2(f.values);
  report.rel_l2_error = denom > 0.0 ? values_l2(diff) / denom : values_l2(diff);
  report.spillover = band_spillover(f, band);
  return report;
}

}  // namespace

ReconstructionReport calderon_check(const SampledFunction& f, const FilterBank& pair,
                                    const FilterBank& dual) {
  return reconstruction_report(f, calderon_reconstruct(f, pair, dual), pair.resolved_band());
}

ReconstructionReport calderon_check_sampled(const SampledFunction& f, const FilterBank& pair,
                                            const FilterBank& dual) {
  check_match(pair, f.spec, "calderon_check_sampled");
  check_match(dual, f.spec, "calderon_check_sampled");
  if (pair.levels() != dual.levels()) {
    throw std::invalid_argument("calderon_check_sampled: level counts differ");
  }
  const GridSpec& spec = f.spec;
  const int n = spec.samples_per_axis;
  const double h = spec.step();

  SampledFunction acc = zero_function(spec, "sampled_reconstruction(" + f.label + ")");
  for (int j = 0; j < pair.levels(); ++j) {
    SampledFunction coeffs = filter_convolve(f, dual, j);
    // Keep only the dyadic sublattice of spacing 2^{-j} (never finer than the
    // grid) and compensate the discarded mass, so the masked field carries the
    // spectral copies of the comb; the analysis profile then isolates the
    // principal copy, which aliasing cannot reach: the copies sit at distance
    // 2 pi 2^j while the level's support ends at 2^{j+1}.
    int stride = static_cast<int>(std::lround(std::exp2(-j) / h));
    stride = std::max(1, std::min(stride, n));
    const double gain = std::pow(static_cast<double>(stride), spec.dimension);
    SampledFunction comb = zero_function(spec);
    if (spec.dimension == 1) {
      for (int i = 0; i < n; i += stride) {
        comb.values[static_cast<std::size_t>(i)] =
            gain * coeffs.values[static_cast<std::size_t>(i)];
      }
    } else {
      for (int iy = 0; iy < n; iy += stride) {
        for (int ix = 0; ix < n; ix += stride) {
          comb.values[spec.flat_index(ix, iy)] = gain * coeffs.values[spec.flat_index(ix, iy)];
        }
      }
    }
    SampledFunction piece = filter_convolve(comb, pair, j);
    for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += piece.values[i];
  }
  return reconstruction_report(f, acc, pair.resolved_band());
}

// ---------------------------------------------------------------------------
// Scale-weighted sup
// ---------------------------------------------------------------------------

namespace {

// Range-max tree over one contiguous row of amplitudes; descent prunes with
// the weight of the closest possible offset, so the exact sup survives.
class RowMaxTree {
 public:
  explicit RowMaxTree(const double* amp, int n) : n_(n), tree_(2 * static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) tree_[static_cast<std::size_t>(n + i)] = amp[i];
    for (int i = n - 1; i >= 1; --i) {
      tree_[static_cast<std::size_t>(i)] =
          std::max(tree_[static_cast<std::size_t>(2 * i)], tree_[static_cast<std::size_t>(2 * i + 1)]);
    }
  }

  double root() const { return n_ > 0 ? tree_[1] : 0.0; }

  // Updates `best` with sup over the row of amp[y] * weight(dist(x, y)),
  // where dist includes a fixed cross-axis offset `dy` (physical units).
  void sup(double h, int ix, double dy, double t, double a, double& best) const {
    descend(1, 0, n_, h, ix, dy, t, a, best);
  }

 private:
  static double weight(double dist, double t, double a) {
    return std::pow(1.0 + dist / t, -a);
  }

  void descend(std::size_t node, int lo, int hi, double h, int ix, double dy, double t,
               double a, double& best) const {
    int gap = 0;
    if (lo > ix) gap = lo - ix;
    if (ix >= hi) gap = ix - hi + 1;
    const double least = std::hypot(gap * h, dy);
    if (tree_[node] * weight(least, t, a) <= best) return;
    if (hi - lo == 1) {
      const double dist = std::hypot((ix - lo) * h, dy);
      best = std::max(best, tree_[node] * weight(dist, t, a));
      return;
    }
    const int mid = lo + (hi - lo) / 2;
    // Nearer child first so the prune threshold tightens early.
    if (ix < mid) {
      descend(2 * node, lo, mid, h, ix, dy, t, a, best);
      descend(2 * node + 1, mid, hi, h, ix, dy, t, a, best);
    } else {
      descend(2 * node + 1, mid, hi, h, ix, dy, t, a, best);
      descend(2 * node, lo, mid, h, ix, dy, t, a, best);
    }
  }

  int n_;
  std::vector<double> tree_;
};

}  // namespace

std::vector<double> weighted_sup(const GridSpec& spec, const std::vector<double>& amplitudes,
                                 double t, double a) {
  if (amplitudes.size() != spec.point_count()) {
    throw std::invalid_argument("weighted_sup: amplitude count does not match the grid");
  }
  if (!(t > 0.0) || !(a > 0.0)) {
    throw std::invalid_argument("weighted_sup: scale and decay must be positive");
  }
  const int n = spec.samples_per_axis;
  const double h = spec.step();
  std::vector<double> out(amplitudes.size(), 0.0);

  if (spec.dimension == 1) {
    RowMaxTree tree(amplitudes.data(), n);
    for (int ix = 0; ix < n; ++ix) {
      double best = amplitudes[static_cast<std::size_t>(ix)];
      tree.sup(h, ix, 0.0, t, a, best);
      out[static_cast<std::size_t>(ix)] = best;
    }
    return out;
  }

  std::vector<RowMaxTree> rows;
  rows.reserve(static_cast<std::size_t>(n));
  double global_max = 0.0;
  for (int j = 0; j < n; ++j) {
    rows.emplace_back(amplitudes.data() + static_cast<std::size_t>(j) * n, n);
    global_max = std::max(global_max, rows.back().root());
  }
  for (int jy = 0; jy < n; ++jy) {
    for (int ix = 0; ix < n; ++ix) {
      double best = amplitudes[spec.flat_index(ix, jy)];
      // Rows in increasing vertical distance; once even the global maximum
      // cannot beat the running sup at that distance, no farther row can.
      for (int step = 0; step < n; ++step) {
        const int up = jy - step, down = jy + step;
        if (up < 0 && down >= n) break;
        const double dy = step * h;
        if (global_max * std::pow(1.0 + dy / t, -a) <= best) break;
        if (up >= 0) rows[static_cast<std::size_t>(up)].sup(h, ix, dy, t, a, best);
        if (step > 0 && down < n) rows[static_cast<std::size_t>(down)].sup(h, ix, dy, t, a, best);
      }
      out[spec.flat_index(ix, jy)] = best;
    }
  }
  return out;
}

SampledFunction peetre_maximal(const SampledFunction& f, const FilterBank& bank, int level,
                               double a) {
  check_level(bank, level, "peetre_maximal");
  if (!(a > 0.0)) {
    throw std::invalid_argument("peetre_maximal: decay exponent must be positive");
  }
  SampledFunction piece = filter_convolve(f, bank, level);
  std::vector<double> sup =
      weighted_sup(f.spec, absolute_values(piece), std::exp2(-level), a);
  SampledFunction out;
  out.spec = f.spec;
  out.label = "peetre_" + std::to_string(level) + "(" + f.label + ")";
  out.values.assign(sup.begin(), sup.end());
  return out;
}

// ---------------------------------------------------------------------------
// Eta majorization
// ---------------------------------------------------------------------------

EtaMajorizationReport eta_majorization_check(const SampledFunction& f, const FilterBank& bank,
                                             int j, double r, double m) {
  check_level(bank, j, "eta_majorization_check");
  if (!(r > 0.0)) {
    throw std::invalid_argument("eta_majorization_check: integrability must be positive");
  }
  if (!(m > f.spec.dimension)) {
    throw std::invalid_argument("eta_majorization_check: decay order must exceed the dimension");
  }
  const GridSpec& spec = f.spec;
  const double big_n = std::exp2(j);
  const int dim = spec.dimension;
  SampledFunction u = filter_convolve(f, bank, j);

  // (eta_{N,m} * |u|^r)^{1/r} computed once; the level loop only rescales by
  // the max(1, (N/R)^m) prefactor and swaps the outer filter.  Both sides of
  // the comparison convolve on the periodic extension of the domain, so the
  // boundary geometry cancels in the ratio instead of polluting it.
  SampledFunction powered = u;
  for (auto& v : powered.values) v = std::pow(std::abs(v), r);
  const auto eta = [&](double dist) {
    return std::pow(big_n, dim) * std::pow(1.0 + big_n * dist, -m);
  };
  const int n = spec.samples_per_axis;
  const double h = spec.step();
  const double width = 2.0 * spec.halfwidth();
  const auto wrapped = [&](int l) {
    double d = l * h;
    return d > 0.5 * width ? d - width : d;
  };
  std::vector<std::complex<double>> kernel(spec.point_count());
  if (dim == 1) {
    for (int l = 0; l < n; ++l) {
      kernel[static_cast<std::size_t>(l)] = eta(std::abs(wrapped(l)));
    }
  } else {
    for (int ly = 0; ly < n; ++ly) {
      for (int lx = 0; lx < n; ++lx) {
        kernel[spec.flat_index(lx, ly)] = eta(std::hypot(wrapped(lx), wrapped(ly)));
      }
    }
  }
  std::vector<std::complex<double>> transfer = fft_forward(spec, kernel);
  std::vector<double> profile(transfer.size());
  const double quad = std::pow(h, dim);
  for (std::size_t i = 0; i < transfer.size(); ++i) profile[i] = transfer[i].real() * quad;
  SampledFunction smoothed = apply_multiplier(powered, profile);
  std::vector<double> rhs_base(smoothed.values.size());
  for (std::size_t i = 0; i < rhs_base.size(); ++i) {
    rhs_base[i] = std::pow(std::max(smoothed.values[i].real(), 0.0), 1.0 / r);
  }

  EtaMajorizationReport report;
  report.level_j = j;
  for (int jp = 0; jp < bank.levels(); ++jp) {
    const double big_r = std::exp2(jp);
    const double prefactor = std::max(1.0, std::pow(big_n / big_r, m));
    SampledFunction lhs = filter_convolve(u, bank, jp);
    for (std::size_t i = 0; i < lhs.values.size(); ++i) {
      const double denom = prefactor * rhs_base[i];
      if (denom <= 1e-300) continue;
      const double ratio = std::abs(lhs.values[i]) / denom;
      if (ratio > report.max_ratio) {
        report.max_ratio = ratio;
        report.worst_level_jp = jp;
        report.worst_x = f.spec.coordinate(static_cast<int>(i) % f.spec.samples_per_axis);
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Kernel families
// ---------------------------------------------------------------------------

namespace {

double band_transfer(double rho, double eps, int m0) {
  const double s = rho / eps;
  // (rho/eps)^{2 m0} exp(1 - (rho/eps)^2): a zero of order 2 m0 at the
  // origin and a positive bump peaking at rho = sqrt(m0) eps.
  return std::pow(s * s, m0) * std::exp(1.0 - s * s);
}

int stored_m0(const FilterBank& family) {
  return (family.vanishing_moments + 1 + 1) / 2;  // ceil((S + 1) / 2)
}

}  // namespace

FilterBank build_kernel_family(const GridSpec& spec, double eps, int moments) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("build_kernel_family: spectral scale must be positive");
  }
  if (moments < -1) {
    throw std::invalid_argument("build_kernel_family: moment order must be at least -1");
  }
  const int cap = bank_level_cap(spec);
  if (cap < 3) {
    throw std::invalid_argument("build_kernel_family: grid too coarse for three levels");
  }
  // The positivity annulus of the top level must stay resolved.
  if (2.0 * eps * std::exp2(cap) > nyquist_frequency(spec)) {
    throw std::domain_error("build_kernel_family: top-level annulus exceeds Nyquist");
  }
  const int m0 = std::max(0, (moments + 2) / 2);  // ceil((S + 1) / 2)

  FilterBank family;
  family.kind = BankKind::kernel_family;
  family.spec = spec;
  family.j_max = cap;
  family.epsilon = eps;
  family.vanishing_moments = 2 * m0 - 1;
  family.profile_name = "gaussian-annulus";
  family.level_profiles.push_back(radial_profile(spec, [eps](double rho) {
    const double s = rho / eps;
    return std::exp(-s * s);
  }));
  for (int j = 1; j <= cap; ++j) {
    const double scale = std::exp2(-j);
    family.level_profiles.push_back(radial_profile(
        spec, [&](double rho) { return band_transfer(scale * rho, eps, m0); }));
  }
  return family;
}

std::vector<double> kernel_transfer_at_scale(const FilterBank& family, double t) {
  if (family.kind != BankKind::kernel_family) {
    throw std::invalid_argument("kernel_transfer_at_scale: not a kernel family");
  }
  if (!(t > 0.0)) {
    throw std::invalid_argument("kernel_transfer_at_scale: scale must be positive");
  }
  const int m0 = stored_m0(family);
  const double eps = family.epsilon;
  return radial_profile(family.spec,
                        [&](double rho) { return band_transfer(t * rho, eps, m0); });
}

SampledFunction kernel_convolve_scale(const SampledFunction& f, const FilterBank& family,
                                      double t) {
  check_match(family, f.spec, "kernel_convolve_scale");
  return apply_multiplier(f, kernel_transfer_at_scale(family, t),
                          "kernel_scale(" + f.label + ")");
}

SampledFunction kernel_peetre(const SampledFunction& f, const FilterBank& family, double t,
                              double a) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("kernel_peetre: decay exponent must be positive");
  }
  SampledFunction piece = kernel_convolve_scale(f, family, t);
  std::vector<double> sup = weighted_sup(f.spec, absolute_values(piece), t, a);
  SampledFunction out;
  out.spec = f.spec;
  out.label = "kernel_peetre(" + f.label + ")";
  out.values.assign(sup.begin(), sup.end());
  return out;
}

SampledFunction kernel_peetre_base(const SampledFunction& f, const FilterBank& family,
                                   double a) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("kernel_peetre_base: decay exponent must be positive");
  }
  SampledFunction piece = filter_convolve(f, family, 0);
  std::vector<double> sup = weighted_sup(f.spec, absolute_values(piece), 1.0, a);
  SampledFunction out;
  out.spec = f.spec;
  out.label = "kernel_peetre_base(" + f.label + ")";
  out.values.assign(sup.begin(), sup.end());
  return out;
}

std::vector<std::complex<double>> kernel_space_samples(const FilterBank& family, int level) {
  check_level(family, level, "kernel_space_samples");
  const GridSpec& spec = family.spec;
  const int n = spec.samples_per_axis;
  const std::vector<double>& profile = family.level_profiles[static_cast<std::size_t>(level)];

  // k(x_i) = (2 pi)^{-dim} sum_m profile_m e^{i x_i xi_m} dxi^dim.  Folding
  // the cell-centered offset of x_i into a per-axis phase turns this into a
  // plain inverse DFT; the trailing factor is dxi^dim N^dim / (2 pi)^dim
  // = 1 / h^dim against the normalized inverse.
  std::vector<std::complex<double>> shifted(profile.size());
  const auto axis_phase = [&](int m) {
    const double angle = 2.0 * kPi * signed_bin(m, n) * (1.0 - n) / (2.0 * n);
    return std::polar(1.0, angle);
  };
  if (spec.dimension == 1) {
    for (int m = 0; m < n; ++m) {
      shifted[static_cast<std::size_t>(m)] = profile[static_cast<std::size_t>(m)] * axis_phase(m);
    }
  } else {
    for (int my = 0; my < n; ++my) {
      for (int mx = 0; mx < n; ++mx) {
        const std::size_t flat = static_cast<std::size_t>(my) * n + mx;
        shifted[flat] = profile[flat] * axis_phase(mx) * axis_phase(my);
      }
    }
  }
  std::vector<std::complex<double>> samples = fft_inverse(spec, shifted);
  const double norm = std::pow(spec.step(), spec.dimension);
  for (auto& s : samples) s /= norm;
  return samples;
}

SampledFunction mollify(const SampledFunction& f, double n_dilation) {
  if (!(n_dilation > 0.0)) {
    throw std::invalid_argument("mollify: dilation must be positive");
  }
  const double denom = 4.0 * n_dilation * n_dilation;
  return apply_multiplier(
      f, radial_profile(f.spec, [denom](double rho) { return std::exp(-rho * rho / denom); }),
      "mollify(" + f.label + ")");
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

std::string kind_name(BankKind kind) {
  switch (kind) {
    case BankKind::resolution_of_unity: return "resolution_of_unity";
    case BankKind::admissible_pair: return "admissible_pair";
    case BankKind::admissible_dual: return "admissible_dual";
    case BankKind::kernel_family: return "kernel_family";
  }
  throw std::invalid_argument("bank kind: unknown value");
}

BankKind kind_from_name(const std::string& name) {
  if (name == "resolution_of_unity") return BankKind::resolution_of_unity;
  if (name == "admissible_pair") return BankKind::admissible_pair;
  if (name == "admissible_dual") return BankKind::admissible_dual;
  if (name == "kernel_family") return BankKind::kernel_family;
  throw std::invalid_argument("bank kind: unknown name '" + name + "'");
}

}  // namespace

nlohmann::json bank_to_json(const FilterBank& bank) {
  nlohmann::json j;
  j["kind"] = kind_name(bank.kind);
  j["grid"] = {{"dimension", bank.spec.dimension},
               {"halfwidth_log2", bank.spec.halfwidth_log2},
               {"samples_per_axis", bank.spec.samples_per_axis},
               {"k_min", bank.spec.k_min},
               {"k_max", bank.spec.k_max}};
  j["j_max"] = bank.j_max;
  j["profile_name"] = bank.profile_name;
  j["epsilon"] = bank.epsilon;
  j["vanishing_moments"] = bank.vanishing_moments;
  j["lower_bound_constant"] = bank.lower_bound_constant;
  j["level_profiles"] = bank.level_profiles;
  return j;
}

FilterBank bank_from_json(const nlohmann::json& j) {
  FilterBank bank;
  bank.kind = kind_from_name(j.at("kind").get<std::string>());
  const nlohmann::json& g = j.at("grid");
  bank.spec = make_grid(g.at("dimension").get<int>(), g.at("halfwidth_log2").get<int>(),
                        g.at("samples_per_axis").get<int>(), g.at("k_min").get<int>(),
                        g.at("k_max").get<int>());
  bank.j_max = j.at("j_max").get<int>();
  bank.profile_name = j.at("profile_name").get<std::string>();
  bank.epsilon = j.at("epsilon").get<double>();
  bank.vanishing_moments = j.at("vanishing_moments").get<int>();
  bank.lower_bound_constant = j.at("lower_bound_constant").get<double>();
  bank.level_profiles = j.at("level_profiles").get<std::vector<std::vector<double>>>();
  for (const auto& profile : bank.level_profiles) {
    if (profile.size() != bank.spec.point_count()) {
      throw std::invalid_argument("bank_from_json: profile size does not match the grid");
    }
  }
  return bank;
}

}  // namespace herzlab
