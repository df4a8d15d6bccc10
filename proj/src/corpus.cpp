#include "herzlab/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "herzlab/fft.hpp"
#include "herzlab/rng.hpp"

namespace herzlab {

namespace {

/// Smooth ramp used for the optional band projection: 1 below `lo`, 0 above
/// `hi`, glued by the standard exp(-1/s) partition in between, so the
/// projection is infinitely smooth and members keep rapid spatial decay.
double smooth_ramp_down(double r, double lo, double hi) {
  if (r <= lo) return 1.0;
  if (r >= hi) return 0.0;
  double s = (r - lo) / (hi - lo);
  double a = std::exp(-1.0 / (1.0 - s));
  double b = std::exp(-1.0 / s);
  return a / (a + b);
}

/// A wave packet pinned to dyadic level j: a gaussian envelope of width
/// 8 * 2^-j modulated at frequency near 2^j.  The spectrum is a pair of
/// gaussians of relative width 1/8 around +-2^j, so the packet concentrates
/// on one octave, and the envelope clears the outer tenth of the domain by
/// at least ten standard deviations on the default grids.
SampledFunction wave_packet(const GridSpec& spec, int level, double center_x, double center_y,
                            double frequency_jitter, double phase, double direction) {
  double carrier = std::exp2(level) * frequency_jitter;
  double sigma = 8.0 / std::exp2(level);
  double cphi = std::cos(direction), sphi = std::sin(direction);
  return make_function(spec, [&](double x, double y) {
    double dx = x - center_x;
    double dy = y - center_y;
    double along = spec.dimension == 1 ? dx : dx * cphi + dy * sphi;
    double dist2 = dx * dx + dy * dy;
    double envelope = std::exp(-dist2 / (2.0 * sigma * sigma));
    return std::complex<double>(std::cos(carrier * along + phase) * envelope, 0.0);
  });
}

/// Sum of a handful of gaussians with randomized signs, centers, and widths.
/// Widths are capped at 1/20 of the halfwidth so every bump clears the outer
/// tenth of the domain with at least eight standard deviations to spare.
SampledFunction gaussian_mixture(const GridSpec& spec, SampleRng& rng) {
  int bumps = rng.uniform_int(3, 5);
  double hw = spec.halfwidth();
  double h = spec.step();
  struct Bump {
    double amp, cx, cy, width;
  };
  std::vector<Bump> parts(static_cast<std::size_t>(bumps));
  for (Bump& b : parts) {
    b.amp = rng.uniform(0.2, 1.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    b.cx = rng.uniform(-0.5 * hw, 0.5 * hw);
    b.cy = spec.dimension == 2 ? rng.uniform(-0.5 * hw, 0.5 * hw) : 0.0;
    double lo = std::log(4.0 * h), hi = std::log(hw / 20.0);
    b.width = std::exp(rng.uniform(std::min(lo, hi), std::max(lo, hi)));
  }
  return make_function(spec, [&](double x, double y) {
    double acc = 0.0;
    for (const Bump& b : parts) {
      double d2 = (x - b.cx) * (x - b.cx) + (y - b.cy) * (y - b.cy);
      acc += b.amp * std::exp(-d2 / (2.0 * b.width * b.width));
    }
    return std::complex<double>(acc, 0.0);
  });
}

/// Radial profile concentrated on the dyadic shell D_k: a gaussian ring at
/// the shell midpoint 0.75 * 2^k whose width never drops below two cells
/// (thinner rings would fall between sample points).
SampledFunction annulus_profile(const GridSpec& spec, int k, double amplitude) {
  double radius = 0.75 * std::exp2(k);
  double width = std::max(std::exp2(k - 3), 2.0 * spec.step());
  return make_function(spec, [&](double x, double y) {
    double r = std::hypot(x, y);
    double d = (r - radius) / width;
    return std::complex<double>(amplitude * std::exp(-d * d), 0.0);
  });
}

/// Shell range the annulus family may target: rings thinner than a few cells
/// or pushed against the domain edge are skipped so members stay resolved
/// and edge-decayed.
std::pair<int, int> annulus_shell_range(const GridSpec& spec) {
  int lo = std::max(spec.k_min + 1,
                    static_cast<int>(std::ceil(std::log2(8.0 * spec.step()))));
  int hi = std::min(spec.k_max - 1, spec.halfwidth_log2 - 2);
  if (lo > hi) lo = hi;
  return {lo, hi};
}

enum class Family { packet, mixture, annulus };

std::vector<Family> enabled_families(const CorpusParams& params, bool allow_annulus) {
  std::vector<Family> out;
  if (params.wave_packets) out.push_back(Family::packet);
  if (params.gaussian_mixtures) out.push_back(Family::mixture);
  if (params.annulus_profiles && allow_annulus) out.push_back(Family::annulus);
  if (out.empty() && params.annulus_profiles) out.push_back(Family::annulus);
  if (out.empty()) throw std::invalid_argument("build_corpus: no corpus families enabled");
  return out;
}

/// One member.  The family cycles with `pick` and every random draw comes
/// from the stream keyed by (seed, stream), so corpora of different sizes
/// agree on their common prefix and samples never share randomness.
SampledFunction draw_member(const GridSpec& spec, const CorpusParams& params,
                            const std::vector<Family>& families, int pick,
                            std::uint64_t stream, const std::string& label_core) {
  Family family = families[static_cast<std::size_t>(pick) % families.size()];
  SampleRng rng(params.seed, stream);

  SampledFunction f;
  switch (family) {
    case Family::packet: {
      int cap = bank_level_cap(spec);
      int level = rng.uniform_int(1, std::max(1, cap - 2));
      double hw = spec.halfwidth();
      double cx = rng.uniform(-0.25 * hw, 0.25 * hw);
      double cy = spec.dimension == 2 ? rng.uniform(-0.25 * hw, 0.25 * hw) : 0.0;
      double jitter = rng.uniform(0.85, 1.15);
      double phase = rng.uniform(0.0, 2.0 * std::acos(-1.0));
      double direction = spec.dimension == 2 ? rng.uniform(0.0, 2.0 * std::acos(-1.0)) : 0.0;
      f = wave_packet(spec, level, cx, cy, jitter, phase, direction);
      f.label = "packet_" + label_core + "_j" + std::to_string(level);
      break;
    }
    case Family::mixture: {
      f = gaussian_mixture(spec, rng);
      f.label = "mixture_" + label_core;
      break;
    }
    case Family::annulus: {
      auto [lo, hi] = annulus_shell_range(spec);
      int k = rng.uniform_int(lo, hi);
      double amplitude = rng.uniform(0.25, 1.0);
      f = annulus_profile(spec, k, amplitude);
      f.label = "annulus_" + label_core + "_k" + std::to_string(k);
      break;
    }
  }

  if (params.band_limited) {
    int cap = bank_level_cap(spec);
    std::vector<double> profile = radial_profile(spec, [&](double rho) {
      return smooth_ramp_down(rho, std::exp2(cap - 1), std::exp2(cap));
    });
    std::string label = std::move(f.label);
    f = apply_multiplier(f, profile, label + "_band");
  }
  if (boundary_decay(f) > 1.0e-12) f.label += "(edge)";
  return f;
}

}  // namespace

double boundary_decay(const SampledFunction& f) {
  double peak = max_abs(f);
  if (peak == 0.0) return 0.0;
  double edge = 0.9 * f.spec.halfwidth();
  int n = f.spec.samples_per_axis;
  double worst = 0.0;
  if (f.spec.dimension == 1) {
    for (int i = 0; i < n; ++i) {
      if (std::fabs(f.spec.coordinate(i)) < edge) continue;
      worst = std::max(worst, std::abs(f.values[static_cast<std::size_t>(i)]));
    }
  } else {
    for (int iy = 0; iy < n; ++iy) {
      bool row_outer = std::fabs(f.spec.coordinate(iy)) >= edge;
      for (int ix = 0; ix < n; ++ix) {
        if (!row_outer && std::fabs(f.spec.coordinate(ix)) < edge) continue;
        worst = std::max(worst, std::abs(f.values[f.spec.flat_index(ix, iy)]));
      }
    }
  }
  return worst / peak;
}

std::vector<SampledFunction> build_corpus(const GridSpec& spec, const CorpusParams& params) {
  if (params.size < 1) throw std::invalid_argument("build_corpus: size must be positive");
  std::vector<Family> families = enabled_families(params, /*allow_annulus=*/true);
  std::vector<SampledFunction> out;
  out.reserve(static_cast<std::size_t>(params.size));
  for (int i = 0; i < params.size; ++i) {
    out.push_back(draw_member(spec, params, families, i, static_cast<std::uint64_t>(i),
                              std::to_string(i)));
  }
  return out;
}

std::vector<VectorFunction> build_vector_corpus(const GridSpec& spec, const CorpusParams& params,
                                                int members, double r) {
  if (params.size < 1) throw std::invalid_argument("build_vector_corpus: size must be positive");
  if (members < 1 || members > 65536)
    throw std::invalid_argument("build_vector_corpus: member count out of range");
  if (!(r > 1.0)) throw std::invalid_argument("build_vector_corpus: inner exponent must exceed 1");

  // Operator experiments want oscillating-plus-smooth stacks, so samples draw
  // from the packet and mixture families only (annulus rings are a scalar
  // stress family).  Member m of sample i uses the stream (i << 16) + m:
  // disjoint for distinct samples, prefix-stable in both counts.
  std::vector<Family> families = enabled_families(params, /*allow_annulus=*/false);
  std::vector<VectorFunction> out;
  out.reserve(static_cast<std::size_t>(params.size));
  for (int i = 0; i < params.size; ++i) {
    VectorFunction vf;
    vf.r = r;
    vf.members.reserve(static_cast<std::size_t>(members));
    for (int m = 0; m < members; ++m) {
      std::uint64_t stream = (static_cast<std::uint64_t>(i) << 16) | static_cast<std::uint64_t>(m);
      std::string core = "s" + std::to_string(i) + "m" + std::to_string(m);
      vf.members.push_back(draw_member(spec, params, families, i + m, stream, core));
    }
    out.push_back(std::move(vf));
  }
  return out;
}

namespace {

std::vector<double> parse_numbers(const std::string& args, std::size_t want_min,
                                  std::size_t want_max, const std::string& what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= args.size()) {
    std::size_t comma = args.find(',', pos);
    std::string piece =
        args.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(piece, &used));
      while (used < piece.size() && std::isspace(static_cast<unsigned char>(piece[used]))) ++used;
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw std::invalid_argument("function_preset: bad number '" + piece + "' in " + what);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.size() < want_min || out.size() > want_max)
    throw std::invalid_argument("function_preset: wrong argument count for " + what);
  return out;
}

}  // namespace

SampledFunction function_preset(const GridSpec& spec, const std::string& preset) {
  std::size_t colon = preset.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("function_preset: expected name:args, got '" + preset + "'");
  std::string name = preset.substr(0, colon);
  std::string args = preset.substr(colon + 1);

  if (name == "gaussian") {
    std::vector<double> v = parse_numbers(args, 2, 2, "gaussian");
    double c = v[0], width = v[1];
    if (!(width > 0.0)) throw std::invalid_argument("function_preset: gaussian width must be > 0");
    SampledFunction f = make_function(spec, [&](double x, double y) {
      double d2 = (x - c) * (x - c) + y * y;
      return std::complex<double>(std::exp(-d2 / (2.0 * width * width)), 0.0);
    });
    f.label = preset;
    return f;
  }
  if (name == "packet") {
    std::vector<double> v = parse_numbers(args, 2, 2, "packet");
    int level = static_cast<int>(std::lround(v[0]));
    if (level < 0 || level > bank_level_cap(spec))
      throw std::invalid_argument("function_preset: packet level outside the resolved range");
    SampledFunction f = wave_packet(spec, level, v[1], 0.0, 1.0, 0.0, 0.0);
    f.label = preset;
    return f;
  }
  if (name == "annulus") {
    std::vector<double> v = parse_numbers(args, 1, 1, "annulus");
    int k = static_cast<int>(std::lround(v[0]));
    if (k < spec.k_min || k > spec.k_max)
      throw std::invalid_argument("function_preset: annulus shell outside the grid range");
    SampledFunction f = annulus_profile(spec, k, 1.0);
    f.label = preset;
    return f;
  }
  if (name == "indicator") {
    std::vector<double> v = parse_numbers(args, 2, 2, "indicator");
    double a = v[0], b = v[1];
    if (!(a < b)) throw std::invalid_argument("function_preset: indicator needs a < b");
    // 1-D: the interval (a, b].  2-D: the radial annulus a < |x| <= b.
    SampledFunction f = make_function(spec, [&](double x, double y) {
      double t = spec.dimension == 1 ? x : std::hypot(x, y);
      return std::complex<double>(t > a && t <= b ? 1.0 : 0.0, 0.0);
    });
    f.label = preset;
    return f;
  }
  if (name == "corpus") {
    std::vector<double> v = parse_numbers(args, 1, 2, "corpus");
    CorpusParams params;
    int index = static_cast<int>(std::lround(v[0]));
    if (index < 0) throw std::invalid_argument("function_preset: corpus index must be >= 0");
    if (v.size() == 2) params.seed = static_cast<std::uint64_t>(std::llround(v[1]));
    params.size = index + 1;
    return build_corpus(spec, params).back();
  }
  throw std::invalid_argument("function_preset: unknown preset '" + name + "'");
}

}  // namespace herzlab
