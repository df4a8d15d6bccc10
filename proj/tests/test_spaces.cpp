#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "herzlab/fft.hpp"
#include "herzlab/grid.hpp"
#include "herzlab/littlewood_paley.hpp"
#include "herzlab/spaces.hpp"

using namespace herzlab;
using herzlab::testing::random_bumps;

namespace {

GridSpec default_grid() { return make_grid(1, 6, 16384, -20, 6); }

TLParams default_params(const GridSpec& spec) {
  TLParams params;
  params.herz = make_herz_params(spec, exponent_preset(spec, "const:0.3"), 2.0,
                                 exponent_preset(spec, "const:2"),
                                 weight_preset(spec, "const:1"), 0.1, 1.0);
  return params;
}

double max_abs_value(const SampledFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

// Restricts the spectrum of a rough seed to the radial window [lo, hi].
SampledFunction band_restricted(const GridSpec& spec, double lo, double hi, int index) {
  SampledFunction seed = random_bumps(spec, 97, index);
  return apply_multiplier(
      seed,
      radial_profile(spec, [lo, hi](double rho) { return (rho >= lo && rho <= hi) ? 1.0 : 0.0; }),
      "band-restricted");
}

SampledFunction scaled(const SampledFunction& f, double c) {
  SampledFunction out = f;
  for (auto& v : out.values) v *= c;
  return out;
}

SampledFunction sum_of(const SampledFunction& f, const SampledFunction& g) {
  SampledFunction out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += g.values[i];
  return out;
}

}  // namespace

TEST_CASE("disk-box overlap: closed-form areas") {
  const double r = 0.73;
  const double cx = 0.21, cy = -0.4;
  const double full = std::acos(-1.0) * r * r;

  // Containment, disjointness, and the quadrant/half splits through the center.
  CHECK(disk_box_overlap(r, cx, cy, cx - 5, cx + 5, cy - 5, cy + 5) == doctest::Approx(full).epsilon(1e-13));
  CHECK(disk_box_overlap(r, cx, cy, cx + 2, cx + 3, cy, cy + 1) == 0.0);
  CHECK(disk_box_overlap(r, cx, cy, cx, cx + 5, cy - 5, cy + 5) ==
        doctest::Approx(0.5 * full).epsilon(1e-13));
  CHECK(disk_box_overlap(r, cx, cy, cx, cx + 5, cy, cy + 5) ==
        doctest::Approx(0.25 * full).epsilon(1e-13));

  // A tiling of the plane recovers the full disk area exactly.
  double tiled = 0.0;
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) {
      const double x0 = -2.0 + 0.125 * i;
      const double y0 = -2.0 + 0.125 * j;
      tiled += disk_box_overlap(r, cx, cy, x0, x0 + 0.125, y0, y0 + 0.125);
    }
  }
  CHECK(tiled == doctest::Approx(full).epsilon(1e-12));

  // Mirror symmetry of an offset box.
  const double east = disk_box_overlap(1.0, 0.0, 0.0, 0.3, 1.4, -0.2, 0.5);
  const double west = disk_box_overlap(1.0, 0.0, 0.0, -1.4, -0.3, -0.2, 0.5);
  CHECK(east == doctest::Approx(west).epsilon(1e-13));

  // Independent subsample cross-check on an awkward straddling box.
  const double bx0 = -0.1, bx1 = 0.8, by0 = -1.0, by1 = -0.05;
  double sampled = 0.0;
  const int sub = 2000;
  const double hx = (bx1 - bx0) / sub, hy = (by1 - by0) / sub;
  for (int i = 0; i < sub; ++i) {
    const double x = bx0 + (i + 0.5) * hx;
    for (int j = 0; j < sub; ++j) {
      const double y = by0 + (j + 0.5) * hy;
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) < r * r) sampled += hx * hy;
    }
  }
  const double exact = disk_box_overlap(r, cx, cy, bx0, bx1, by0, by1);
  CHECK(std::fabs(exact - sampled) <= 0.01 * full);

  CHECK_THROWS_AS(disk_box_overlap(0.0, 0, 0, -1, 1, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(disk_box_overlap(1.0, 0, 0, 1, -1, -1, 1), std::invalid_argument);
}

TEST_CASE("resolution norm: zero input, packet localization, and the s-shift") {
  GridSpec spec = default_grid();
  FilterBank bank = build_resolution_of_unity(spec);
  TLParams params = default_params(spec);

  CHECK(tl_norm(zero_function(spec, "zero"), bank, params) == 0.0);

  // A packet whose spectrum sits in the narrow annulus around 2^4 meets at
  // most the three levels 3..5; every other piece vanishes to transform
  // roundoff (the filter runs its own forward pass over the synthesized
  // packet, so the off-band bins are ~1e-16 relative, not exact zeros).
  const int j0 = 4;
  SampledFunction packet = band_restricted(spec, 15.2, 16.8, 1);
  REQUIRE(max_abs_value(packet) > 0.0);
  for (int j = 0; j < bank.levels(); ++j) {
    if (j < j0 - 1 || j > j0 + 1) {
      CHECK(max_abs_value(filter_convolve(packet, bank, j)) <= 1e-15 * max_abs_value(packet));
    }
  }

  const double level_norm =
      grand_herz_morrey_norm(filter_convolve(packet, bank, j0), params.herz).value;
  REQUIRE(level_norm > 0.0);
  const double whole = tl_norm(packet, bank, params);
  const double ratio = whole / level_norm;
  CHECK(ratio >= 1.0 - 1e-12);
  CHECK(ratio <= std::pow(3.0, 1.0 / params.beta));

  // Raising s by one multiplies a level-j0 packet's norm by 2^{j0}; the
  // neighboring pieces carry at most ~1e-4 relative amplitude, so the factor
  // is clean to far better than the asserted 1e-3.
  TLParams shifted = params;
  shifted.s = 1.0;
  const double lifted = tl_norm(packet, bank, shifted);
  CHECK(std::fabs(lifted / whole / std::exp2(j0) - 1.0) <= 1e-3);

  // beta = inf takes the level max; for the packet this again pins the
  // dominant level.
  TLParams sup_params = params;
  sup_params.beta = std::numeric_limits<double>::infinity();
  const double sup_norm = tl_norm(packet, bank, sup_params);
  CHECK(sup_norm >= level_norm * (1.0 - 1e-12));
  CHECK(sup_norm <= level_norm * 1.01);

  CHECK_THROWS_AS(tl_norm(packet, build_admissible_pair(spec), params), std::invalid_argument);
}

TEST_CASE("admissible norm: plateau passthrough and agreement with the resolution norm") {
  GridSpec spec = default_grid();
  FilterBank resolution = build_resolution_of_unity(spec);
  FilterBank pair = build_admissible_pair(spec);
  TLParams params = default_params(spec);

  CHECK(tl_norm_admissible(zero_function(spec, "zero"), pair, params) == 0.0);

  // The band member is exactly one on [3/5, 5/3]*2^4, so the level-4 piece
  // of the packet is the packet itself up to transform roundoff.
  SampledFunction packet = band_restricted(spec, 15.2, 16.8, 2);
  SampledFunction piece = filter_convolve(packet, pair, 4);
  double worst = 0.0;
  for (std::size_t c = 0; c < packet.values.size(); ++c) {
    worst = std::max(worst, std::abs(piece.values[c] - packet.values[c]));
  }
  CHECK(worst <= 1e-13 * max_abs_value(packet));

  const double level_norm = grand_herz_morrey_norm(piece, params.herz).value;
  const double whole = tl_norm_admissible(packet, pair, params);
  CHECK(whole / level_norm >= 1.0 - 1e-12);
  CHECK(whole / level_norm <= std::pow(3.0, 1.0 / params.beta));

  // Cross-bank agreement over a small mixed corpus (the full-corpus spread
  // gate is 16; these members sit well inside it).
  std::vector<SampledFunction> corpus;
  for (int i = 0; i < 3; ++i) corpus.push_back(random_bumps(spec, 11, i));
  corpus.push_back(band_restricted(spec, 3.8, 4.2, 3));
  corpus.push_back(packet);
  EquivalenceReport report = equivalence_experiment(
      corpus, [&](const SampledFunction& f) { return tl_norm(f, resolution, params); },
      [&](const SampledFunction& f) { return tl_norm_admissible(f, pair, params); });
  CHECK(report.skipped == 0);
  CHECK(report.spread <= 16.0);

  CHECK_THROWS_AS(tl_norm_admissible(packet, resolution, params), std::invalid_argument);
}

TEST_CASE("peetre norm: domination, collapse at large decay, hypothesis flag") {
  GridSpec spec = default_grid();
  FilterBank resolution = build_resolution_of_unity(spec);
  FilterBank pair = build_admissible_pair(spec);
  TLParams params = default_params(spec);
  PeetreParams peetre;  // a = 4, t = 0.5 -> a*t = 2 > n = 1

  CHECK(tl_norm_peetre(zero_function(spec, "zero"), resolution, params, peetre).value == 0.0);

  std::vector<SampledFunction> corpus;
  corpus.push_back(random_bumps(spec, 23, 0));
  corpus.push_back(band_restricted(spec, 7.6, 8.4, 1));

  for (const SampledFunction& f : corpus) {
    const double plain = tl_norm(f, resolution, params);
    FlaggedValue sup_norm = tl_norm_peetre(f, resolution, params, peetre);
    CHECK(sup_norm.hypothesis_ok);
    CHECK(sup_norm.value >= plain * (1.0 - 1e-12));

    // A huge decay exponent collapses the sup onto the center point.
    PeetreParams huge = peetre;
    huge.a = 64.0;
    FlaggedValue collapsed = tl_norm_peetre(f, resolution, params, huge);
    CHECK(collapsed.value >= plain * (1.0 - 1e-12));
    CHECK(collapsed.value <= plain * 1.05);
  }

  // Agreement with the admissible-pair norm under the a*t > n hypothesis.
  EquivalenceReport report = equivalence_experiment(
      corpus,
      [&](const SampledFunction& f) { return tl_norm_peetre(f, pair, params, peetre).value; },
      [&](const SampledFunction& f) { return tl_norm_admissible(f, pair, params); });
  CHECK(report.spread <= 16.0);
  CHECK(report.min_ratio >= 1.0 - 1e-12);  // sup dominates the convolution

  // The value is still computed when a*t <= n; only the flag drops.
  PeetreParams weak = peetre;
  weak.a = 1.5;
  FlaggedValue flagged = tl_norm_peetre(corpus[0], resolution, params, weak);
  CHECK_FALSE(flagged.hypothesis_ok);
  CHECK(flagged.value > 0.0);

  CHECK_THROWS_AS(tl_norm_peetre(corpus[0], build_kernel_family(spec), params, peetre),
                  std::invalid_argument);
  PeetreParams bad = peetre;
  bad.a = 0.0;
  CHECK_THROWS_AS(tl_norm_peetre(corpus[0], resolution, params, bad), std::invalid_argument);
}

TEST_CASE("kernel displays: zero input and a rough bump") {
  GridSpec spec = default_grid();
  FilterBank family = build_kernel_family(spec);
  TLParams params = default_params(spec);
  PeetreParams peetre;

  NormComparison zero = kernel_norms(zero_function(spec, "zero"), family, params, peetre);
  for (const char* key : {"n1", "n2", "n3", "n4", "n5"}) {
    CHECK(zero.values.at(key) == 0.0);
  }
  CHECK(zero.max_spread() == 1.0);
  CHECK(zero.ordering_violation == 0.0);
  CHECK(zero.quadrature_ok);

  NormComparison cmp = kernel_norms(random_bumps(spec, 5, 0), family, params, peetre);
  for (const char* key : {"n1", "n2", "n3", "n4", "n5"}) {
    CHECK(cmp.values.at(key) > 0.0);
  }
  // The sup displays dominate their convolution counterparts pointwise, so
  // the violation is exactly zero and the norm-level orderings follow.
  CHECK(cmp.ordering_violation <= 1e-12);
  CHECK(cmp.values.at("n5") <= cmp.values.at("n4") * (1.0 + 1e-12));
  CHECK(cmp.values.at("n1") <= cmp.values.at("n2") * (1.0 + 1e-12));
  CHECK(cmp.max_spread() <= 64.0);
  CHECK(cmp.quadrature_ok);
}

TEST_CASE("kernel displays: packet pins the matching level") {
  GridSpec spec = default_grid();
  FilterBank family = build_kernel_family(spec);  // eps = 0.5, one moment
  TLParams params = default_params(spec);
  PeetreParams peetre;

  // Level 4's transfer peaks at rho = eps*2^4 = 8 (T is flat at its max, so
  // the narrow annulus sees an almost constant multiplier).  The neighboring
  // octaves contribute the l^2 tail {0.199, 0.529, 0.160, ...}, an aggregate
  // of about 1.16 relative to the peak level alone.
  SampledFunction packet = band_restricted(spec, 7.6, 8.4, 4);
  const double level_norm =
      grand_herz_morrey_norm(filter_convolve(packet, family, 4), params.herz).value;
  REQUIRE(level_norm > 0.0);

  NormComparison cmp = kernel_norms(packet, family, params, peetre);
  const double ratio = cmp.values.at("n5") / level_norm;
  CHECK(ratio >= 1.0 - 1e-12);
  CHECK(ratio <= 2.5);
  CHECK(cmp.ordering_violation <= 1e-12);
  CHECK(cmp.max_spread() <= 64.0);
}

TEST_CASE("kernel displays: flags, hypotheses, and rejects") {
  GridSpec spec = default_grid();
  FilterBank family = build_kernel_family(spec);
  TLParams params = default_params(spec);
  PeetreParams peetre;
  SampledFunction f = random_bumps(spec, 31, 2);

  TLParams coarse = params;
  coarse.t_per_octave = 3;
  NormComparison flagged = kernel_norms(f, family, coarse, peetre);
  CHECK_FALSE(flagged.quadrature_ok);
  CHECK(flagged.values.at("n1") > 0.0);

  TLParams broken = params;
  broken.t_per_octave = 0;
  CHECK_THROWS_AS(kernel_norms(f, family, broken, peetre), std::invalid_argument);

  // The kernel carries one vanishing moment, so s must stay below 2.
  TLParams rough = params;
  rough.s = 2.5;
  CHECK_THROWS_AS(kernel_norms(f, family, rough, peetre), std::invalid_argument);

  CHECK_THROWS_AS(kernel_norms(f, build_resolution_of_unity(spec), params, peetre),
                  std::invalid_argument);
  PeetreParams bad = peetre;
  bad.a = -1.0;
  CHECK_THROWS_AS(kernel_norms(f, family, params, bad), std::invalid_argument);
}

TEST_CASE("kernel displays: level max at beta = infinity") {
  GridSpec spec = default_grid();
  FilterBank family = build_kernel_family(spec);
  TLParams params = default_params(spec);
  params.beta = std::numeric_limits<double>::infinity();
  PeetreParams peetre;

  NormComparison cmp = kernel_norms(random_bumps(spec, 47, 1), family, params, peetre);
  for (const char* key : {"n1", "n2", "n3", "n4", "n5"}) {
    CHECK(cmp.values.at(key) > 0.0);
  }
  CHECK(cmp.ordering_violation <= 1e-12);
  CHECK(cmp.max_spread() <= 64.0);
}

TEST_CASE("kernel displays: two dimensions") {
  GridSpec spec = make_grid(2, 2, 64, -8, 2);
  FilterBank family = build_kernel_family(spec);
  TLParams params;
  params.herz = make_herz_params(spec, exponent_preset(spec, "const:0.3"), 2.0,
                                 exponent_preset(spec, "const:2"),
                                 weight_preset(spec, "const:1"), 0.1, 1.0);
  PeetreParams peetre;  // a*t = 2 = n: the flag semantics are strict

  NormComparison cmp = kernel_norms(random_bumps(spec, 59, 0), family, params, peetre);
  for (const char* key : {"n1", "n2", "n3", "n4", "n5"}) {
    CHECK(cmp.values.at(key) > 0.0);
  }
  CHECK(cmp.ordering_violation <= 1e-12);
  CHECK(cmp.max_spread() <= 64.0);

  // The Peetre flag is strict at a*t = n.
  FilterBank resolution = build_resolution_of_unity(spec);
  FlaggedValue at_boundary =
      tl_norm_peetre(random_bumps(spec, 59, 1), resolution, params, peetre);
  CHECK_FALSE(at_boundary.hypothesis_ok);
}

TEST_CASE("equivalence experiment: spreads, skips, and degenerate rows") {
  GridSpec spec = default_grid();
  FilterBank bank_a = build_resolution_of_unity(spec);
  FilterBank bank_b = build_resolution_of_unity(spec, 0.75, 1.5);
  TLParams params = default_params(spec);

  std::vector<SampledFunction> corpus;
  for (int i = 0; i < 3; ++i) corpus.push_back(random_bumps(spec, 71, i));

  // Identical functionals: every ratio is exactly one.
  NormFunctional norm_a = [&](const SampledFunction& f) { return tl_norm(f, bank_a, params); };
  EquivalenceReport same = equivalence_experiment(corpus, norm_a, norm_a);
  CHECK(same.spread == 1.0);
  CHECK(same.max_ratio == 1.0);
  CHECK(same.skipped == 0);

  // Scalar multiples leave the cross-bank ratio constant (homogeneity).
  std::vector<SampledFunction> rays;
  rays.push_back(corpus[0]);
  rays.push_back(scaled(corpus[0], 2.0));
  rays.push_back(scaled(corpus[0], 1000.0));
  rays.push_back(scaled(corpus[0], 1.0 / 128.0));
  NormFunctional norm_b = [&](const SampledFunction& f) { return tl_norm(f, bank_b, params); };
  EquivalenceReport homog = equivalence_experiment(rays, norm_a, norm_b);
  CHECK(homog.spread <= 1.0 + 1e-9);

  // Two distinct resolutions agree within the standard spread gate.
  EquivalenceReport cross = equivalence_experiment(corpus, norm_a, norm_b);
  CHECK(cross.spread <= 16.0);

  // A vanishing member is skipped and counted; the rest still report.
  std::vector<SampledFunction> with_zero = {corpus[0], zero_function(spec, "zero")};
  EquivalenceReport skipped = equivalence_experiment(with_zero, norm_a, norm_b);
  CHECK(skipped.skipped == 1);
  CHECK(skipped.rows[1].skipped);
  CHECK(skipped.rows[0].ratio > 0.0);
  CHECK(std::isfinite(skipped.spread));

  // One-sided vanishing is reported as an infinite spread, not hidden.
  EquivalenceReport lopsided = equivalence_experiment(
      corpus, [](const SampledFunction&) { return 1.0; },
      [](const SampledFunction&) { return 0.0; });
  CHECK(std::isinf(lopsided.spread));

  CHECK_THROWS_AS(equivalence_experiment({}, norm_a, norm_b), std::invalid_argument);
  CHECK_THROWS_AS(equivalence_experiment(corpus, NormFunctional{}, norm_b),
                  std::invalid_argument);
}

TEST_CASE("quasi-norm axioms: homogeneity and triangle constants") {
  GridSpec spec = default_grid();
  FilterBank bank = build_resolution_of_unity(spec);
  TLParams params = default_params(spec);

  SampledFunction f = random_bumps(spec, 83, 0);
  SampledFunction g = random_bumps(spec, 83, 1);

  const double base = tl_norm(f, bank, params);
  CHECK(tl_norm(scaled(f, 3.7), bank, params) == doctest::Approx(3.7 * base).epsilon(1e-9));
  CHECK(tl_norm(scaled(f, 1.0 / 128.0), bank, params) ==
        doctest::Approx(base / 128.0).epsilon(1e-9));

  // With beta = 2 and a constant inner exponent of 2 every layer is a true
  // norm, so the triangle constant is one.
  const double joint = tl_norm(sum_of(f, g), bank, params);
  CHECK(joint <= (tl_norm(f, bank, params) + tl_norm(g, bank, params)) * (1.0 + 1e-9));

  // With beta = 1/2 the pointwise aggregation is only a quasi-norm; the
  // constant 2^{1/beta - 1} = 2 bounds the triangle defect.
  TLParams quasi = params;
  quasi.beta = 0.5;
  const double joint_q = tl_norm(sum_of(f, g), bank, quasi);
  const double split_q = tl_norm(f, bank, quasi) + tl_norm(g, bank, quasi);
  CHECK(joint_q <= 2.0 * split_q * (1.0 + 1e-9));
}
