#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <limits>

#include "doctest.h"
#include "helpers.hpp"
#include "herzlab/exponents_weights.hpp"
#include "herzlab/grid.hpp"
#include "herzlab/lebesgue.hpp"

using namespace herzlab;
using herzlab::testing::random_bumps;

namespace {

GridSpec default_grid() { return make_grid(1, 6, 16384, -20, 6); }

SampledFunction interval(const GridSpec& spec, double a, double b) {
  return make_function(
      spec, [a, b](double x, double) { return (x >= a && x <= b) ? 1.0 : 0.0; }, "interval");
}

}  // namespace

TEST_CASE("modular: indicators and piecewise closed forms") {
  GridSpec spec = default_grid();
  ExponentFunction q2 = exponent_preset(spec, "const:2");
  SampledFunction box = interval(spec, 0.0, 1.0);
  double h = spec.step();

  CHECK(std::fabs(modular(box, q2, 1.0) - 1.0) <= h);
  CHECK(modular(box, q2, 1e8) <= 1e-10);
  CHECK_THROWS_AS(modular(box, q2, 0.0), std::invalid_argument);

  // Two blocks under a jumping exponent: (1/2)^2 * 1 + (2/2)^3 * 1.
  SampledFunction two = make_function(
      spec,
      [](double x, double) {
        if (x >= 0.0 && x <= 1.0) return 1.0;
        if (x >= 2.0 && x <= 3.0) return 2.0;
        return 0.0;
      },
      "two-blocks");
  ExponentFunction qjump = exponent_from_callable(
      spec, [](double x, double) { return x > 1.5 ? 3.0 : 2.0; }, 2.0, 3.0);
  CHECK(std::fabs(modular(two, qjump, 2.0) - 1.25) <= 2.0 * h);
}

TEST_CASE("norm of a unit-measure indicator is 1 for every constant exponent") {
  GridSpec spec = default_grid();
  SampledFunction box = interval(spec, 0.0, 1.0);
  for (double p : {0.5, 1.0, 2.0, 4.0}) {
    ExponentFunction q = exponent_preset(spec, "const:" + std::to_string(p));
    double n = luxemburg_norm(box, q).norm;
    CHECK(std::fabs(n - 1.0) <= spec.step());
    CHECK(n == doctest::Approx(1.0).epsilon(1e-11));
  }
}

TEST_CASE("norm of the zero function is 0 without iteration") {
  GridSpec spec = default_grid();
  ExponentFunction q = exponent_preset(spec, "const:2");
  auto r = luxemburg_norm(zero_function(spec), q);
  CHECK(r.norm == 0.0);
  CHECK(r.iterations == 0);
}

TEST_CASE("gaussian norm matches its closed form") {
  GridSpec spec = default_grid();
  ExponentFunction q = exponent_preset(spec, "const:2");
  SampledFunction f =
      make_function(spec, [](double x, double) { return std::exp(-x * x); }, "gaussian");
  double expect = std::pow(M_PI / 2.0, 0.25);
  CHECK(std::fabs(luxemburg_norm(f, q).norm - expect) <= 1e-4);
}

TEST_CASE("bracket and unit-modular contracts hold at the returned norm") {
  GridSpec spec = default_grid();
  ExponentFunction q = exponent_preset(spec, "log-perturbed:2.2,2,1");
  SampledFunction f = random_bumps(spec, 11, 0);
  auto r = luxemburg_norm(f, q);
  REQUIRE(r.norm > 0.0);
  auto terms = ModularTerms::from_function(f, q);
  CHECK(terms.evaluate(r.bracket_lo) >= 1.0);
  CHECK(terms.evaluate(r.bracket_hi) <= 1.0);
  CHECK(r.modular_at_norm >= 1.0 - 1e-9);
  CHECK(r.modular_at_norm <= 1.0 + 1e-9);
}

TEST_CASE("norm is homogeneous over six orders of magnitude") {
  GridSpec spec = default_grid();
  ExponentFunction q = exponent_preset(spec, "log-perturbed:2.5,2,1");
  for (int i = 0; i < 10; ++i) {
    SampledFunction f = random_bumps(spec, 21, i);
    double base = luxemburg_norm(f, q).norm;
    for (double c : {1e-6, 1e-2, 1.0, 1e3, 1e6}) {
      SampledFunction g = f;
      for (auto& v : g.values) v *= c;
      double scaled = luxemburg_norm(g, q).norm;
      CHECK(std::fabs(scaled - c * base) <= 1e-10 * c * base);
    }
  }
}

TEST_CASE("norm is monotone in pointwise magnitude") {
  GridSpec spec = default_grid();
  ExponentFunction q = exponent_preset(spec, "log-perturbed:3,2.2,2");
  SampledFunction g = random_bumps(spec, 31, 0);
  SampledFunction f = g;
  SampleRng rng(31, 1);
  for (auto& v : f.values) v *= rng.uniform();  // |f| <= |g| cell by cell
  double nf = luxemburg_norm(f, q).norm;
  double ng = luxemburg_norm(g, q).norm;
  CHECK(nf <= ng + 1e-12);
}

TEST_CASE("constant-exponent norms agree with the direct integral") {
  GridSpec spec = default_grid();
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    ExponentFunction q = exponent_preset(spec, "const:" + std::to_string(p));
    for (int i = 0; i < 4; ++i) {
      SampledFunction f = random_bumps(spec, 41, i);
      double direct = 0.0;
      for (const auto& v : f.values) direct += std::pow(std::abs(v), p);
      direct = std::pow(direct * spec.cell_measure(), 1.0 / p);
      double lux = luxemburg_norm(f, q).norm;
      CHECK(std::fabs(lux - direct) <= 1e-8 * direct);
    }
  }
}

TEST_CASE("weighted norm: unit weight, power weight, homogeneity") {
  GridSpec spec = default_grid();
  ExponentFunction q = exponent_preset(spec, "const:2");
  Weight one = weight_preset(spec, "const:1");
  SampledFunction f = random_bumps(spec, 51, 0);
  CHECK(weighted_norm(f, one, q).norm == luxemburg_norm(f, q).norm);

  SampledFunction band = interval(spec, 1.0, 2.0);
  Weight wx = weight_preset(spec, "power:1");
  double expect = std::sqrt(7.0 / 3.0);
  CHECK(std::fabs(weighted_norm(band, wx, q).norm - expect) <= 1e-3);

  SampledFunction scaled = f;
  for (auto& v : scaled.values) v *= -3.5;
  double a = weighted_norm(scaled, wx, q).norm;
  double b = 3.5 * weighted_norm(f, wx, q).norm;
  CHECK(std::fabs(a - b) <= 1e-10 * b);
}

TEST_CASE("norms restricted to a shell match norms of the restricted function") {
  GridSpec spec = default_grid();
  ExponentFunction q = exponent_preset(spec, "log-perturbed:2.2,2,1");
  SampledFunction f = random_bumps(spec, 61, 0);
  DyadicMask d1 = annulus_mask(spec, 1);
  SampledFunction cut = zero_function(spec);
  for (auto idx : d1.cells) cut.values[idx] = f.values[idx];
  double masked = luxemburg_norm(f, q, d1).norm;
  double full = luxemburg_norm(cut, q).norm;
  CHECK(masked == doctest::Approx(full).epsilon(1e-12));
}

TEST_CASE("product bound: equality case, random sweep, zero case") {
  GridSpec spec = default_grid();
  ExponentFunction q2 = exponent_preset(spec, "const:2");
  SampledFunction box = interval(spec, 0.0, 1.0);
  HolderCheck eq = holder_check(box, box, q2);
  CHECK(std::fabs(eq.ratio - 0.5) <= spec.step());

  ExponentFunction q3 = exponent_preset(spec, "const:3");
  for (int i = 0; i < 8; ++i) {
    HolderCheck hc =
        holder_check(random_bumps(spec, 71, 2 * i), random_bumps(spec, 71, 2 * i + 1), q3);
    CHECK(hc.ratio <= 1.0);
  }

  HolderCheck zero = holder_check(zero_function(spec), box, q2);
  CHECK(zero.ratio == 0.0);
}

TEST_CASE("non-finite samples are rejected") {
  GridSpec spec = make_grid(1, 6, 1024, -4, 4);
  ExponentFunction q = exponent_preset(spec, "const:2");
  SampledFunction f = zero_function(spec);
  f.values[10] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(luxemburg_norm(f, q), std::invalid_argument);
}
