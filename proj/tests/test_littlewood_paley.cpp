#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "herzlab/fft.hpp"
#include "herzlab/grid.hpp"
#include "herzlab/littlewood_paley.hpp"
#include "herzlab/operators.hpp"

using namespace herzlab;
using herzlab::testing::random_bumps;

namespace {

GridSpec default_grid() { return make_grid(1, 6, 16384, -20, 6); }

double max_abs_value(const SampledFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

// Restricts the spectrum of a rough seed to the radial window [lo, hi].
SampledFunction band_restricted(const GridSpec& spec, double lo, double hi, int index) {
  SampledFunction seed = random_bumps(spec, 97, index);
  return apply_multiplier(
      seed, radial_profile(spec, [lo, hi](double rho) { return (rho >= lo && rho <= hi) ? 1.0 : 0.0; }),
      "band-restricted");
}

}  // namespace

TEST_CASE("resolution of unity: cap, telescoping, and supports") {
  GridSpec spec = default_grid();
  CHECK(bank_level_cap(spec) == 7);

  FilterBank bank = build_resolution_of_unity(spec);
  CHECK(bank.j_max == 7);
  CHECK(bank.levels() == 8);
  CHECK(bank.resolved_band() == 128.0);

  // Telescoping sum is exactly one on the resolved band.
  std::size_t checked = 0;
  for (std::size_t m = 0; m < spec.point_count(); m += 53) {
    double rho = bin_frequency(spec, m);
    if (rho > bank.resolved_band()) continue;
    double sum = 0.0;
    for (const auto& profile : bank.level_profiles) sum += profile[m];
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
    ++checked;
  }
  CHECK(checked >= 64);

  // Dilated supports: level j lives in [2^{j-1}, 2^{j+1}].
  for (int j = 1; j <= bank.j_max; ++j) {
    double lo = std::exp2(j - 1), hi = std::exp2(j + 1);
    for (std::size_t m = 0; m < spec.point_count(); m += 13) {
      double rho = bin_frequency(spec, m);
      if (rho < lo || rho > hi) {
        CHECK(std::fabs(bank.level_profiles[static_cast<std::size_t>(j)][m]) <= 1e-15);
      }
    }
  }
  for (std::size_t m = 0; m < spec.point_count(); m += 13) {
    if (bin_frequency(spec, m) > 2.0) {
      CHECK(std::fabs(bank.level_profiles[0][m]) <= 1e-15);
    }
  }

  CHECK_THROWS_AS(build_resolution_of_unity(make_grid(1, 1, 8, -1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(build_resolution_of_unity(spec, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("resolution of unity: distant levels annihilate band-limited input") {
  GridSpec spec = default_grid();
  FilterBank bank = build_resolution_of_unity(spec);
  SampledFunction f = band_restricted(spec, 12.0, 20.0, 0);  // inside level 4
  double scale = max_abs_value(f);
  REQUIRE(scale > 0.0);
  for (int i : {0, 1, 2, 6, 7}) {
    SampledFunction piece = filter_convolve(f, bank, i);
    CHECK(max_abs_value(piece) <= 1e-10 * scale);
  }
  SampledFunction near = filter_convolve(f, bank, 4);
  CHECK(max_abs_value(near) > 1e-6 * scale);
}

TEST_CASE("admissible pair: plateau floors and supports") {
  GridSpec spec = default_grid();
  FilterBank pair = build_admissible_pair(spec);
  CHECK(pair.lower_bound_constant == 1.0);

  for (std::size_t m = 0; m < spec.point_count(); m += 13) {
    double rho = bin_frequency(spec, m);
    if (rho <= 5.0 / 3.0) CHECK(pair.level_profiles[0][m] == 1.0);
    if (rho >= 2.0) CHECK(pair.level_profiles[0][m] == 0.0);
  }
  for (int j = 1; j <= pair.j_max; ++j) {
    double s = std::exp2(j);
    for (std::size_t m = 0; m < spec.point_count(); m += 13) {
      double rho = bin_frequency(spec, m);
      const double v = pair.level_profiles[static_cast<std::size_t>(j)][m];
      if (rho >= 0.6 * s && rho <= 5.0 / 3.0 * s) CHECK(v == 1.0);
      if (rho <= 0.5 * s || rho >= 2.0 * s) CHECK(v == 0.0);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("admissible dual: reproducing identity on the band") {
  GridSpec spec = default_grid();
  FilterBank pair = build_admissible_pair(spec);
  FilterBank dual = build_admissible_dual(pair);
  CHECK(dual.lower_bound_constant >= 1.0 - 1e-12);

  for (std::size_t m = 0; m < spec.point_count(); ++m) {
    if (bin_frequency(spec, m) > pair.resolved_band()) continue;
    double sum = 0.0;
    for (int j = 0; j < pair.levels(); ++j) {
      sum += pair.level_profiles[static_cast<std::size_t>(j)][m] *
             dual.level_profiles[static_cast<std::size_t>(j)][m];
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-10);
  }

  // The telescoping bank is admissible for this purpose as well.
  FilterBank res = build_resolution_of_unity(spec);
  FilterBank res_dual = build_admissible_dual(res);
  for (std::size_t m = 0; m < spec.point_count(); m += 7) {
    if (bin_frequency(spec, m) > res.resolved_band()) continue;
    double sum = 0.0;
    for (int j = 0; j < res.levels(); ++j) {
      sum += res.level_profiles[static_cast<std::size_t>(j)][m] *
             res_dual.level_profiles[static_cast<std::size_t>(j)][m];
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-10);
  }

  FilterBank broken = pair;
  for (auto& profile : broken.level_profiles) {
    std::fill(profile.begin(), profile.end(), 0.0);
  }
  CHECK_THROWS_AS(build_admissible_dual(broken), std::domain_error);
}

TEST_CASE("calderon reconstruction: band-limited corpus round trip") {
  GridSpec spec = default_grid();
  FilterBank pair = build_admissible_pair(spec);
  FilterBank dual = build_admissible_dual(pair);

  for (int index = 0; index < 4; ++index) {
    SampledFunction f = random_bumps(spec, 1234567, index);
    ReconstructionReport report = calderon_check(f, pair, dual);
    CHECK(report.rel_l2_error <= 1e-8);
    CHECK(report.spillover <= 1e-16);
  }

  SampledFunction zero = zero_function(spec);
  SampledFunction rezero = calderon_reconstruct(zero, pair, dual);
  CHECK(max_abs_value(rezero) == 0.0);

  // Idempotence on a pre-smoothed input.
  SampledFunction g = random_bumps(spec, 55, 9);
  SampledFunction low = filter_convolve(filter_convolve(g, dual, 0), pair, 0);
  CHECK(calderon_check(low, pair, dual).rel_l2_error <= 1e-8);

  // A Nyquist-rate sawtooth lives far outside the resolved band and the
  // report says so.
  SampledFunction alias = make_function(
      spec, [&](double x, double) { return std::cos(nyquist_frequency(spec) * 0.9 * x); },
      "alias");
  CHECK(calderon_check(alias, pair, dual).spillover > 0.5);
}

TEST_CASE("calderon reconstruction: comb-sampled coefficients") {
  GridSpec spec = default_grid();
  FilterBank pair = build_admissible_pair(spec);
  FilterBank dual = build_admissible_dual(pair);
  for (int index = 0; index < 2; ++index) {
    SampledFunction f = random_bumps(spec, 31337, index);
    ReconstructionReport report = calderon_check_sampled(f, pair, dual);
    CHECK(report.rel_l2_error <= 1e-6);
  }
}

TEST_CASE("weighted sup: exact against brute force") {
  GridSpec spec = make_grid(1, 3, 256, -4, 3);
  SampledFunction noise = random_bumps(spec, 71, 0);
  std::vector<double> amp = absolute_values(noise);
  // Roughen: decorrelate neighbours so pruning has no smoothness to lean on.
  for (std::size_t i = 0; i < amp.size(); i += 2) amp[i] *= 7.3;

  for (double t : {0.05, 0.5}) {
    for (double a : {1.5, 6.0}) {
      std::vector<double> fast = weighted_sup(spec, amp, t, a);
      for (int ix = 0; ix < spec.samples_per_axis; ++ix) {
        double brute = 0.0;
        for (int iy = 0; iy < spec.samples_per_axis; ++iy) {
          double dist = std::fabs(spec.coordinate(ix) - spec.coordinate(iy));
          brute = std::max(brute,
                           amp[static_cast<std::size_t>(iy)] * std::pow(1.0 + dist / t, -a));
        }
        CHECK(fast[static_cast<std::size_t>(ix)] == brute);
      }
    }
  }

  GridSpec spec2 = make_grid(2, 2, 32, -2, 2);
  SampledFunction noise2 = random_bumps(spec2, 72, 1);
  std::vector<double> amp2 = absolute_values(noise2);
  for (std::size_t i = 0; i < amp2.size(); i += 3) amp2[i] *= 4.1;
  std::vector<double> fast2 = weighted_sup(spec2, amp2, 0.3, 2.5);
  for (int jy = 0; jy < spec2.samples_per_axis; ++jy) {
    for (int ix = 0; ix < spec2.samples_per_axis; ++ix) {
      double brute = 0.0;
      for (int ky = 0; ky < spec2.samples_per_axis; ++ky) {
        for (int kx = 0; kx < spec2.samples_per_axis; ++kx) {
          double dist = std::hypot(spec2.coordinate(ix) - spec2.coordinate(kx),
                                   spec2.coordinate(jy) - spec2.coordinate(ky));
          brute = std::max(brute, amp2[spec2.flat_index(kx, ky)] *
                                      std::pow(1.0 + dist / 0.3, -2.5));
        }
      }
      CHECK(fast2[spec2.flat_index(ix, jy)] == brute);
    }
  }

  CHECK_THROWS_AS(weighted_sup(spec, amp, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(weighted_sup(spec, amp, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("peetre maximal: domination, large-a collapse, translation") {
  GridSpec spec = default_grid();
  FilterBank bank = build_resolution_of_unity(spec);
  SampledFunction f = random_bumps(spec, 29, 3);

  SampledFunction piece = filter_convolve(f, bank, 4);
  SampledFunction sup = peetre_maximal(f, bank, 4, 4.0);
  for (std::size_t i = 0; i < sup.values.size(); ++i) {
    CHECK(sup.values[i].real() >= std::abs(piece.values[i]) - 1e-15);
  }

  // With steep decay the off-diagonal weight dies within one cell.
  SampledFunction tight = peetre_maximal(f, bank, 5, 64.0);
  SampledFunction piece5 = filter_convolve(f, bank, 5);
  double scale5 = max_abs_value(piece5);
  for (std::size_t i = 0; i < tight.values.size(); ++i) {
    CHECK(std::fabs(tight.values[i].real() - std::abs(piece5.values[i])) <= 1e-5 * scale5);
  }

  // Exact one-cell covariance for an interior-supported input.
  double h = spec.step();
  const auto wave = [](double x) {
    return std::exp(-4.0 * (x - 0.5) * (x - 0.5)) * std::cos(20.0 * x);
  };
  SampledFunction base = make_function(spec, [&](double x, double) { return wave(x); }, "w");
  SampledFunction moved = make_function(spec, [&](double x, double) { return wave(x - h); }, "wm");
  SampledFunction sup_base = peetre_maximal(base, bank, 4, 4.0);
  SampledFunction sup_moved = peetre_maximal(moved, bank, 4, 4.0);
  double scale = max_abs_value(sup_base);
  for (std::size_t i = 1; i < sup_base.values.size(); ++i) {
    CHECK(std::fabs(sup_moved.values[i].real() - sup_base.values[i - 1].real()) <=
          1e-12 * scale);
  }

  CHECK_THROWS_AS(peetre_maximal(f, bank, 4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(peetre_maximal(f, bank, 99, 1.0), std::invalid_argument);
}

TEST_CASE("eta majorization: finiteness, refinement stability, maximal link") {
  GridSpec spec = default_grid();
  FilterBank bank = build_resolution_of_unity(spec);

  SampledFunction zero = zero_function(spec);
  CHECK(eta_majorization_check(zero, bank, 4, 1.0, 2.0).max_ratio == 0.0);

  SampledFunction f = band_restricted(spec, 12.0, 20.0, 2);
  EtaMajorizationReport report = eta_majorization_check(f, bank, 4, 1.0, 2.0);
  CHECK(report.max_ratio > 0.0);
  CHECK(report.max_ratio < 100.0);
  CHECK(report.level_j == 4);

  GridSpec fine = make_grid(1, 6, 32768, -20, 6);
  FilterBank fine_bank = build_resolution_of_unity(fine);
  SampledFunction f_fine = band_restricted(fine, 12.0, 20.0, 2);
  EtaMajorizationReport fine_report = eta_majorization_check(f_fine, fine_bank, 4, 1.0, 2.0);
  CHECK(std::fabs(fine_report.max_ratio - report.max_ratio) <= 0.1 * report.max_ratio);

  // The smoothed side is itself controlled by the power maximal average.
  SampledFunction u = filter_convolve(f, bank, 4);
  SampledFunction powered = u;
  for (auto& v : powered.values) v = std::abs(v);
  const double big_n = 16.0;
  SampledFunction smoothed = convolve_offset_kernel(powered, [&](double dx, double) {
    return big_n * std::pow(1.0 + big_n * std::fabs(dx), -2.0);
  });
  SampledFunction mu = maximal(u, WindowFamily::dyadic(spec));
  double worst = 0.0;
  double mu_max = max_abs_value(mu);
  for (std::size_t i = 0; i < mu.values.size(); ++i) {
    if (mu.values[i].real() <= 1e-9 * mu_max) continue;
    worst = std::max(worst, smoothed.values[i].real() / mu.values[i].real());
  }
  CHECK(worst > 0.0);
  CHECK(worst <= 8.0);

  CHECK_THROWS_AS(eta_majorization_check(f, bank, 4, 0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(eta_majorization_check(f, bank, 4, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("kernel family: positivity annulus and vanishing moments") {
  GridSpec spec = default_grid();
  FilterBank family = build_kernel_family(spec, 0.5, 1);
  CHECK(family.epsilon == 0.5);
  CHECK(family.vanishing_moments == 1);
  CHECK(family.level_profiles[0][0] == 1.0);  // low pass passes the mean

  for (int j = 1; j <= family.j_max; ++j) {
    double lo = 0.25 * std::exp2(j), hi = std::exp2(j);  // eps/2, 2 eps dilated
    double floor = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < spec.point_count(); ++m) {
      double rho = bin_frequency(spec, m);
      if (rho >= lo && rho <= hi) {
        floor = std::min(floor, family.level_profiles[static_cast<std::size_t>(j)][m]);
      }
    }
    CHECK(floor > 0.0);
    CHECK(family.level_profiles[static_cast<std::size_t>(j)][0] == 0.0);
  }

  // Quadrature moments of the level-one kernel: orders 0 and 1 vanish, order
  // 2 does not (the spectral zero has order exactly two).
  std::vector<std::complex<double>> k = kernel_space_samples(family, 1);
  double h = spec.step();
  for (int order : {0, 1}) {
    std::complex<double> acc = 0.0;
    for (int i = 0; i < spec.samples_per_axis; ++i) {
      acc += std::pow(spec.coordinate(i), order) * k[static_cast<std::size_t>(i)];
    }
    CHECK(std::abs(acc) * h <= 1e-8);
  }
  std::complex<double> second = 0.0;
  for (int i = 0; i < spec.samples_per_axis; ++i) {
    double x = spec.coordinate(i);
    second += x * x * k[static_cast<std::size_t>(i)];
  }
  CHECK(std::abs(second) * h > 1e-4);

  // Higher-order family: moments through order 3 vanish.
  FilterBank high = build_kernel_family(spec, 0.5, 3);
  CHECK(high.vanishing_moments == 3);
  std::vector<std::complex<double>> k3 = kernel_space_samples(high, 1);
  for (int order : {0, 1, 2, 3}) {
    std::complex<double> acc = 0.0;
    for (int i = 0; i < spec.samples_per_axis; ++i) {
      acc += std::pow(spec.coordinate(i), order) * k3[static_cast<std::size_t>(i)];
    }
    CHECK(std::abs(acc) * h <= 1e-8);
  }

  CHECK_THROWS_AS(build_kernel_family(spec, 4.0), std::domain_error);
  CHECK_THROWS_AS(build_kernel_family(spec, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(build_kernel_family(spec, 0.5, -2), std::invalid_argument);
}

TEST_CASE("kernel family: continuous scales and maximal variants") {
  GridSpec spec = default_grid();
  FilterBank family = build_kernel_family(spec);
  SampledFunction f = random_bumps(spec, 83, 4);

  // Dyadic scales reproduce the stored levels exactly.
  for (int j : {1, 3, 5}) {
    std::vector<double> at_scale = kernel_transfer_at_scale(family, std::exp2(-j));
    const auto& stored = family.level_profiles[static_cast<std::size_t>(j)];
    for (std::size_t m = 0; m < stored.size(); m += 17) {
      CHECK(std::fabs(at_scale[m] - stored[m]) <= 1e-15);
    }
    SampledFunction a = kernel_convolve_scale(f, family, std::exp2(-j));
    SampledFunction b = filter_convolve(f, family, j);
    for (std::size_t i = 0; i < a.values.size(); i += 131) {
      CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-12);
    }
  }

  double t = 0.37;
  SampledFunction piece = kernel_convolve_scale(f, family, t);
  SampledFunction loose = kernel_peetre(f, family, t, 2.0);
  SampledFunction strict = kernel_peetre(f, family, t, 8.0);
  for (std::size_t i = 0; i < piece.values.size(); ++i) {
    CHECK(loose.values[i].real() >= std::abs(piece.values[i]) - 1e-15);
    CHECK(loose.values[i].real() >= strict.values[i].real() - 1e-15);
    CHECK(strict.values[i].real() >= std::abs(piece.values[i]) - 1e-15);
  }

  SampledFunction base_piece = filter_convolve(f, family, 0);
  SampledFunction base_sup = kernel_peetre_base(f, family, 3.0);
  for (std::size_t i = 0; i < base_piece.values.size(); i += 57) {
    CHECK(base_sup.values[i].real() >= std::abs(base_piece.values[i]) - 1e-15);
  }

  SampledFunction zero_sup = kernel_peetre(zero_function(spec), family, 0.5, 2.0);
  CHECK(max_abs_value(zero_sup) == 0.0);
  CHECK_THROWS_AS(kernel_peetre(f, family, 0.5, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(kernel_transfer_at_scale(family, 0.0), std::invalid_argument);
}

TEST_CASE("mollifier: identity limit and mass preservation") {
  GridSpec spec = default_grid();
  SampledFunction f = random_bumps(spec, 91, 5);

  SampledFunction nearly = mollify(f, 1e6);
  double scale = max_abs_value(f);
  for (std::size_t i = 0; i < f.values.size(); i += 101) {
    CHECK(std::abs(nearly.values[i] - f.values[i]) <= 1e-8 * scale);
  }

  SampledFunction smooth = mollify(f, 2.0);
  CHECK(std::fabs(integrate(smooth) - integrate(f)) <= 1e-10 * (1.0 + std::fabs(integrate(f))));

  // Closed form: a unit gaussian mollified at dilation 1 is the half-width
  // heat flow e^{-x^2} -> e^{-x^2/2} / sqrt(2).
  SampledFunction gauss = make_function(
      spec, [](double x, double) { return std::exp(-x * x); }, "gauss");
  SampledFunction flowed = mollify(gauss, 1.0);
  for (int i = 4000; i < 12000; i += 211) {
    double x = spec.coordinate(i);
    double want = std::exp(-x * x / 2.0) / std::sqrt(2.0);
    CHECK(std::fabs(flowed.values[static_cast<std::size_t>(i)].real() - want) <= 1e-10);
  }

  CHECK_THROWS_AS(mollify(f, 0.0), std::invalid_argument);
}

TEST_CASE("filter banks: lossless JSON round trip") {
  GridSpec spec = make_grid(1, 4, 1024, -8, 4);
  FilterBank family = build_kernel_family(spec, 0.5, 2);
  std::string text = bank_to_json(family).dump();
  FilterBank back = bank_from_json(nlohmann::json::parse(text));

  CHECK(back.kind == family.kind);
  CHECK(back.spec == family.spec);
  CHECK(back.j_max == family.j_max);
  CHECK(back.profile_name == family.profile_name);
  CHECK(back.epsilon == family.epsilon);
  CHECK(back.vanishing_moments == family.vanishing_moments);
  CHECK(back.lower_bound_constant == family.lower_bound_constant);
  REQUIRE(back.level_profiles.size() == family.level_profiles.size());
  for (std::size_t j = 0; j < family.level_profiles.size(); ++j) {
    REQUIRE(back.level_profiles[j].size() == family.level_profiles[j].size());
    for (std::size_t m = 0; m < family.level_profiles[j].size(); ++m) {
      CHECK(back.level_profiles[j][m] == family.level_profiles[j][m]);
    }
  }

  nlohmann::json bad = bank_to_json(family);
  bad["kind"] = "mystery";
  CHECK_THROWS_AS(bank_from_json(bad), std::invalid_argument);
}
