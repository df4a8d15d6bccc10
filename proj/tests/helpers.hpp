#pragma once

// Small shared builders for the unit-test binaries.  The full experiment
// corpus lives in the library; these are deliberately tiny so each module's
// tests stay self-contained.

#include <cmath>
#include <complex>

#include "herzlab/grid.hpp"
#include "herzlab/rng.hpp"

namespace herzlab::testing {

/// Sum of a few random gaussian bumps with complex amplitudes; smooth, decays
/// far below 1e-12 at the domain boundary for |center| <= 8, width <= 2.
inline SampledFunction random_bumps(const GridSpec& spec, std::uint64_t seed,
                                    std::uint64_t index, int bumps = 4) {
  SampleRng rng(seed, index);
  struct Bump {
    double re, im, center_x, center_y, inv_w2;
  };
  std::vector<Bump> specs;
  for (int b = 0; b < bumps; ++b) {
    double w = rng.uniform(0.2, 2.0);
    specs.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                     rng.uniform(-8.0, 8.0),
                     spec.dimension == 2 ? rng.uniform(-8.0, 8.0) : 0.0,
                     1.0 / (w * w)});
  }
  return make_function(
      spec,
      [specs](double x, double y) {
        std::complex<double> v = 0.0;
        for (const auto& b : specs) {
          double dx = x - b.center_x, dy = y - b.center_y;
          v += std::complex<double>(b.re, b.im) *
               std::exp(-(dx * dx + dy * dy) * b.inv_w2);
        }
        return v;
      },
      "bumps-" + std::to_string(index));
}

}  // namespace herzlab::testing
