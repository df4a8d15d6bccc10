#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace herzlab {

/// splitmix64 step; used to decorrelate per-sample streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic per-sample random stream derived from (seed, sample index).
/// Distributions are hand-rolled on top of the raw 64-bit output so the
/// sequence is identical across standard library implementations.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t sample_index) {
    std::uint64_t s = seed ^ 0x5851f42d4c957f2dULL;
    splitmix64(s);
    s ^= sample_index * 0xda942042e4dd58b5ULL;
    engine_.seed(splitmix64(s));
  }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Inclusive integer range.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Standard normal via Box-Muller (pairs cached for determinism).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace herzlab
