#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "herzlab/grid.hpp"
#include "herzlab/littlewood_paley.hpp"
#include "herzlab/operators.hpp"

namespace herzlab {

/// Families of randomized test functions.  Every member is drawn from a
/// stream keyed by (seed, sample index), so corpora of different sizes share
/// a common prefix and regeneration is byte-stable.
struct CorpusParams {
  int size = 64;
  std::uint64_t seed = 1234567;
  bool wave_packets = true;
  bool gaussian_mixtures = true;
  bool annulus_profiles = true;
  /// Project every member onto the resolved band (smooth low-pass at one
  /// level below the cap); required by the decomposition experiments.
  bool band_limited = false;
};

/// Decay contract: members must fall below 1e-12 (relative to their max) on
/// the outer tenth of the domain.  Violations are labeled, not fatal.
double boundary_decay(const SampledFunction& f);

std::vector<SampledFunction> build_corpus(const GridSpec& spec, const CorpusParams& params);

/// Vector corpus: per sample, `members` independent mixture/packet draws
/// with the given inner exponent r.
std::vector<VectorFunction> build_vector_corpus(const GridSpec& spec, const CorpusParams& params,
                                                int members, double r);

/// Named single functions for the CLI:
///   "gaussian:center,width"        exp(-(x-c)^2/(2 width^2))
///   "packet:level,center"          band-limited wave packet at a dyadic level
///   "annulus:k"                    profile concentrated on shell D_k
///   "indicator:a,b"                chi_[a,b]
///   "corpus:index[,seed]"          member of the default corpus
SampledFunction function_preset(const GridSpec& spec, const std::string& preset);

}  // namespace herzlab
