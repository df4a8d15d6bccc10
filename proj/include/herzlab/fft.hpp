#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "herzlab/grid.hpp"

namespace herzlab {

/// Unnormalized forward DFT of a grid-sized array (FFTW sign -1), 1-D or 2-D
/// according to the grid layout.  Bin m corresponds to the angular frequency
/// xi_m = 2*pi*m~ / (2^(K+1)) with m~ the signed bin index.
std::vector<std::complex<double>> fft_forward(const GridSpec& spec,
                                              const std::vector<std::complex<double>>& in);

/// Inverse DFT including the 1/N^n normalization.
std::vector<std::complex<double>> fft_inverse(const GridSpec& spec,
                                              const std::vector<std::complex<double>>& in);

/// Signed frequency bin for index m along an axis of N samples.
int signed_bin(int m, int n_axis);

/// Angular frequency of axis bin m.
double axis_frequency(const GridSpec& spec, int m);

/// |xi| of the flat lattice bin (Euclidean over axes).
double bin_frequency(const GridSpec& spec, std::size_t flat);

/// Nyquist angular frequency pi / h.
double nyquist_frequency(const GridSpec& spec);

/// Applies a real spectral multiplier: out = IFFT(profile .* FFT(f)).
/// This is convolution by the filter whose transfer function the profile
/// samples; quadrature factors are already absorbed (a profile identically 1
/// is the identity operator).
SampledFunction apply_multiplier(const SampledFunction& f,
                                 const std::vector<double>& profile,
                                 std::string label = {});

/// Builds a lattice profile from a radial transfer function F(|xi|).
std::vector<double> radial_profile(const GridSpec& spec,
                                   const std::function<double(double)>& transfer);

/// Linear (zero-padded, non-circular) convolution with an explicit offset
/// kernel:  out(x) = h^n * sum_y K(x - y) f(y), K given as a callable on
/// coordinate offsets.  Used for kernels with slow spatial decay where
/// periodic wrap-around would pollute the result.
SampledFunction convolve_offset_kernel(const SampledFunction& f,
                                       const std::function<double(double, double)>& kernel,
                                       std::string label = {});

}  // namespace herzlab
