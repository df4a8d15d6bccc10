#include "herzlab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace herzlab {

namespace {

// FFTW plans are cached per (rank, size, sign).  Plans are created with
// FFTW_ESTIMATE | FFTW_UNALIGNED so they can run on any caller buffer via
// the new-array execute interface.
class PlanCache {
 public:
  fftw_plan get(int rank, int n_axis, int sign) {
    auto key = std::make_tuple(rank, n_axis, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::size_t total = rank == 1 ? static_cast<std::size_t>(n_axis)
                                  : static_cast<std::size_t>(n_axis) * n_axis;
    std::vector<std::complex<double>> scratch_in(total), scratch_out(total);
    auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
    auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
    fftw_plan plan = rank == 1
        ? fftw_plan_dft_1d(n_axis, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
        : fftw_plan_dft_2d(n_axis, n_axis, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fft: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

std::vector<std::complex<double>> run(const GridSpec& spec,
                                      const std::vector<std::complex<double>>& in, int sign) {
  if (in.size() != spec.point_count())
    throw std::invalid_argument("fft: array size does not match the grid");
  std::vector<std::complex<double>> out(in.size());
  fftw_plan plan = cache().get(spec.dimension, spec.samples_per_axis, sign);
  // New-array execute; const-cast is safe, FFTW does not write the input for
  // out-of-place complex transforms.
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<std::complex<double>> fft_forward(const GridSpec& spec,
                                              const std::vector<std::complex<double>>& in) {
  return run(spec, in, FFTW_FORWARD);
}

std::vector<std::complex<double>> fft_inverse(const GridSpec& spec,
                                              const std::vector<std::complex<double>>& in) {
  auto out = run(spec, in, FFTW_BACKWARD);
  double scale = 1.0 / static_cast<double>(spec.point_count());
  for (auto& v : out) v *= scale;
  return out;
}

int signed_bin(int m, int n_axis) { return m <= n_axis / 2 ? m : m - n_axis; }

double axis_frequency(const GridSpec& spec, int m) {
  double domain = 2.0 * spec.halfwidth();
  return 2.0 * M_PI * signed_bin(m, spec.samples_per_axis) / domain;
}

double bin_frequency(const GridSpec& spec, std::size_t flat) {
  int n = spec.samples_per_axis;
  if (spec.dimension == 1) return std::fabs(axis_frequency(spec, static_cast<int>(flat)));
  double fx = axis_frequency(spec, static_cast<int>(flat % n));
  double fy = axis_frequency(spec, static_cast<int>(flat / n));
  return std::hypot(fx, fy);
}

double nyquist_frequency(const GridSpec& spec) { return M_PI / spec.step(); }

SampledFunction apply_multiplier(const SampledFunction& f, const std::vector<double>& profile,
                                 std::string label) {
  if (profile.size() != f.values.size())
    throw std::invalid_argument("apply_multiplier: profile size mismatch");
  auto hat = fft_forward(f.spec, f.values);
  for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= profile[i];
  SampledFunction out;
  out.spec = f.spec;
  out.label = label.empty() ? f.label : std::move(label);
  out.values = fft_inverse(f.spec, hat);
  return out;
}

std::vector<double> radial_profile(const GridSpec& spec,
                                   const std::function<double(double)>& transfer) {
  std::vector<double> profile(spec.point_count());
  for (std::size_t i = 0; i < profile.size(); ++i) profile[i] = transfer(bin_frequency(spec, i));
  return profile;
}

SampledFunction convolve_offset_kernel(const SampledFunction& f,
                                       const std::function<double(double, double)>& kernel,
                                       std::string label) {
  const GridSpec& spec = f.spec;
  int n = spec.samples_per_axis;
  double h = spec.step();
  // Zero-padded grid of twice the size per axis; offsets d in [-(n-1), n-1]
  // are laid out circularly so the linear convolution of the physical block
  // is exact.
  GridSpec pad = spec;
  pad.samples_per_axis = 2 * n;
  std::size_t pad_count = pad.point_count();
  std::vector<std::complex<double>> fin(pad_count, 0.0), ker(pad_count, 0.0);
  auto wrap = [&](int d) { return d >= 0 ? d : d + 2 * n; };
  if (spec.dimension == 1) {
    for (int i = 0; i < n; ++i) fin[i] = f.values[i];
    for (int d = -(n - 1); d <= n - 1; ++d) ker[wrap(d)] = kernel(d * h, 0.0);
  } else {
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        fin[static_cast<std::size_t>(iy) * 2 * n + ix] = f.values[spec.flat_index(ix, iy)];
    for (int dy = -(n - 1); dy <= n - 1; ++dy)
      for (int dx = -(n - 1); dx <= n - 1; ++dx)
        ker[static_cast<std::size_t>(wrap(dy)) * 2 * n + wrap(dx)] = kernel(dx * h, dy * h);
  }
  auto fhat = fft_forward(pad, fin);
  auto khat = fft_forward(pad, ker);
  for (std::size_t i = 0; i < pad_count; ++i) fhat[i] *= khat[i];
  auto conv = fft_inverse(pad, fhat);
  SampledFunction out;
  out.spec = spec;
  out.label = label.empty() ? f.label : std::move(label);
  out.values.resize(spec.point_count());
  double measure = spec.cell_measure();
  if (spec.dimension == 1) {
    for (int i = 0; i < n; ++i) out.values[i] = conv[i] * measure;
  } else {
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        out.values[spec.flat_index(ix, iy)] =
            conv[static_cast<std::size_t>(iy) * 2 * n + ix] * measure;
  }
  return out;
}

}  // namespace herzlab
