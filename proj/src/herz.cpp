#include "herzlab/herz.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace herzlab {

namespace {

constexpr double kLn2 = 0.693147180559945309417232121458;

/// Streaming log-sum-exp with running max shift: exact down to the last shell
/// even when the effective exponent reaches ~3e7 and single terms would
/// overflow any fixed scale.
struct LogSum {
  double shift = -std::numeric_limits<double>::infinity();
  double sum = 0.0;

  void add(double log_term) {
    if (log_term == -std::numeric_limits<double>::infinity()) return;
    if (log_term > shift) {
      sum = sum * std::exp(shift - log_term) + 1.0;
      shift = log_term;
    } else {
      sum += std::exp(log_term - shift);
    }
  }
  bool empty() const { return sum == 0.0; }
  double log_value() const { return shift + std::log(sum); }
};

}  // namespace

std::vector<double> DeltaGrid::values() const {
  if (points < 2 || !(log2_max > log2_min))
    throw std::invalid_argument("DeltaGrid: need at least two increasing points");
  std::vector<double> out(points);
  double step = (log2_max - log2_min) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = std::exp2(log2_min + i * step);
  return out;
}

void HerzParams::validate(const GridSpec& spec) const {
  if (!(p > 1.0)) throw std::invalid_argument("HerzParams: p must exceed 1");
  if (!(theta > 0.0)) throw std::invalid_argument("HerzParams: theta must be positive");
  if (!(lambda >= 0.0)) throw std::invalid_argument("HerzParams: lambda must be >= 0");
  if (!(alpha.spec == spec) || !(q.spec == spec) || !(w.spec == spec))
    throw std::invalid_argument("HerzParams: alpha/q/w sampled on a different grid");
  if (!q.in_class_p())
    throw std::invalid_argument("HerzParams: inner exponent must satisfy 1 < q- <= q+ < inf");
  if (k0_min > k0_max || k0_min < spec.k_min || k0_max > spec.k_max)
    throw std::invalid_argument("HerzParams: k0 range outside the grid shell range");
  delta_grid.values();  // throws on a degenerate grid
}

HerzParams make_herz_params(const GridSpec& spec, ExponentFunction alpha, double p,
                            ExponentFunction q, Weight w, double lambda, double theta) {
  HerzParams params;
  params.alpha = std::move(alpha);
  params.p = p;
  params.q = std::move(q);
  params.w = std::move(w);
  params.lambda = lambda;
  params.theta = theta;
  params.k0_min = spec.k_min;
  params.k0_max = spec.k_max;
  params.validate(spec);
  return params;
}

std::vector<double> shell_norms(const SampledFunction& f, const HerzParams& params,
                                bool apply_alpha) {
  const GridSpec& spec = f.spec;
  params.validate(spec);
  std::vector<double> weighted = absolute_values(f);
  for (std::size_t i = 0; i < weighted.size(); ++i) weighted[i] *= params.w.values[i];
  std::vector<double> out(spec.shell_count(), 0.0);
  for (int k = spec.k_min; k <= spec.k_max; ++k) {
    DyadicMask shell = annulus_mask(spec, k);
    if (shell.cells.empty()) continue;
    if (apply_alpha && k != 0) {
      // Pointwise factor 2^{k alpha(x)}; rebuilt per shell on its cells only.
      std::vector<double> scaled = weighted;
      for (auto c : shell.cells)
        scaled[c] *= std::exp2(static_cast<double>(k) * params.alpha.values[c]);
      out[k - spec.k_min] = luxemburg_from_terms(ModularTerms::from_values_masked(
                                spec, scaled, params.q, shell.cells))
                                .norm;
    } else {
      out[k - spec.k_min] =
          luxemburg_from_terms(
              ModularTerms::from_values_masked(spec, weighted, params.q, shell.cells))
              .norm;
    }
  }
  return out;
}

HerzNormBreakdown grand_herz_morrey_norm(const SampledFunction& f, const HerzParams& params) {
  const GridSpec& spec = f.spec;
  HerzNormBreakdown b;
  b.shell_values = shell_norms(f, params, true);
  b.k_min = spec.k_min;
  b.argmax_k0 = params.k0_min;

  std::vector<double> log_shell(b.shell_values.size());
  for (std::size_t i = 0; i < log_shell.size(); ++i)
    log_shell[i] = b.shell_values[i] > 0.0 ? std::log(b.shell_values[i])
                                           : -std::numeric_limits<double>::infinity();

  for (double delta : params.delta_grid.values()) {
    double big_e = params.p * (1.0 + delta);
    double log_damp = params.theta * std::log(delta);
    LogSum acc;
    int k = spec.k_min;
    for (int k0 = spec.k_min; k0 <= params.k0_max; ++k0) {
      for (; k <= k0; ++k) acc.add(big_e * log_shell[k - spec.k_min]);
      if (k0 < params.k0_min || acc.empty()) continue;
      double value =
          std::exp2(-static_cast<double>(k0) * params.lambda) *
          std::exp((log_damp + acc.log_value()) / big_e);
      if (value > b.value) {
        b.value = value;
        b.argmax_delta = delta;
        b.argmax_k0 = k0;
      }
    }
  }
  return b;
}

SplitBreakdown split_norm(const SampledFunction& f, const HerzParams& params) {
  const GridSpec& spec = f.spec;
  SplitBreakdown s;
  std::vector<double> plain = shell_norms(f, params, false);
  std::vector<double> log_plain(plain.size());
  for (std::size_t i = 0; i < plain.size(); ++i)
    log_plain[i] = plain[i] > 0.0 ? std::log(plain[i])
                                  : -std::numeric_limits<double>::infinity();
  double a0 = params.alpha.value_at_origin;
  double a_inf = params.alpha.value_at_infinity;
  s.argmax_k0 = params.k0_min;

  auto log_term = [&](int k, double a) {
    return log_plain[k - spec.k_min] + static_cast<double>(k) * a * kLn2;
  };

  for (double delta : params.delta_grid.values()) {
    double big_e = params.p * (1.0 + delta);
    double log_damp = params.theta * std::log(delta);
    auto evaluate = [&](const LogSum& acc, int k0) {
      return std::exp2(-static_cast<double>(k0) * params.lambda) *
             std::exp((log_damp + acc.log_value()) / big_e);
    };

    // Origin branch: k0 <= 0, every shell factor frozen at alpha(0).
    LogSum acc;
    int k = spec.k_min;
    for (int k0 = spec.k_min; k0 <= std::min(0, params.k0_max); ++k0) {
      for (; k <= k0; ++k) acc.add(big_e * log_term(k, a0));
      if (k0 < params.k0_min || acc.empty()) continue;
      double value = evaluate(acc, k0);
      if (value > s.origin_branch) {
        s.origin_branch = value;
        if (value > s.value) {
          s.value = value;
          s.argmax_delta = delta;
          s.argmax_k0 = k0;
        }
      }
    }

    // Far branch: k0 > 0; alpha(0) below the unit shell, alpha_inf from it up.
    LogSum far;
    for (int j = spec.k_min; j <= -1; ++j) far.add(big_e * log_term(j, a0));
    far.add(big_e * log_term(0, a_inf));
    for (int k0 = 1; k0 <= params.k0_max; ++k0) {
      far.add(big_e * log_term(k0, a_inf));
      if (k0 < params.k0_min || far.empty()) continue;
      double value = evaluate(far, k0);
      if (value > s.infinity_branch) {
        s.infinity_branch = value;
        if (value > s.value) {
          s.value = value;
          s.argmax_delta = delta;
          s.argmax_k0 = k0;
        }
      }
    }
  }
  return s;
}

nlohmann::json breakdown_to_json(const HerzNormBreakdown& b, const SplitBreakdown& s) {
  nlohmann::json j;
  j["value"] = b.value;
  j["argmax_delta"] = b.argmax_delta;
  j["argmax_k0"] = b.argmax_k0;
  j["split_value"] = s.value;
  j["split_origin_branch"] = s.origin_branch;
  j["split_infinity_branch"] = s.infinity_branch;
  j["split_argmax_delta"] = s.argmax_delta;
  j["split_argmax_k0"] = s.argmax_k0;
  j["split_ratio"] = b.value > 0.0 ? s.value / b.value : 0.0;
  for (std::size_t i = 0; i < b.shell_values.size(); ++i)
    j["shell_norm_" + std::to_string(b.k_min + static_cast<int>(i))] = b.shell_values[i];
  return j;
}

}  // namespace herzlab
