#include "herzlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "herzlab/corpus.hpp"
#include "herzlab/exponents_weights.hpp"
#include "herzlab/fft.hpp"
#include "herzlab/herz.hpp"
#include "herzlab/lebesgue.hpp"
#include "herzlab/littlewood_paley.hpp"
#include "herzlab/operators.hpp"
#include "herzlab/rng.hpp"
#include "herzlab/spaces.hpp"
#include "herzlab/svg.hpp"

namespace herzlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Config decoding.  Every suite reads the same sections; per-suite defaults
// differ only where the experiment calls for it (corpus size, presets).
// ---------------------------------------------------------------------------

GridSpec grid_from(const Config& cfg) {
  return make_grid(cfg.get_int("grid", "dimension", 1), cfg.get_int("grid", "halfwidth_log2", 6),
                   cfg.get_int("grid", "samples_per_axis", 16384),
                   cfg.get_int("grid", "k_min", -20), cfg.get_int("grid", "k_max", 6));
}

CorpusParams corpus_from(const Config& cfg, int default_size) {
  CorpusParams p;
  p.size = cfg.get_int("corpus", "size", default_size);
  p.seed = cfg.get_u64("corpus", "seed", p.seed);
  p.wave_packets = cfg.get_bool("corpus", "wave_packets", p.wave_packets);
  p.gaussian_mixtures = cfg.get_bool("corpus", "gaussian_mixtures", p.gaussian_mixtures);
  p.annulus_profiles = cfg.get_bool("corpus", "annulus_profiles", p.annulus_profiles);
  p.band_limited = cfg.get_bool("corpus", "band_limited", p.band_limited);
  return p;
}

HerzParams herz_from(const Config& cfg, const GridSpec& spec, const std::string& alpha_default,
                     const std::string& q_default, const std::string& w_default) {
  return make_herz_params(spec, exponent_preset(spec, cfg.get("herz", "alpha", alpha_default)),
                          cfg.get_double("herz", "p", 2.0),
                          exponent_preset(spec, cfg.get("herz", "q", q_default)),
                          weight_preset(spec, cfg.get("herz", "w", w_default)),
                          cfg.get_double("herz", "lambda", 0.1),
                          cfg.get_double("herz", "theta", 1.0));
}

TLParams tl_from(const Config& cfg, HerzParams herz) {
  TLParams tl;
  tl.herz = std::move(herz);
  tl.s = cfg.get_double("space", "s", 0.5);
  tl.beta = cfg.get_double("space", "beta", 2.0);
  tl.t_per_octave = cfg.get_int("space", "t_per_octave", 4);
  return tl;
}

PeetreParams peetre_from(const Config& cfg) {
  PeetreParams p;
  p.a = cfg.get_double("peetre", "a", 4.0);
  p.t_integrability = cfg.get_double("peetre", "t", 0.5);
  p.m = cfg.get_double("peetre", "m", 2.0);
  return p;
}

double threshold(const Config& cfg, const std::string& key, double fallback) {
  return cfg.get_double("thresholds", key, fallback);
}

// ---------------------------------------------------------------------------
// Report assembly.
// ---------------------------------------------------------------------------

struct Gate {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool passed = false;
};

/// Upper-bound gate; an infinite limit still requires a finite value.
void add_gate(std::vector<Gate>& gates, std::string name, double value, double limit) {
  bool ok = std::isfinite(value) && value <= limit;
  gates.push_back({std::move(name), value, limit, ok});
}

using NormOn = std::function<double(const SampledFunction&)>;

/// Per-sample ratio rows with the flagging contract: a throwing sample is
/// recorded and skipped, never fatal; a sample where both sides vanish is
/// excluded from the aggregates.
ConstantReport ratio_report(const std::string& id, const std::vector<SampledFunction>& corpus,
                            const NormOn& lhs_fn, const NormOn& rhs_fn) {
  ConstantReport report;
  report.id = id;
  for (const SampledFunction& f : corpus) {
    ReportRow row;
    row.label = f.label;
    try {
      row.lhs = lhs_fn(f);
      row.rhs = rhs_fn(f);
      if (row.lhs == 0.0 && row.rhs == 0.0) {
        row.flagged = true;
        row.note = "zero on both sides";
        ++report.skipped;
      } else if (row.rhs == 0.0) {
        row.ratio = kInf;
        row.note = "rhs vanished";
      } else {
        row.ratio = row.lhs / row.rhs;
      }
    } catch (const std::exception& e) {
      row.flagged = true;
      row.note = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  report.finalize();
  return report;
}

/// Largest unflagged finite ratio among the first `count` rows; the stability
/// gates compare this prefix constant against the full-corpus constant.
double prefix_max_ratio(const ConstantReport& report, std::size_t count) {
  double worst = 0.0;
  std::size_t seen = 0;
  for (const ReportRow& row : report.rows) {
    if (seen++ >= count) break;
    if (row.flagged || !std::isfinite(row.ratio)) continue;
    worst = std::max(worst, row.ratio);
  }
  return worst;
}

/// Relative growth of the empirical constant when the corpus doubles.
double doubling_growth(const ConstantReport& report, std::size_t half) {
  double c_half = prefix_max_ratio(report, half);
  double c_full = prefix_max_ratio(report, report.rows.size());
  if (!(c_half > 0.0)) return kInf;
  return (c_full - c_half) / c_half;
}

const std::vector<std::string>& series_colors() {
  static const std::vector<std::string> colors = {"#2b6cb0", "#c05621", "#2f855a",
                                                  "#6b46c1", "#c53030", "#2c7a7b"};
  return colors;
}

SuiteOutcome assemble(const std::string& name, const Config& cfg, const std::string& out_dir,
                      std::vector<ConstantReport> reports, const std::vector<Gate>& gates,
                      bool log_scatter) {
  SuiteOutcome outcome;
  outcome.name = name;
  outcome.passed = true;
  for (const Gate& g : gates) outcome.passed = outcome.passed && g.passed;

  nlohmann::json gates_json = nlohmann::json::array();
  for (const Gate& g : gates) {
    gates_json.push_back(
        {{"name", g.name}, {"value", g.value}, {"threshold", g.limit}, {"passed", g.passed}});
  }
  nlohmann::json reports_json = nlohmann::json::array();
  for (const ConstantReport& r : reports) reports_json.push_back(r.to_json());
  outcome.summary = {{"suite", name},
                     {"passed", outcome.passed},
                     {"gates", std::move(gates_json)},
                     {"config", cfg.to_json()},
                     {"reports", std::move(reports_json)}};

  std::filesystem::create_directories(out_dir);
  std::filesystem::path base = std::filesystem::path(out_dir) / name;

  std::vector<std::vector<std::string>> csv;
  csv.push_back({"report", "label", "lhs", "rhs", "ratio", "flagged", "note"});
  for (const ConstantReport& r : reports) {
    for (const ReportRow& row : r.rows) {
      csv.push_back({r.id, row.label, format_double(row.lhs), format_double(row.rhs),
                     format_double(row.ratio), row.flagged ? "1" : "0", row.note});
    }
  }
  write_csv(base.string() + ".csv", csv);
  write_text(base.string() + ".json", outcome.summary.dump(2) + "\n");

  SvgPlot plot;
  plot.title = name + (outcome.passed ? "  [pass]" : "  [FAIL]");
  plot.x_label = "sample index";
  plot.y_label = "ratio";
  plot.log_y = log_scatter;
  for (std::size_t r = 0; r < reports.size(); ++r) {
    SvgSeries series;
    series.name = reports[r].id;
    series.color = series_colors()[r % series_colors().size()];
    for (std::size_t i = 0; i < reports[r].rows.size(); ++i) {
      const ReportRow& row = reports[r].rows[i];
      if (row.flagged || !std::isfinite(row.ratio)) continue;
      series.x.push_back(static_cast<double>(i));
      series.y.push_back(row.ratio);
    }
    plot.series.push_back(std::move(series));
  }
  for (const Gate& g : gates) {
    if (std::isfinite(g.limit)) plot.guides.push_back(g.limit);
  }
  std::sort(plot.guides.begin(), plot.guides.end());
  plot.guides.erase(std::unique(plot.guides.begin(), plot.guides.end()), plot.guides.end());
  plot.write(base.string() + ".svg");

  outcome.reports = std::move(reports);
  return outcome;
}

// ---------------------------------------------------------------------------
// Hypothesis diagnostics: always computed and recorded, gating warnings only.
// ---------------------------------------------------------------------------

struct HypothesisBits {
  bool aq_finite = true;
  bool alpha_origin_ok = true;
  bool alpha_infinity_ok = true;
  bool violated = false;
  double constant = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
};

HypothesisBits check_hypotheses(const GridSpec& spec, const HerzParams& params) {
  HypothesisBits bits;
  MuckenhouptReport mk =
      muckenhoupt_constant(params.w, params.q, make_ball_family(spec, /*center_stride=*/256));
  DeltaFit fit = estimate_delta_exponents(params.w, params.q);
  double n = spec.dimension;
  bits.constant = mk.constant;
  bits.delta1 = fit.delta1;
  bits.delta2 = fit.delta2;
  bits.aq_finite = !mk.divergence_detected;
  bits.alpha_origin_ok = -n * fit.delta1 < params.alpha.value_at_origin;
  bits.alpha_infinity_ok = params.alpha.value_at_infinity < n * fit.delta2;
  bits.violated = !(bits.aq_finite && bits.alpha_origin_ok && bits.alpha_infinity_ok);
  return bits;
}

void record_hypotheses(ConstantReport& report, const HypothesisBits& bits) {
  report.hypothesis_flags["aq_finite"] = bits.aq_finite;
  report.hypothesis_flags["alpha_origin_ok"] = bits.alpha_origin_ok;
  report.hypothesis_flags["alpha_infinity_ok"] = bits.alpha_infinity_ok;
  report.hypothesis_flags["hypothesis_violated"] = bits.violated;
  report.extra["aq_constant"] = bits.constant;
  report.extra["delta1"] = bits.delta1;
  report.extra["delta2"] = bits.delta2;
}

SampledFunction abs_of(const SampledFunction& f) {
  SampledFunction out = f;
  for (std::complex<double>& v : out.values) v = std::abs(v);
  return out;
}

// ---------------------------------------------------------------------------
// Suite: lebesgue — constant-exponent oracle, homogeneity, unit modular.
// ---------------------------------------------------------------------------

SuiteOutcome suite_lebesgue(const Config& cfg, const std::string& out_dir) {
  GridSpec spec = grid_from(cfg);
  CorpusParams cp = corpus_from(cfg, 64);
  std::vector<SampledFunction> corpus = build_corpus(spec, cp);

  ConstantReport oracle;
  oracle.id = "constant-exponent-oracle";
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    ExponentFunction q = exponent_preset(spec, "const:" + format_double(p));
    for (const SampledFunction& f : corpus) {
      ReportRow row;
      row.label = f.label + "|p=" + format_double(p);
      try {
        double h_n = spec.cell_measure();
        double acc = 0.0;
        for (const std::complex<double>& v : f.values) acc += std::pow(std::abs(v), p);
        double direct = std::pow(h_n * acc, 1.0 / p);
        double lux = luxemburg_norm(f, q).norm;
        row.lhs = lux;
        row.rhs = direct;
        if (direct == 0.0) {
          row.flagged = true;
          row.note = "zero norm";
          ++oracle.skipped;
        } else {
          row.ratio = std::fabs(lux - direct) / direct;  // relative error
        }
      } catch (const std::exception& e) {
        row.flagged = true;
        row.note = e.what();
      }
      oracle.rows.push_back(std::move(row));
    }
  }
  oracle.finalize();

  // Randomized (f, q, c) triples: norm scaling and the modular at the norm.
  int triples = cfg.get_int("suite", "triples", 100);
  ConstantReport homogeneity, unit_modular;
  homogeneity.id = "homogeneity";
  unit_modular.id = "unit-modular";
  for (int i = 0; i < triples; ++i) {
    SampleRng rng(cp.seed, (1ULL << 40) + static_cast<std::uint64_t>(i));
    const SampledFunction& f = corpus[static_cast<std::size_t>(i) % corpus.size()];
    double c = std::exp2(rng.uniform(-10.0, 10.0));
    std::string preset;
    if (i % 2 == 0) {
      preset = "const:" + format_double(rng.uniform(1.05, 6.0));
    } else {
      preset = "log-perturbed:" + format_double(rng.uniform(1.2, 4.0)) + "," +
               format_double(rng.uniform(1.2, 4.0)) + ",1";
    }
    ExponentFunction q = exponent_preset(spec, preset);
    std::string label = f.label + "|" + preset + "|c=" + format_double(c);

    ReportRow hom, mod;
    hom.label = label;
    mod.label = label;
    try {
      LuxemburgResult base = luxemburg_norm(f, q);
      SampledFunction g = f;
      for (std::complex<double>& v : g.values) v *= c;
      LuxemburgResult scaled = luxemburg_norm(g, q);
      hom.lhs = scaled.norm;
      hom.rhs = c * base.norm;
      hom.ratio = hom.rhs == 0.0 ? kInf : std::fabs(hom.lhs - hom.rhs) / hom.rhs;
      mod.lhs = base.modular_at_norm;
      mod.rhs = 1.0;
      mod.ratio = std::fabs(base.modular_at_norm - 1.0);
    } catch (const std::exception& e) {
      hom.flagged = mod.flagged = true;
      hom.note = mod.note = e.what();
    }
    homogeneity.rows.push_back(std::move(hom));
    unit_modular.rows.push_back(std::move(mod));
  }
  homogeneity.finalize();
  unit_modular.finalize();

  std::vector<Gate> gates;
  add_gate(gates, "constant-exponent-oracle", oracle.max_ratio,
           threshold(cfg, "lebesgue_oracle", 1.0e-8));
  add_gate(gates, "homogeneity", homogeneity.max_ratio, threshold(cfg, "homogeneity", 1.0e-9));
  add_gate(gates, "unit-modular", unit_modular.max_ratio,
           threshold(cfg, "unit_modular", 1.0e-10));
  return assemble("lebesgue", cfg, out_dir,
                  {std::move(oracle), std::move(homogeneity), std::move(unit_modular)}, gates,
                  /*log_scatter=*/false);
}

// ---------------------------------------------------------------------------
// Suite: weights — fitted decay exponents against the constant-exponent
// closed form, plus class diagnostics for the configured weight.
// ---------------------------------------------------------------------------

SuiteOutcome suite_weights(const Config& cfg, const std::string& out_dir) {
  GridSpec spec = grid_from(cfg);

  ConstantReport fits;
  fits.id = "delta-exponent-fits";
  for (double p : {2.0, 4.0}) {
    ExponentFunction q = exponent_preset(spec, "const:" + format_double(p));
    Weight w = weight_preset(spec, "const:1");
    try {
      DeltaFit fit = estimate_delta_exponents(w, q);
      ReportRow r1, r2;
      r1.label = "p=" + format_double(p) + "|delta1";
      r1.lhs = fit.delta1;
      r1.rhs = 1.0 / p;
      r1.ratio = std::fabs(fit.delta1 - 1.0 / p);  // absolute error
      r1.flagged = fit.degenerate1;
      r2.label = "p=" + format_double(p) + "|delta2";
      r2.lhs = fit.delta2;
      r2.rhs = 1.0 - 1.0 / p;
      r2.ratio = std::fabs(fit.delta2 - (1.0 - 1.0 / p));
      r2.flagged = fit.degenerate2;
      fits.rows.push_back(std::move(r1));
      fits.rows.push_back(std::move(r2));
    } catch (const std::exception& e) {
      ReportRow bad;
      bad.label = "p=" + format_double(p);
      bad.flagged = true;
      bad.note = e.what();
      fits.rows.push_back(std::move(bad));
    }
  }
  fits.finalize();

  // Diagnostics for the configured (possibly nontrivial) pair; not gated.
  ConstantReport diag;
  diag.id = "weight-class-diagnostics";
  {
    ExponentFunction q = exponent_preset(spec, cfg.get("herz", "q", "log-perturbed:1.8,2.2,1"));
    Weight w = weight_preset(spec, cfg.get("herz", "w", "power:0.25"));
    try {
      WeightClassReport wc = classify_weight(w, q);
      ReportRow row;
      row.label = "configured-pair";
      row.lhs = wc.constant;
      row.rhs = wc.tilde_constant;
      row.ratio = wc.constant;
      row.note = "delta1=" + format_double(wc.delta1) + ";delta2=" + format_double(wc.delta2);
      row.flagged = wc.divergence_detected;
      diag.rows.push_back(std::move(row));
      diag.hypothesis_flags["aq_finite"] = !wc.divergence_detected;
      diag.extra["delta1"] = wc.delta1;
      diag.extra["delta2"] = wc.delta2;
    } catch (const std::exception& e) {
      ReportRow bad;
      bad.label = "configured-pair";
      bad.flagged = true;
      bad.note = e.what();
      diag.rows.push_back(std::move(bad));
    }
  }
  diag.finalize();

  std::vector<Gate> gates;
  add_gate(gates, "delta-fit-error", fits.max_ratio, threshold(cfg, "delta_fit", 0.02));
  return assemble("weights", cfg, out_dir, {std::move(fits), std::move(diag)}, gates,
                  /*log_scatter=*/false);
}

// ---------------------------------------------------------------------------
// Suite: herz — split form against the direct norm.
// ---------------------------------------------------------------------------

SuiteOutcome suite_herz(const Config& cfg, const std::string& out_dir) {
  GridSpec spec = grid_from(cfg);
  std::vector<SampledFunction> corpus = build_corpus(spec, corpus_from(cfg, 64));

  HerzParams variable =
      herz_from(cfg, spec, "log-perturbed:0.2,0.4,1", "const:2", "const:1");
  ConstantReport split_vs_direct = ratio_report(
      "split-vs-direct", corpus,
      [&](const SampledFunction& f) { return split_norm(f, variable).value; },
      [&](const SampledFunction& f) { return grand_herz_morrey_norm(f, variable).value; });

  HerzParams constant = make_herz_params(
      spec, exponent_preset(spec, cfg.get("herz", "alpha_const", "const:0.3")), variable.p,
      variable.q, variable.w, variable.lambda, variable.theta);
  ConstantReport const_alpha = ratio_report(
      "constant-alpha-identity", corpus,
      [&](const SampledFunction& f) { return split_norm(f, constant).value; },
      [&](const SampledFunction& f) { return grand_herz_morrey_norm(f, constant).value; });
  double worst_identity = 0.0;
  for (const ReportRow& row : const_alpha.rows) {
    if (row.flagged || !std::isfinite(row.ratio)) continue;
    worst_identity = std::max(worst_identity, std::fabs(row.ratio - 1.0));
  }
  const_alpha.extra["max_identity_error"] = worst_identity;

  std::vector<Gate> gates;
  add_gate(gates, "split-direct-spread", split_vs_direct.spread,
           threshold(cfg, "herz_spread", 16.0));
  add_gate(gates, "constant-alpha-identity", worst_identity,
           threshold(cfg, "herz_const_alpha", 1.0e-9));
  return assemble("herz", cfg, out_dir, {std::move(split_vs_direct), std::move(const_alpha)},
                  gates, /*log_scatter=*/true);
}

// ---------------------------------------------------------------------------
// Vector experiments shared by the sublinear and maximal suites.
// ---------------------------------------------------------------------------

/// Ratio rows ||op(sample)||_Herz / ||aggregate(sample)||_Herz over a vector
/// corpus, where `apply` maps the sample to the operator-side aggregate.
ConstantReport vector_ratio_report(
    const std::string& id, const std::vector<VectorFunction>& corpus,
    const std::function<SampledFunction(const VectorFunction&)>& apply, const HerzParams& params) {
  ConstantReport report;
  report.id = id;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const VectorFunction& vf = corpus[i];
    ReportRow row;
    row.label = "sample_" + std::to_string(i);
    try {
      SampledFunction lhs = apply(vf);
      SampledFunction rhs = vector_ell_r(vf);
      row.lhs = grand_herz_morrey_norm(lhs, params).value;
      row.rhs = grand_herz_morrey_norm(rhs, params).value;
      if (row.lhs == 0.0 && row.rhs == 0.0) {
        row.flagged = true;
        row.note = "zero on both sides";
        ++report.skipped;
      } else if (row.rhs == 0.0) {
        row.ratio = kInf;
        row.note = "rhs vanished";
      } else {
        row.ratio = row.lhs / row.rhs;
      }
    } catch (const std::exception& e) {
      row.flagged = true;
      row.note = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  report.finalize();
  return report;
}

// ---------------------------------------------------------------------------
// Suite: sublinear — size-condition operators, memberwise, with the
// stability-under-doubling gate and a hypothesis-violating weight run.
// ---------------------------------------------------------------------------

SuiteOutcome suite_sublinear(const Config& cfg, const std::string& out_dir) {
  GridSpec spec = grid_from(cfg);
  CorpusParams cp = corpus_from(cfg, 64);
  int half = cp.size;
  CorpusParams doubled = cp;
  doubled.size = 2 * half;
  int members = cfg.get_int("suite", "vector_members", 4);
  std::vector<VectorFunction> corpus = build_vector_corpus(spec, doubled, members, 2.0);

  HerzParams params = herz_from(cfg, spec, "const:0.3", "const:2", "const:1");
  double stability = threshold(cfg, "stability", 0.10);

  std::vector<ConstantReport> reports;
  std::vector<Gate> gates;
  const std::pair<SizeKernel, std::string> kernels[] = {
      {SizeKernel::riesz_truncated, "riesz"},
      {SizeKernel::kernel_power, "power"},
  };
  for (const auto& [kind, kname] : kernels) {
    ConstantReport report = vector_ratio_report(
        "size-operator-" + kname, corpus,
        [kind](const VectorFunction& vf) {
          VectorFunction mapped;
          mapped.r = vf.r;
          for (const SampledFunction& f : vf.members)
            mapped.members.push_back(size_condition_operator(f, kind));
          return vector_ell_r(mapped);
        },
        params);
    double growth = doubling_growth(report, static_cast<std::size_t>(half));
    report.extra["constant_half"] = prefix_max_ratio(report, static_cast<std::size_t>(half));
    report.extra["constant_full"] = prefix_max_ratio(report, report.rows.size());
    report.extra["doubling_growth"] = growth;
    add_gate(gates, kname + "-constant-finite", report.max_ratio, kInf);
    add_gate(gates, kname + "-doubling-growth", growth, stability);
    reports.push_back(std::move(report));
  }

  // Deliberately out-of-class weight: diagnostics fire, rows are flagged, and
  // nothing here participates in the gates.
  {
    HerzParams bad = make_herz_params(spec, params.alpha, params.p, params.q,
                                      weight_preset(spec, "power:2"), params.lambda, params.theta);
    HypothesisBits bits = check_hypotheses(spec, bad);
    int probe = std::min(16, half);
    std::vector<VectorFunction> sub(corpus.begin(), corpus.begin() + probe);
    ConstantReport report = vector_ratio_report(
        "size-operator-riesz-w-power2", sub,
        [](const VectorFunction& vf) {
          VectorFunction mapped;
          mapped.r = vf.r;
          for (const SampledFunction& f : vf.members)
            mapped.members.push_back(size_condition_operator(f, SizeKernel::riesz_truncated));
          return vector_ell_r(mapped);
        },
        bad);
    record_hypotheses(report, bits);
    if (bits.violated) {
      for (ReportRow& row : report.rows) {
        row.flagged = true;
        if (row.note.empty()) row.note = "hypothesis_violated";
      }
      report.finalize();
    }
    reports.push_back(std::move(report));
  }

  return assemble("sublinear", cfg, out_dir, std::move(reports), gates, /*log_scatter=*/true);
}

// ---------------------------------------------------------------------------
// Suite: maximal_vector — vector maximal boundedness for two parameter sets.
// ---------------------------------------------------------------------------

SuiteOutcome suite_maximal_vector(const Config& cfg, const std::string& out_dir) {
  GridSpec spec = grid_from(cfg);
  CorpusParams cp = corpus_from(cfg, 64);
  int half = cp.size;
  CorpusParams doubled = cp;
  doubled.size = 2 * half;
  int members = cfg.get_int("suite", "vector_members", 4);
  std::vector<VectorFunction> corpus = build_vector_corpus(spec, doubled, members, 2.0);
  WindowFamily family = WindowFamily::dyadic(spec);
  double stability = threshold(cfg, "stability", 0.10);

  // The two pinned parameter sets: plain, and perturbed-exponent with a mild
  // power weight.  alpha/p/lambda/theta still come from the config.
  struct ParamSet {
    std::string name;
    std::string q, w;
  };
  const ParamSet sets[] = {
      {"const", "const:2", "const:1"},
      {"perturbed", "log-perturbed:1.8,2.2,1", "power:0.25"},
  };

  std::vector<ConstantReport> reports;
  std::vector<Gate> gates;
  for (const ParamSet& set : sets) {
    HerzParams params = make_herz_params(
        spec, exponent_preset(spec, cfg.get("herz", "alpha", "const:0.3")),
        cfg.get_double("herz", "p", 2.0), exponent_preset(spec, set.q), weight_preset(spec, set.w),
        cfg.get_double("herz", "lambda", 0.1), cfg.get_double("herz", "theta", 1.0));
    ConstantReport report = vector_ratio_report(
        "maximal-" + set.name, corpus,
        [&family](const VectorFunction& vf) { return vector_maximal_ell_r(vf, family); }, params);
    double growth = doubling_growth(report, static_cast<std::size_t>(half));
    report.extra["constant_half"] = prefix_max_ratio(report, static_cast<std::size_t>(half));
    report.extra["constant_full"] = prefix_max_ratio(report, report.rows.size());
    report.extra["doubling_growth"] = growth;
    record_hypotheses(report, check_hypotheses(spec, params));
    add_gate(gates, set.name + "-constant-finite", report.max_ratio, kInf);
    add_gate(gates, set.name + "-doubling-growth", growth, stability);
    reports.push_back(std::move(report));
  }

  return assemble("maximal_vector", cfg, out_dir, std::move(reports), gates,
                  /*log_scatter=*/true);
}

// ---------------------------------------------------------------------------
// Suite: calderon — reproducing identity on band-limited members.
// ---------------------------------------------------------------------------

SuiteOutcome suite_calderon(const Config& cfg, const std::string& out_dir) {
  GridSpec spec = grid_from(cfg);
  CorpusParams cp = corpus_from(cfg, 32);
  cp.band_limited = true;
  std::vector<SampledFunction> corpus = build_corpus(spec, cp);
  FilterBank pair = build_admissible_pair(spec);
  FilterBank dual = build_admissible_dual(pair);

  ConstantReport direct, sampled;
  direct.id = "reconstruction";
  sampled.id = "reconstruction-sampled";
  for (const SampledFunction& f : corpus) {
    ReportRow row, srow;
    row.label = srow.label = f.label;
    try {
      ReconstructionReport rep = calderon_check(f, pair, dual);
      row.lhs = rep.rel_l2_error;
      row.rhs = 0.0;
      row.ratio = rep.rel_l2_error;
      row.note = "spillover=" + format_double(rep.spillover);
      ReconstructionReport srep = calderon_check_sampled(f, pair, dual);
      srow.lhs = srep.rel_l2_error;
      srow.rhs = 0.0;
      srow.ratio = srep.rel_l2_error;
    } catch (const std::exception& e) {
      row.flagged = srow.flagged = true;
      row.note = srow.note = e.what();
    }
    direct.rows.push_back(std::move(row));
    sampled.rows.push_back(std::move(srow));
  }
  direct.finalize();
  sampled.finalize();

  std::vector<Gate> gates;
  add_gate(gates, "reconstruction-error", direct.max_ratio,
           threshold(cfg, "calderon_error", 1.0e-8));
  return assemble("calderon", cfg, out_dir, {std::move(direct), std::move(sampled)}, gates,
                  /*log_scatter=*/false);
}

// ---------------------------------------------------------------------------
// Suite: peetre — scale-decomposition norm equivalences and the pointwise
// domination of convolution by the maximal variant.
// ---------------------------------------------------------------------------

SuiteOutcome suite_peetre(const Config& cfg, const std::string& out_dir) {
  GridSpec spec = grid_from(cfg);
  std::vector<SampledFunction> corpus = build_corpus(spec, corpus_from(cfg, 64));
  TLParams tl = tl_from(cfg, herz_from(cfg, spec, "const:0.3", "const:2", "const:1"));
  PeetreParams pp = peetre_from(cfg);

  FilterBank res_a = build_resolution_of_unity(spec);
  FilterBank res_b = build_resolution_of_unity(spec, 1.25, 1.75);
  FilterBank pair = build_admissible_pair(spec);

  // One pass per member; the three comparisons reuse the same evaluations.
  std::vector<double> na(corpus.size()), nb(corpus.size()), nadm(corpus.size()),
      npee(corpus.size());
  std::vector<std::string> errors(corpus.size());
  bool a_t_ok = pp.a * pp.t_integrability > spec.dimension;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    try {
      na[i] = tl_norm(corpus[i], res_a, tl);
      nb[i] = tl_norm(corpus[i], res_b, tl);
      nadm[i] = tl_norm_admissible(corpus[i], pair, tl);
      FlaggedValue fv = tl_norm_peetre(corpus[i], pair, tl, pp);
      npee[i] = fv.value;
      a_t_ok = a_t_ok && fv.hypothesis_ok;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }

  auto comparison = [&](const std::string& id, const std::vector<double>& lhs,
                        const std::vector<double>& rhs) {
    ConstantReport report;
    report.id = id;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      ReportRow row;
      row.label = corpus[i].label;
      if (!errors[i].empty()) {
        row.flagged = true;
        row.note = errors[i];
      } else {
        row.lhs = lhs[i];
        row.rhs = rhs[i];
        if (row.lhs == 0.0 && row.rhs == 0.0) {
          row.flagged = true;
          row.note = "zero on both sides";
          ++report.skipped;
        } else if (row.rhs == 0.0) {
          row.ratio = kInf;
        } else {
          row.ratio = row.lhs / row.rhs;
        }
      }
      report.rows.push_back(std::move(row));
    }
    report.finalize();
    return report;
  };

  ConstantReport windows = comparison("resolution-windows", na, nb);
  ConstantReport adm_vs_res = comparison("admissible-vs-resolution", nadm, na);
  ConstantReport peetre_vs_adm = comparison("peetre-vs-admissible", npee, nadm);
  peetre_vs_adm.hypothesis_flags["a_t_exceeds_dimension"] = a_t_ok;

  // Pointwise check |piece| <= maximal variant, exact by construction of the
  // lattice sup (the center point is part of the sup).
  ConstantReport domination;
  domination.id = "pointwise-domination";
  std::size_t probe = std::min<std::size_t>(corpus.size(), 8);
  for (std::size_t i = 0; i < probe; ++i) {
    ReportRow row;
    row.label = corpus[i].label;
    try {
      double worst = 0.0;
      for (int level = 0; level < pair.levels(); ++level) {
        SampledFunction piece = filter_convolve(corpus[i], pair, level);
        SampledFunction sup = peetre_maximal(corpus[i], pair, level, pp.a);
        for (std::size_t c = 0; c < piece.values.size(); ++c) {
          worst = std::max(worst, std::abs(piece.values[c]) - sup.values[c].real());
        }
      }
      row.lhs = worst;
      row.rhs = 0.0;
      row.ratio = std::max(worst, 0.0);
    } catch (const std::exception& e) {
      row.flagged = true;
      row.note = e.what();
    }
    domination.rows.push_back(std::move(row));
  }
  domination.finalize();

  double tl_spread = threshold(cfg, "tl_spread", 16.0);
  std::vector<Gate> gates;
  add_gate(gates, "resolution-windows-spread", windows.spread, tl_spread);
  add_gate(gates, "admissible-vs-resolution-spread", adm_vs_res.spread, tl_spread);
  add_gate(gates, "peetre-vs-admissible-spread", peetre_vs_adm.spread, tl_spread);
  add_gate(gates, "pointwise-domination", domination.max_ratio,
           threshold(cfg, "ordering", 1.0e-12));
  return assemble("peetre", cfg, out_dir,
                  {std::move(windows), std::move(adm_vs_res), std::move(peetre_vs_adm),
                   std::move(domination)},
                  gates, /*log_scatter=*/true);
}

// ---------------------------------------------------------------------------
// Suite: five_norms — the five kernel-norm displays on one corpus.
// ---------------------------------------------------------------------------

SuiteOutcome suite_five_norms(const Config& cfg, const std::string& out_dir) {
  GridSpec spec = grid_from(cfg);
  std::vector<SampledFunction> corpus = build_corpus(spec, corpus_from(cfg, 16));
  TLParams tl = tl_from(cfg, herz_from(cfg, spec, "const:0.3", "const:2", "const:1"));
  PeetreParams pp = peetre_from(cfg);
  FilterBank family = build_kernel_family(spec, cfg.get_double("kernel", "epsilon", 0.5),
                                          cfg.get_int("kernel", "moments", 1));

  const std::vector<std::string> keys = {"n1", "n2", "n3", "n4", "n5"};
  std::vector<std::map<std::string, double>> values(corpus.size());
  ConstantReport members;
  members.id = "member-spread";
  double worst_ordering = 0.0;
  int zero_values = 0;
  bool quadrature_ok = true;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    ReportRow row;
    row.label = corpus[i].label;
    try {
      NormComparison nc = kernel_norms(corpus[i], family, tl, pp);
      values[i] = nc.values;
      worst_ordering = std::max(worst_ordering, nc.ordering_violation);
      quadrature_ok = quadrature_ok && nc.quadrature_ok;
      double hi = 0.0, lo = kInf;
      std::string note;
      bool any_zero = false;
      for (const std::string& key : keys) {
        double v = nc.values.at(key);
        hi = std::max(hi, v);
        lo = std::min(lo, v);
        any_zero = any_zero || v == 0.0;
        if (!note.empty()) note += ";";
        note += key + "=" + format_double(v);
      }
      row.lhs = hi;
      row.rhs = lo;
      row.ratio = nc.max_spread();
      row.note = note;
      if (any_zero && max_abs(corpus[i]) > 0.0) {
        row.flagged = true;
        row.note += ";zero norm value";
        ++zero_values;
      }
    } catch (const std::exception& e) {
      row.flagged = true;
      row.note = e.what();
    }
    members.rows.push_back(std::move(row));
  }
  members.finalize();
  members.hypothesis_flags["quadrature_resolved"] = quadrature_ok;
  members.extra["ordering_violation"] = worst_ordering;

  // Corpus-level spread for each of the ten pairs: the empirical equivalence
  // constant of that pair of displays.
  double worst_pair = 0.0;
  for (std::size_t a = 0; a < keys.size(); ++a) {
    for (std::size_t b = a + 1; b < keys.size(); ++b) {
      double hi = 0.0, lo = kInf;
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (values[i].empty()) continue;
        double va = values[i].at(keys[a]);
        double vb = values[i].at(keys[b]);
        if (va == 0.0 && vb == 0.0) continue;
        double ratio = vb == 0.0 ? kInf : va / vb;
        hi = std::max(hi, ratio);
        lo = std::min(lo, ratio);
      }
      double spread = (!std::isfinite(hi) || !(lo > 0.0)) ? kInf : hi / lo;
      if (hi >= lo) {
        members.extra["spread_" + keys[a] + "_" + keys[b]] = spread;
        worst_pair = std::max(worst_pair, spread);
      }
    }
  }

  std::vector<Gate> gates;
  add_gate(gates, "pairwise-spread", worst_pair, threshold(cfg, "five_spread", 64.0));
  add_gate(gates, "ordering-violation", worst_ordering, threshold(cfg, "ordering", 1.0e-12));
  add_gate(gates, "zero-norm-members", static_cast<double>(zero_values), 0.0);
  return assemble("five_norms", cfg, out_dir, {std::move(members)}, gates, /*log_scatter=*/true);
}

// ---------------------------------------------------------------------------
// Suite: convolution_lemma — shell-index smoothing closed form and bound.
// ---------------------------------------------------------------------------

SuiteOutcome suite_convolution_lemma(const Config& cfg, const std::string& out_dir) {
  GridSpec spec = grid_from(cfg);
  std::vector<SampledFunction> corpus = build_corpus(spec, corpus_from(cfg, 64));
  HerzParams params = herz_from(cfg, spec, "const:0.3", "const:2", "const:1");
  double delta_prime = cfg.get_double("suite", "delta_prime", 1.0);
  double beta = cfg.get_double("suite", "beta", 2.0);

  // One live member: both sides share one profile and the ratio collapses to
  // the l^beta mass of the geometric weights.
  ConstantReport closed;
  closed.id = "single-shell-closed-form";
  const int count = 9;
  double mass_want = 0.0;
  for (int live = 0; live < count; ++live) {
    ReportRow row;
    row.label = "live=" + std::to_string(live);
    try {
      std::vector<SampledFunction> g;
      for (int j = 0; j < count; ++j) {
        g.push_back(j == live ? corpus[static_cast<std::size_t>(live)] : zero_function(spec));
      }
      ConvolutionBoundReport rep = discrete_convolution_bound(g, delta_prime, beta, params);
      double mass = 0.0;
      for (int j = 0; j < count; ++j) {
        mass += std::exp2(-delta_prime * beta * std::abs(j - live));
      }
      double want = std::pow(mass, 1.0 / beta);
      mass_want = want;
      row.lhs = rep.ratio;
      row.rhs = want;
      row.ratio = std::fabs(rep.ratio - want) / want;  // relative error
    } catch (const std::exception& e) {
      row.flagged = true;
      row.note = e.what();
    }
    closed.rows.push_back(std::move(row));
  }
  closed.finalize();
  closed.extra["closed_form_value"] = mass_want;

  // Random nonnegative stacks against the summation-oracle bound.
  ConstantReport young;
  young.id = "young-bound";
  int samples = cfg.get_int("suite", "young_samples", 8);
  int stack = 8;
  for (int s = 0; s < samples; ++s) {
    ReportRow row;
    row.label = "stack_" + std::to_string(s);
    try {
      std::vector<SampledFunction> g;
      for (int j = 0; j < stack; ++j) {
        g.push_back(abs_of(corpus[static_cast<std::size_t>((s * stack + j) % corpus.size())]));
      }
      ConvolutionBoundReport rep = discrete_convolution_bound(g, delta_prime, beta, params);
      row.lhs = rep.lhs;
      row.rhs = rep.rhs;
      row.ratio = rep.ratio;
    } catch (const std::exception& e) {
      row.flagged = true;
      row.note = e.what();
    }
    young.rows.push_back(std::move(row));
  }
  young.finalize();

  std::vector<Gate> gates;
  add_gate(gates, "closed-form-error", closed.max_ratio, threshold(cfg, "closed_form", 1.0e-9));
  add_gate(gates, "young-bound", young.max_ratio, threshold(cfg, "young_bound", 6.0));
  return assemble("convolution_lemma", cfg, out_dir, {std::move(closed), std::move(young)}, gates,
                  /*log_scatter=*/false);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "lebesgue", "weights",  "herz",       "sublinear",        "maximal_vector",
      "calderon", "peetre",   "five_norms", "convolution_lemma"};
  return names;
}

SuiteOutcome run_suite(const std::string& name, const Config& cfg, const std::string& out_dir) {
  if (name == "lebesgue") return suite_lebesgue(cfg, out_dir);
  if (name == "weights") return suite_weights(cfg, out_dir);
  if (name == "herz") return suite_herz(cfg, out_dir);
  if (name == "sublinear") return suite_sublinear(cfg, out_dir);
  if (name == "maximal_vector") return suite_maximal_vector(cfg, out_dir);
  if (name == "calderon") return suite_calderon(cfg, out_dir);
  if (name == "peetre") return suite_peetre(cfg, out_dir);
  if (name == "five_norms") return suite_five_norms(cfg, out_dir);
  if (name == "convolution_lemma") return suite_convolution_lemma(cfg, out_dir);
  throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
}

// ---------------------------------------------------------------------------
// Single-inequality estimates.
// ---------------------------------------------------------------------------

namespace {

void set_passed(ConstantReport& report, bool passed) {
  report.extra["passed"] = passed ? 1.0 : 0.0;
}

ConstantReport estimate_vt1(const Config& cfg) {
  GridSpec spec = grid_from(cfg);
  std::vector<VectorFunction> corpus =
      build_vector_corpus(spec, corpus_from(cfg, 64), cfg.get_int("suite", "vector_members", 4),
                          2.0);
  HerzParams params = herz_from(cfg, spec, "const:0.3", "const:2", "const:1");
  ConstantReport out;
  out.id = "vT1";
  for (SizeKernel kind : {SizeKernel::riesz_truncated, SizeKernel::kernel_power}) {
    std::string kname = kind == SizeKernel::riesz_truncated ? "riesz" : "power";
    ConstantReport part = vector_ratio_report(
        kname, corpus,
        [kind](const VectorFunction& vf) {
          VectorFunction mapped;
          mapped.r = vf.r;
          for (const SampledFunction& f : vf.members)
            mapped.members.push_back(size_condition_operator(f, kind));
          return vector_ell_r(mapped);
        },
        params);
    for (ReportRow& row : part.rows) {
      row.label = kname + "|" + row.label;
      out.rows.push_back(std::move(row));
    }
    out.extra["max_ratio_" + kname] = part.max_ratio;
  }
  out.finalize();
  set_passed(out, std::isfinite(out.max_ratio));
  return out;
}

ConstantReport estimate_vc1(const Config& cfg) {
  GridSpec spec = grid_from(cfg);
  CorpusParams cp = corpus_from(cfg, 64);
  int half = cp.size;
  cp.size = 2 * half;
  std::vector<VectorFunction> corpus =
      build_vector_corpus(spec, cp, cfg.get_int("suite", "vector_members", 4), 2.0);
  HerzParams params = herz_from(cfg, spec, "const:0.3", "const:2", "const:1");
  WindowFamily family = WindowFamily::dyadic(spec);
  ConstantReport out = vector_ratio_report(
      "vC1", corpus,
      [&family](const VectorFunction& vf) { return vector_maximal_ell_r(vf, family); }, params);
  double growth = doubling_growth(out, static_cast<std::size_t>(half));
  out.extra["constant_half"] = prefix_max_ratio(out, static_cast<std::size_t>(half));
  out.extra["constant_full"] = prefix_max_ratio(out, out.rows.size());
  out.extra["doubling_growth"] = growth;
  set_passed(out, std::isfinite(out.max_ratio) && growth <= threshold(cfg, "stability", 0.10));
  return out;
}

ConstantReport estimate_vl13(const Config& cfg) {
  GridSpec spec = grid_from(cfg);
  std::vector<SampledFunction> corpus = build_corpus(spec, corpus_from(cfg, 32));
  HerzParams params = herz_from(cfg, spec, "const:0.3", "const:2", "const:1");
  WindowFamily family = WindowFamily::dyadic(spec);
  ConstantReport out = ratio_report(
      "vL13", corpus,
      [&](const SampledFunction& f) {
        return grand_herz_morrey_norm(maximal(f, family), params).value;
      },
      [&](const SampledFunction& f) { return grand_herz_morrey_norm(f, params).value; });
  set_passed(out, std::isfinite(out.max_ratio));
  return out;
}

ConstantReport estimate_tt_l1(const Config& cfg) {
  GridSpec spec = grid_from(cfg);
  std::vector<SampledFunction> corpus = build_corpus(spec, corpus_from(cfg, 64));
  HerzParams params = herz_from(cfg, spec, "const:0.3", "const:2", "const:1");
  double delta_prime = cfg.get_double("suite", "delta_prime", 1.0);
  double beta = cfg.get_double("suite", "beta", 2.0);
  ConstantReport out;
  out.id = "tt-L1";
  int samples = cfg.get_int("suite", "young_samples", 8);
  for (int s = 0; s < samples; ++s) {
    ReportRow row;
    row.label = "stack_" + std::to_string(s);
    try {
      std::vector<SampledFunction> g;
      for (int j = 0; j < 8; ++j) {
        g.push_back(abs_of(corpus[static_cast<std::size_t>((s * 8 + j) % corpus.size())]));
      }
      ConvolutionBoundReport rep = discrete_convolution_bound(g, delta_prime, beta, params);
      row.lhs = rep.lhs;
      row.rhs = rep.rhs;
      row.ratio = rep.ratio;
    } catch (const std::exception& e) {
      row.flagged = true;
      row.note = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  out.finalize();
  set_passed(out, out.max_ratio <= threshold(cfg, "young_bound", 6.0));
  return out;
}

ConstantReport estimate_tt_l3(const Config& cfg) {
  GridSpec spec = grid_from(cfg);
  std::vector<SampledFunction> corpus = build_corpus(spec, corpus_from(cfg, 16));
  FilterBank bank = build_resolution_of_unity(spec);
  double r = cfg.get_double("eta", "r", 0.5);
  double m = cfg.get_double("eta", "m", 4.0);
  int j = cfg.get_int("eta", "level", bank.j_max / 2);
  ConstantReport out;
  out.id = "tt-L3";
  for (const SampledFunction& f : corpus) {
    ReportRow row;
    row.label = f.label;
    try {
      EtaMajorizationReport rep = eta_majorization_check(f, bank, j, r, m);
      row.lhs = rep.max_ratio;
      row.rhs = 1.0;
      row.ratio = rep.max_ratio;
      row.note = "worst_level=" + std::to_string(rep.worst_level_jp);
    } catch (const std::exception& e) {
      row.flagged = true;
      row.note = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  out.finalize();
  out.extra["r"] = r;
  out.extra["m"] = m;
  set_passed(out, std::isfinite(out.max_ratio));
  return out;
}

ConstantReport estimate_ghm_l1(const Config& cfg) {
  GridSpec spec = grid_from(cfg);
  std::vector<SampledFunction> corpus = build_corpus(spec, corpus_from(cfg, 64));
  HerzParams params = herz_from(cfg, spec, "log-perturbed:0.2,0.4,1", "const:2", "const:1");
  ConstantReport out = ratio_report(
      "ghm-L1", corpus,
      [&](const SampledFunction& f) { return split_norm(f, params).value; },
      [&](const SampledFunction& f) { return grand_herz_morrey_norm(f, params).value; });
  set_passed(out, out.spread <= threshold(cfg, "herz_spread", 16.0));
  return out;
}

ConstantReport estimate_vt2(const Config& cfg) {
  GridSpec spec = grid_from(cfg);
  std::vector<SampledFunction> corpus = build_corpus(spec, corpus_from(cfg, 32));
  TLParams tl = tl_from(cfg, herz_from(cfg, spec, "const:0.3", "const:2", "const:1"));
  FilterBank res_a = build_resolution_of_unity(spec);
  FilterBank res_b = build_resolution_of_unity(spec, 1.25, 1.75);
  FilterBank pair = build_admissible_pair(spec);

  ConstantReport windows = ratio_report(
      "windows", corpus, [&](const SampledFunction& f) { return tl_norm(f, res_a, tl); },
      [&](const SampledFunction& f) { return tl_norm(f, res_b, tl); });
  ConstantReport adm = ratio_report(
      "admissible", corpus,
      [&](const SampledFunction& f) { return tl_norm_admissible(f, pair, tl); },
      [&](const SampledFunction& f) { return tl_norm(f, res_a, tl); });

  ConstantReport out;
  out.id = "vT2";
  for (ReportRow& row : windows.rows) {
    row.label = "windows|" + row.label;
    out.rows.push_back(std::move(row));
  }
  for (ReportRow& row : adm.rows) {
    row.label = "admissible|" + row.label;
    out.rows.push_back(std::move(row));
  }
  out.finalize();
  out.extra["windows_spread"] = windows.spread;
  out.extra["admissible_spread"] = adm.spread;
  double limit = threshold(cfg, "tl_spread", 16.0);
  set_passed(out, windows.spread <= limit && adm.spread <= limit);
  return out;
}

ConstantReport estimate_peetre(const Config& cfg) {
  GridSpec spec = grid_from(cfg);
  std::vector<SampledFunction> corpus = build_corpus(spec, corpus_from(cfg, 32));
  TLParams tl = tl_from(cfg, herz_from(cfg, spec, "const:0.3", "const:2", "const:1"));
  PeetreParams pp = peetre_from(cfg);
  FilterBank pair = build_admissible_pair(spec);
  ConstantReport out = ratio_report(
      "peetre", corpus,
      [&](const SampledFunction& f) { return tl_norm_peetre(f, pair, tl, pp).value; },
      [&](const SampledFunction& f) { return tl_norm_admissible(f, pair, tl); });
  out.hypothesis_flags["a_t_exceeds_dimension"] = pp.a * pp.t_integrability > spec.dimension;
  set_passed(out, out.spread <= threshold(cfg, "tl_spread", 16.0));
  return out;
}

ConstantReport estimate_five_pair(const Config& cfg, int a, int b) {
  GridSpec spec = grid_from(cfg);
  std::vector<SampledFunction> corpus = build_corpus(spec, corpus_from(cfg, 8));
  TLParams tl = tl_from(cfg, herz_from(cfg, spec, "const:0.3", "const:2", "const:1"));
  PeetreParams pp = peetre_from(cfg);
  FilterBank family = build_kernel_family(spec, cfg.get_double("kernel", "epsilon", 0.5),
                                          cfg.get_int("kernel", "moments", 1));
  std::string ka = "n" + std::to_string(a), kb = "n" + std::to_string(b);
  ConstantReport out;
  out.id = "five_norms:" + std::to_string(a) + "/" + std::to_string(b);
  for (const SampledFunction& f : corpus) {
    ReportRow row;
    row.label = f.label;
    try {
      NormComparison nc = kernel_norms(f, family, tl, pp);
      row.lhs = nc.values.at(ka);
      row.rhs = nc.values.at(kb);
      row.ratio = nc.pairwise_ratio(ka, kb);
      if (row.lhs == 0.0 && row.rhs == 0.0) {
        row.flagged = true;
        row.note = "zero on both sides";
        ++out.skipped;
      }
    } catch (const std::exception& e) {
      row.flagged = true;
      row.note = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  out.finalize();
  set_passed(out, out.spread <= threshold(cfg, "five_spread", 64.0));
  return out;
}

}  // namespace

ConstantReport estimate_constant(const std::string& id, const Config& cfg) {
  if (id == "vT1") return estimate_vt1(cfg);
  if (id == "vC1") return estimate_vc1(cfg);
  if (id == "vL13") return estimate_vl13(cfg);
  if (id == "tt-L1") return estimate_tt_l1(cfg);
  if (id == "tt-L3") return estimate_tt_l3(cfg);
  if (id == "ghm-L1") return estimate_ghm_l1(cfg);
  if (id == "vT2") return estimate_vt2(cfg);
  if (id == "peetre") return estimate_peetre(cfg);
  if (id.rfind("five_norms:", 0) == 0) {
    std::string pair = id.substr(std::string("five_norms:").size());
    std::size_t slash = pair.find('/');
    if (slash != std::string::npos) {
      try {
        int a = std::stoi(pair.substr(0, slash));
        int b = std::stoi(pair.substr(slash + 1));
        if (a >= 1 && a <= 5 && b >= 1 && b <= 5 && a != b) {
          return estimate_five_pair(cfg, a, b);
        }
      } catch (const std::exception&) {
      }
    }
    throw std::invalid_argument("estimate_constant: malformed pair in '" + id + "'");
  }
  throw std::invalid_argument("estimate_constant: unknown inequality id '" + id + "'");
}

}  // namespace herzlab
