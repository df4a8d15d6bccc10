#pragma once

#include <string>
#include <vector>

#include "herzlab/config.hpp"
#include "herzlab/report.hpp"

namespace herzlab {

/// Outcome of one experiment suite: reports, the summary JSON written next to
/// them, and whether every threshold held.
struct SuiteOutcome {
  std::string name;
  bool passed = false;
  std::vector<ConstantReport> reports;
  nlohmann::json summary;
};

const std::vector<std::string>& suite_names();

/// Runs a named suite and writes <out_dir>/<suite>.{csv,json,svg}.
/// Throws std::invalid_argument for unknown names.
SuiteOutcome run_suite(const std::string& name, const Config& cfg, const std::string& out_dir);

/// Single-target constant estimation (used by `estimate`): ids
///   vT1, vC1, vL13, tt-L1, tt-L3, ghm-L1, vT2, peetre, five_norms:<i>/<j>
ConstantReport estimate_constant(const std::string& id, const Config& cfg);

}  // namespace herzlab
