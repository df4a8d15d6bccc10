#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace herzlab {

/// Deterministic double formatting used by every writer (%.17g, C locale).
std::string format_double(double v);

/// One measured inequality instance.
struct ReportRow {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool flagged = false;     // hypothesis violation or numerical failure
  std::string note;
};

/// Empirical constant of an inequality (or equivalence) over a corpus with a
/// per-sample breakdown.  Serializes to CSV (one row per sample), a JSON
/// summary, and a scatter plot.
struct ConstantReport {
  std::string id;
  std::vector<ReportRow> rows;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  double spread = 0.0;
  int skipped = 0;
  std::string argmax_label;
  std::map<std::string, bool> hypothesis_flags;
  std::map<std::string, double> extra;  // auxiliary scalars worth recording

  /// Fills max/min/spread/argmax from the rows (flagged rows excluded from
  /// the gating aggregates but kept in the breakdown).
  void finalize();

  nlohmann::json to_json() const;
  /// header + data rows for the CSV writer.
  std::vector<std::vector<std::string>> to_csv() const;
};

/// RFC-4180 CSV writer: fields containing separators, quotes, or newlines
/// are quoted, quotes doubled; rows end in CRLF.
void write_csv(const std::string& path, const std::vector<std::vector<std::string>>& rows);

void write_text(const std::string& path, const std::string& content);

}  // namespace herzlab
