#include "herzlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace herzlab {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ConstantReport::finalize() {
  max_ratio = 0.0;
  min_ratio = 0.0;
  spread = 0.0;
  argmax_label.clear();
  bool any = false;
  for (const ReportRow& row : rows) {
    if (row.flagged) continue;
    if (!any || row.ratio > max_ratio) {
      max_ratio = row.ratio;
      argmax_label = row.label;
    }
    min_ratio = any ? std::min(min_ratio, row.ratio) : row.ratio;
    any = true;
  }
  if (!any) return;
  if (!std::isfinite(max_ratio) || !(min_ratio > 0.0)) {
    spread = std::numeric_limits<double>::infinity();
  } else {
    spread = max_ratio / min_ratio;
  }
}

nlohmann::json ConstantReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const ReportRow& row : rows) {
    rows_json.push_back({{"label", row.label},
                         {"lhs", row.lhs},
                         {"rhs", row.rhs},
                         {"ratio", row.ratio},
                         {"flagged", row.flagged},
                         {"note", row.note}});
  }
  return {{"id", id},
          {"max_ratio", max_ratio},
          {"min_ratio", min_ratio},
          {"spread", spread},
          {"skipped", skipped},
          {"argmax_label", argmax_label},
          {"hypothesis_flags", hypothesis_flags},
          {"extra", extra},
          {"rows", std::move(rows_json)}};
}

std::vector<std::vector<std::string>> ConstantReport::to_csv() const {
  std::vector<std::vector<std::string>> out;
  out.reserve(rows.size() + 1);
  out.push_back({"label", "lhs", "rhs", "ratio", "flagged", "note"});
  for (const ReportRow& row : rows) {
    out.push_back({row.label, format_double(row.lhs), format_double(row.rhs),
                   format_double(row.ratio), row.flagged ? "1" : "0", row.note});
  }
  return out;
}

namespace {

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\r\n") != std::string::npos;
}

std::string quoted(const std::string& field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  for (const std::vector<std::string>& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << (needs_quoting(row[i]) ? quoted(row[i]) : row[i]);
    }
    out << "\r\n";
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_text: cannot open " + path);
  out << content;
  if (!out) throw std::runtime_error("write_text: write failed for " + path);
}

}  // namespace herzlab
