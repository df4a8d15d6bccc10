#include "herzlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "herzlab/report.hpp"

namespace herzlab {

namespace {

// Fixed canvas; data is affinely mapped into the plot box.
constexpr double kWidth = 640.0, kHeight = 420.0;
constexpr double kLeft = 70.0, kRight = 620.0, kTop = 44.0, kBottom = 370.0;

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool empty() const { return !(lo <= hi); }
  /// Widens degenerate or empty ranges so the affine map is invertible.
  void regularize() {
    if (empty()) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi == lo) {
      double pad = std::max(1.0, std::fabs(lo)) * 0.05;
      lo -= pad;
      hi += pad;
    } else {
      double pad = (hi - lo) * 0.05;
      lo -= pad;
      hi += pad;
    }
  }
  double map(double v, double out_lo, double out_hi) const {
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

}  // namespace

std::string SvgPlot::render() const {
  // Ranges in plotting space: y runs through log10 when log_y is set, and
  // nonpositive values are simply not representable there (skipped).
  auto y_space = [this](double v) { return log_y ? std::log10(v) : v; };
  auto y_ok = [this](double v) { return std::isfinite(v) && (!log_y || v > 0.0); };

  Range xr, yr;
  for (const SvgSeries& s : series) {
    std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.x[i]) || !y_ok(s.y[i])) continue;
      xr.add(s.x[i]);
      yr.add(y_space(s.y[i]));
    }
  }
  for (double g : guides) {
    if (y_ok(g)) yr.add(y_space(g));
  }
  xr.regularize();
  yr.regularize();

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"#ffffff\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\" fill=\"#1a202c\">" << escape_xml(title)
      << "</text>\n";
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
      << num(kRight - kLeft) << "\" height=\"" << num(kBottom - kTop)
      << "\" fill=\"none\" stroke=\"#4a5568\" stroke-width=\"1\"/>\n";

  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    double fx = xr.lo + (xr.hi - xr.lo) * i / ticks;
    double px = xr.map(fx, kLeft, kRight);
    out << "<line x1=\"" << num(px) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(px)
        << "\" y2=\"" << num(kBottom + 5) << "\" stroke=\"#4a5568\"/>\n";
    out << "<text x=\"" << num(px) << "\" y=\"" << num(kBottom + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\" "
        << "fill=\"#4a5568\">" << tick_label(fx) << "</text>\n";

    double fy = yr.lo + (yr.hi - yr.lo) * i / ticks;
    double py = yr.map(fy, kBottom, kTop);
    out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(py) << "\" stroke=\"#4a5568\"/>\n";
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py + 3)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\" "
        << "fill=\"#4a5568\">" << tick_label(log_y ? std::pow(10.0, fy) : fy) << "</text>\n";
  }

  out << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\"" << num(kHeight - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "fill=\"#1a202c\">" << escape_xml(x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << num((kTop + kBottom) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "fill=\"#1a202c\" transform=\"rotate(-90 18 " << num((kTop + kBottom) / 2) << ")\">"
      << escape_xml(y_label) << "</text>\n";

  for (double g : guides) {
    if (!y_ok(g)) continue;
    double py = yr.map(y_space(g), kBottom, kTop);
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py) << "\" x2=\"" << num(kRight)
        << "\" y2=\"" << num(py)
        << "\" stroke=\"#a0aec0\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";
    out << "<text x=\"" << num(kRight - 4) << "\" y=\"" << num(py - 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\" "
        << "fill=\"#718096\">" << tick_label(g) << "</text>\n";
  }

  for (const SvgSeries& s : series) {
    std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.x[i]) || !y_ok(s.y[i])) continue;
      out << "<circle cx=\"" << num(xr.map(s.x[i], kLeft, kRight)) << "\" cy=\""
          << num(yr.map(y_space(s.y[i]), kBottom, kTop)) << "\" r=\"3\" fill=\"" << s.color
          << "\" fill-opacity=\"0.85\"/>\n";
    }
  }

  double ly = kTop + 14.0;
  for (const SvgSeries& s : series) {
    out << "<rect x=\"" << num(kRight - 150) << "\" y=\"" << num(ly - 9)
        << "\" width=\"10\" height=\"10\" fill=\"" << s.color << "\"/>\n";
    out << "<text x=\"" << num(kRight - 136) << "\" y=\"" << num(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#1a202c\">"
        << escape_xml(s.name) << "</text>\n";
    ly += 16.0;
  }

  out << "</svg>\n";
  return out.str();
}

void SvgPlot::write(const std::string& path) const { write_text(path, render()); }

}  // namespace herzlab
