#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qfdiv {

/// Minimal auto-scaled SVG chart: line series, scatter series and an
/// optional y = x reference line.
class SvgPlot {
 public:
  struct Series {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;
    bool lines;
  };

  SvgPlot(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  void add_line(std::string label, std::string color, std::vector<std::pair<double, double>> points) {
    series_.push_back({std::move(label), std::move(color), std::move(points), true});
  }
  void add_scatter(std::string label, std::string color, std::vector<std::pair<double, double>> points) {
    series_.push_back({std::move(label), std::move(color), std::move(points), false});
  }
  void set_diagonal(bool on) { diagonal_ = on; }

  std::string render() const {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series_)
      for (const auto& [x, y] : s.points) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (diagonal_) {
      x0 = y0 = std::min(x0, y0);
      x1 = y1 = std::max(x1, y1);
    }
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;

    auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); };
    auto py = [&](double y) { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title_ << "</text>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight << "\" y2=\""
       << kHeight - kBottom << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kHeight - kBottom
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\" font-size=\"12\">"
       << x_label_ << "</text>\n";
    os << "<text x=\"15\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 15 " << kHeight / 2
       << ")\" text-anchor=\"middle\" font-size=\"12\">" << y_label_ << "</text>\n";
    for (int k = 0; k <= 4; ++k) {
      const double xv = x0 + (x1 - x0) * k / 4.0;
      const double yv = y0 + (y1 - y0) * k / 4.0;
      os << "<text x=\"" << num(px(xv)) << "\" y=\"" << kHeight - kBottom + 15
         << "\" text-anchor=\"middle\" font-size=\"10\">" << num(xv) << "</text>\n";
      os << "<text x=\"" << kLeft - 5 << "\" y=\"" << num(py(yv)) << "\" text-anchor=\"end\" font-size=\"10\">"
         << num(yv) << "</text>\n";
    }
    if (diagonal_) {
      os << "<line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(x0)) << "\" x2=\"" << num(px(x1)) << "\" y2=\""
         << num(py(x1)) << "\" stroke=\"red\"/>\n";
    }
    int legend_y = kTop + 10;
    for (const auto& s : series_) {
      if (s.lines) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" points=\"";
        for (const auto& [x, y] : s.points) os << num(px(x)) << ',' << num(py(y)) << ' ';
        os << "\"/>\n";
      } else {
        for (const auto& [x, y] : s.points)
          os << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"1.5\" fill=\"" << s.color
             << "\"/>\n";
      }
      os << "<text x=\"" << kWidth - kRight - 5 << "\" y=\"" << legend_y << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
         << s.color << "\">" << s.label << "</text>\n";
      legend_y += 14;
    }
    os << "</svg>\n";
    return os.str();
  }

 private:
  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
  }

  static constexpr int kWidth = 640;
  static constexpr int kHeight = 480;
  static constexpr int kLeft = 60;
  static constexpr int kRight = 20;
  static constexpr int kTop = 30;
  static constexpr int kBottom = 40;

  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
  bool diagonal_ = false;
};

}  // namespace qfdiv
